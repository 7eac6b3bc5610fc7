#include <cogwin/game/minimax.hpp>

#include <cogwin/game/symmetry.hpp>

#include <stdexcept>
#include <unordered_map>

namespace cogwin::game {

namespace {

// Value for the player to move. A board won by the previous mover is a loss at depth 0.
struct Value {
    Outcome outcome;
    int depth;

    friend bool operator==(const Value&, const Value&) = default;
};

using Memo = std::unordered_map<std::uint32_t, Value>;

Value flip(Value v) {
    switch (v.outcome) {
        case Outcome::Win: return {Outcome::Loss, v.depth + 1};
        case Outcome::Loss: return {Outcome::Win, v.depth + 1};
        default: return {Outcome::Draw, 0};
    }
}

// True when a is strictly better than b for the mover.
bool better(Value a, Value b) {
    auto rank = [](Outcome o) { return o == Outcome::Win ? 2 : o == Outcome::Draw ? 1 : 0; };
    if (rank(a.outcome) != rank(b.outcome)) return rank(a.outcome) > rank(b.outcome);
    if (a.outcome == Outcome::Win) return a.depth < b.depth;
    if (a.outcome == Outcome::Loss) return a.depth > b.depth;
    return false;
}

Value evaluate(const GameState& s, Memo& memo) {
    if (won_any(s)) return {Outcome::Loss, 0};
    if (s.full()) return {Outcome::Draw, 0};
    const std::uint32_t key = canonical(s).code();
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::optional<Value> best;
    for (const auto& t : successors(s)) {
        Value v = flip(evaluate(t, memo));
        if (!best || better(v, *best)) best = v;
    }
    memo.emplace(key, *best);
    return *best;
}

const Memo& table() {
    static const Memo memo = [] {
        Memo m;
        evaluate(GameState::empty(), m);
        return m;
    }();
    return memo;
}

Value value_of(const GameState& s) {
    if (won_any(s)) return {Outcome::Loss, 0};
    if (s.full()) return {Outcome::Draw, 0};
    const auto& t = table();
    if (auto it = t.find(canonical(s).code()); it != t.end()) return it->second;
    Memo local;
    return evaluate(s, local);
}

}  // namespace

MinimaxLabel minimax(const GameState& s) {
    if (won(s, Player::X)) return {Outcome::Win, 0, Player::X};
    if (won(s, Player::O)) return {Outcome::Win, 0, Player::O};
    Value v = value_of(s);
    if (v.outcome == Outcome::Draw) return {Outcome::Draw, std::nullopt, s.to_move()};
    return {v.outcome, v.depth, s.to_move()};
}

std::optional<int> classify_win_k(const GameState& s) {
    if (s.to_move() != Player::X) throw std::invalid_argument("classify_win_k needs x to move: " + s.str());
    if (terminal(s)) return std::nullopt;
    Value v = value_of(s);
    if (v.outcome != Outcome::Win) return std::nullopt;
    return (v.depth + 1) / 2;
}

std::vector<int> optimal_moves(const GameState& s) {
    std::vector<int> out;
    if (terminal(s)) return out;
    Value best = value_of(s);
    for (int cell : legal_moves(s))
        if (flip(value_of(s.place(cell))) == best) out.push_back(cell);
    return out;
}

std::optional<GameState> optimal_reply(const GameState& s) {
    auto moves = optimal_moves(s);
    if (moves.empty()) return std::nullopt;
    return s.place(moves.front());
}

bool is_optimal_move(const GameState& s, const GameState& t) {
    auto cell = moved_cell(s, t);
    if (!cell) return false;
    return flip(value_of(t)) == value_of(s);
}

}  // namespace cogwin::game
