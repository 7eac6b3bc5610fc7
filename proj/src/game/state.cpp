#include <cogwin/game/state.hpp>

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <unordered_set>

namespace cogwin::game {

Player opponent(Player p) { return p == Player::X ? Player::O : Player::X; }
Cell mark_of(Player p) { return p == Player::X ? Cell::X : Cell::O; }

char to_char(Cell c) {
    switch (c) {
        case Cell::X: return 'x';
        case Cell::O: return 'o';
        default: return 'e';
    }
}

char to_char(Player p) { return p == Player::X ? 'x' : 'o'; }

std::optional<Player> player_from(std::string_view text) {
    if (text == "x") return Player::X;
    if (text == "o") return Player::O;
    return std::nullopt;
}

const std::array<std::array<int, 3>, 8>& win_lines() {
    static const std::array<std::array<int, 3>, 8> lines{{
        {0, 1, 2}, {3, 4, 5}, {6, 7, 8},  // rows
        {0, 3, 6}, {1, 4, 7}, {2, 5, 8},  // columns
        {0, 4, 8}, {2, 4, 6},             // diagonals
    }};
    return lines;
}

namespace {

std::optional<Cell> cell_from(char ch) {
    switch (std::tolower(static_cast<unsigned char>(ch))) {
        case 'x': return Cell::X;
        case 'o': return Cell::O;
        case 'e': return Cell::Empty;
        default: return std::nullopt;
    }
}

const std::array<logic::Term, 3>& cell_terms() {
    static const std::array<logic::Term, 3> terms{logic::Term::constant("e"), logic::Term::constant("x"),
                                                  logic::Term::constant("o")};
    return terms;
}

}  // namespace

GameState GameState::parse(std::string_view text) {
    GameState s;
    int n = 0;
    for (char ch : text) {
        if (ch == '[' || ch == ']' || ch == ',' || std::isspace(static_cast<unsigned char>(ch))) continue;
        auto c = cell_from(ch);
        if (!c || n == 9) throw std::invalid_argument("bad board: " + std::string(text));
        s.cells[n++] = *c;
    }
    if (n != 9) throw std::invalid_argument("bad board: " + std::string(text));
    return s;
}

std::optional<GameState> GameState::from_term(const logic::Term& t) {
    if (!t.is_list() || t.items().size() != 9) return std::nullopt;
    GameState s;
    for (int i = 0; i < 9; ++i) {
        const auto& item = t.items()[i];
        if (!item.is_constant() || item.text().size() != 1) return std::nullopt;
        auto c = cell_from(item.text()[0]);
        if (!c) return std::nullopt;
        s.cells[i] = *c;
    }
    return s;
}

int GameState::count(Cell c) const { return static_cast<int>(std::count(cells.begin(), cells.end(), c)); }

Player GameState::to_move() const { return count(Cell::X) == count(Cell::O) ? Player::X : Player::O; }

bool GameState::full() const { return count(Cell::Empty) == 0; }

bool GameState::valid() const {
    int d = count(Cell::X) - count(Cell::O);
    if (d != 0 && d != 1) return false;
    bool wx = won(*this, Player::X), wo = won(*this, Player::O);
    if (wx && wo) return false;
    // The winner must have made the last move.
    if (wx && d != 1) return false;
    if (wo && d != 0) return false;
    return true;
}

GameState GameState::place(int cell) const {
    if (cell < 0 || cell > 8 || cells[cell] != Cell::Empty) throw std::invalid_argument("cell not empty");
    GameState t = *this;
    t.cells[cell] = mark_of(to_move());
    return t;
}

logic::Term GameState::to_term() const {
    std::vector<logic::Term> items;
    items.reserve(9);
    for (Cell c : cells) items.push_back(cell_terms()[static_cast<int>(c)]);
    return logic::Term::list(std::move(items));
}

std::string GameState::str() const {
    std::string out = "[";
    for (int i = 0; i < 9; ++i) {
        if (i) out += ',';
        out += to_char(cells[i]);
    }
    return out + "]";
}

std::string GameState::compact() const {
    std::string out;
    for (Cell c : cells) out += to_char(c);
    return out;
}

std::uint32_t GameState::code() const {
    std::uint32_t v = 0;
    for (Cell c : cells) v = v * 3 + static_cast<std::uint32_t>(c);
    return v;
}

bool won(const GameState& s, Player p) {
    Cell m = mark_of(p);
    for (const auto& l : win_lines())
        if (s.cells[l[0]] == m && s.cells[l[1]] == m && s.cells[l[2]] == m) return true;
    return false;
}

bool won_any(const GameState& s) { return won(s, Player::X) || won(s, Player::O); }

bool drawn(const GameState& s) { return s.full() && !won_any(s); }

bool terminal(const GameState& s) { return s.full() || won_any(s); }

std::vector<int> legal_moves(const GameState& s) {
    std::vector<int> out;
    if (terminal(s)) return out;
    for (int i = 0; i < 9; ++i)
        if (s.cells[i] == Cell::Empty) out.push_back(i);
    return out;
}

std::vector<GameState> successors(const GameState& s) {
    std::vector<GameState> out;
    for (int i : legal_moves(s)) out.push_back(s.place(i));
    return out;
}

std::optional<int> moved_cell(const GameState& s, const GameState& t) {
    if (terminal(s)) return std::nullopt;
    std::optional<int> diff;
    Cell m = mark_of(s.to_move());
    for (int i = 0; i < 9; ++i) {
        if (s.cells[i] == t.cells[i]) continue;
        if (diff || s.cells[i] != Cell::Empty || t.cells[i] != m) return std::nullopt;
        diff = i;
    }
    return diff;
}

bool is_move(const GameState& s, const GameState& t) { return moved_cell(s, t).has_value(); }

int number_of_pairs(const GameState& s, Player p) {
    Cell m = mark_of(p);
    int n = 0;
    for (const auto& l : win_lines()) {
        int mine = 0, empty = 0;
        for (int i : l) {
            if (s.cells[i] == m) ++mine;
            else if (s.cells[i] == Cell::Empty) ++empty;
        }
        if (mine == 2 && empty == 1) ++n;
    }
    return n;
}

const std::vector<GameState>& reachable_states() {
    static const std::vector<GameState> states = [] {
        std::vector<GameState> out;
        std::unordered_set<GameState, GameStateHash> seen;
        std::vector<GameState> frontier{GameState::empty()};
        seen.insert(GameState::empty());
        while (!frontier.empty()) {
            GameState s = frontier.back();
            frontier.pop_back();
            out.push_back(s);
            for (const auto& t : successors(s))
                if (seen.insert(t).second) frontier.push_back(t);
        }
        std::sort(out.begin(), out.end());
        return out;
    }();
    return states;
}

}  // namespace cogwin::game
