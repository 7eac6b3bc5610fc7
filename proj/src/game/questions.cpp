#include <cogwin/game/questions.hpp>

#include <cogwin/game/minimax.hpp>
#include <cogwin/game/symmetry.hpp>

#include <algorithm>
#include <array>
#include <istream>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cogwin::game {

bool is_canonical_position(const GameState& s) {
    if (!s.valid() || s.to_move() != Player::X || terminal(s)) return false;
    if (number_of_pairs(s, Player::O) != 0) return false;
    auto k = classify_win_k(s);
    return k && *k >= 1 && *k <= 3;
}

const std::vector<GameState>& canonical_pool(int k) {
    static const std::array<std::vector<GameState>, 3> pools = [] {
        std::array<std::vector<GameState>, 3> out;
        for (const auto& s : reachable_states())
            if (is_canonical_position(s)) out[*classify_win_k(s) - 1].push_back(s);
        return out;
    }();
    if (k < 1 || k > 3) throw std::invalid_argument("k must be 1..3");
    return pools[k - 1];
}

std::vector<GameState> question_bank(int k, std::size_t count, std::uint64_t seed) {
    std::vector<GameState> reps;
    std::set<GameState> seen;
    for (const auto& s : canonical_pool(k))
        if (seen.insert(canonical(s)).second) reps.push_back(s);
    if (reps.size() < count)
        throw std::invalid_argument("only " + std::to_string(reps.size()) + " classes for win_" + std::to_string(k));
    std::mt19937_64 rng(seed);
    std::shuffle(reps.begin(), reps.end(), rng);
    reps.resize(count);
    return reps;
}

void write_bank(std::ostream& out, const std::vector<BankEntry>& bank) {
    for (const auto& e : bank) out << e.k << ' ' << e.board.str() << ' ' << e.symmetry_seed << '\n';
}

std::vector<BankEntry> read_bank(std::istream& in) {
    std::vector<BankEntry> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        BankEntry e{};
        std::string board;
        if (!(ls >> e.k >> board >> e.symmetry_seed)) throw std::invalid_argument("bad bank line: " + line);
        e.board = GameState::parse(board);
        out.push_back(e);
    }
    return out;
}

}  // namespace cogwin::game
