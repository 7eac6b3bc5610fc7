#pragma once

#include <cogwin/game/state.hpp>

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace cogwin::game {

/// Reachable, x to move, a forced x win in 1..3 moves, and o holds no pair
/// (so x is never forced to block first).
bool is_canonical_position(const GameState& s);

/// All canonical positions with classify_win_k == k, in board order.
const std::vector<GameState>& canonical_pool(int k);

/// `count` pairwise non-isomorphic canonical win_k positions chosen by `seed`.
/// Throws std::invalid_argument when fewer symmetry classes exist.
std::vector<GameState> question_bank(int k, std::size_t count, std::uint64_t seed);

struct BankEntry {
    int k;
    GameState board;
    std::uint64_t symmetry_seed;
};

/// One entry per line: `k board symmetry_seed`, boards in list syntax.
void write_bank(std::ostream& out, const std::vector<BankEntry>& bank);
std::vector<BankEntry> read_bank(std::istream& in);

}  // namespace cogwin::game
