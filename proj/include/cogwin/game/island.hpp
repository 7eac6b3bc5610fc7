#pragma once

#include <cogwin/game/state.hpp>

#include <array>
#include <cstdint>
#include <map>
#include <string>

namespace cogwin::game {

/// A win condition of the Island Game: three territories forming one island or
/// carrying the same resource.
struct Feature {
    std::array<int, 3> territories;
    std::string name;
    bool island;
};

/// Re-skin of the board: cell i becomes territory `territory[i]` (both 0-based),
/// and each win line becomes an island or a resource.
struct IslandMap {
    std::array<int, 9> territory{};
    /// Indexed like win_lines(), expressed over territories.
    std::array<Feature, 8> features{};
    /// Board words to island words; must be one-to-one.
    std::map<std::string, std::string> vocabulary;

    /// Rows become islands, columns and diagonals become resources; the
    /// territory order is shuffled by `seed` (seed 0 keeps the identity order).
    static IslandMap make(std::uint64_t seed);

    bool valid() const;
    /// Maps territories back to cells and island words back to board words.
    IslandMap inverse() const;
};

/// The position in territory order: result.cells[territory[i]] = s.cells[i].
GameState islandize(const GameState& s, const IslandMap& m);

}  // namespace cogwin::game
