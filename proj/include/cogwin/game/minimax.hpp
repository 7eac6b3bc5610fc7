#pragma once

#include <cogwin/game/state.hpp>

#include <optional>
#include <vector>

namespace cogwin::game {

enum class Outcome : std::uint8_t { Win, Draw, Loss };

/// Game-theoretic value from the point of view of `side`. For a board that is
/// already won the label is a win at depth 0 for the winner; otherwise `side`
/// is the player to move and depth counts plies to the outcome.
struct MinimaxLabel {
    Outcome value;
    std::optional<int> depth;
    Player side;

    friend bool operator==(const MinimaxLabel&, const MinimaxLabel&) = default;
};

MinimaxLabel minimax(const GameState& s);

/// Number of x moves to a forced win when x is to move; empty otherwise.
/// Throws std::invalid_argument when o is to move.
std::optional<int> classify_win_k(const GameState& s);

/// Moves (cells) that keep the game value for the mover and reach it fastest
/// when winning, slowest when losing. Ascending cell order.
std::vector<int> optimal_moves(const GameState& s);
/// The optimal move with the lowest cell index; the opponent policy used for learning.
std::optional<GameState> optimal_reply(const GameState& s);
bool is_optimal_move(const GameState& s, const GameState& t);

}  // namespace cogwin::game
