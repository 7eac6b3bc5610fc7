#pragma once

#include <cogwin/logic/term.hpp>

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cogwin::game {

enum class Cell : std::uint8_t { Empty, X, O };
enum class Player : std::uint8_t { X, O };

Player opponent(Player p);
Cell mark_of(Player p);
char to_char(Cell c);
char to_char(Player p);
std::optional<Player> player_from(std::string_view text);

/// The eight winning lines as cell index triples (0-based, row-major).
const std::array<std::array<int, 3>, 8>& win_lines();

/// A 3x3 board. Cells are stored 0-based row-major; user-facing numbering is 1..9.
struct GameState {
    std::array<Cell, 9> cells{};

    static GameState empty() { return {}; }
    /// Accepts "[x,e,o,...]" list syntax or nine compact characters such as "xxeooeeee".
    static GameState parse(std::string_view text);
    static std::optional<GameState> from_term(const logic::Term& t);

    int count(Cell c) const;
    /// x moves first, so x is to move whenever the counts are equal.
    Player to_move() const;
    bool full() const;
    /// Counts differ by at most one in x's favour and at most one player holds a line.
    bool valid() const;

    GameState place(int cell) const;

    logic::Term to_term() const;
    /// List syntax, e.g. [x,x,e,o,o,e,e,e,e].
    std::string str() const;
    /// Nine characters, e.g. xxeooeeee.
    std::string compact() const;
    std::uint32_t code() const;

    friend bool operator==(const GameState&, const GameState&) = default;
    friend auto operator<=>(const GameState& a, const GameState& b) { return a.code() <=> b.code(); }
};

struct GameStateHash {
    std::size_t operator()(const GameState& s) const { return s.code(); }
};

bool won(const GameState& s, Player p);
/// Either player holds a complete line.
bool won_any(const GameState& s);
bool drawn(const GameState& s);
bool terminal(const GameState& s);

/// Cells where the player to move may place a mark. Empty when terminal.
std::vector<int> legal_moves(const GameState& s);
std::vector<GameState> successors(const GameState& s);
bool is_move(const GameState& s, const GameState& t);
/// The cell that differs between s and t when t is a successor of s.
std::optional<int> moved_cell(const GameState& s, const GameState& t);

/// Lines holding exactly two of the player's marks and one empty cell.
int number_of_pairs(const GameState& s, Player p);

/// Every state reachable from the empty board by legal play, terminals included.
const std::vector<GameState>& reachable_states();

}  // namespace cogwin::game
