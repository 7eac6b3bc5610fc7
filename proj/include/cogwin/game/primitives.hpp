#pragma once

#include <cogwin/game/state.hpp>
#include <cogwin/logic/primitives.hpp>

#include <memory>

namespace cogwin::game {

/// move/2, won/1, drawn/1 and number_of_pairs/3 over boards written as lists
/// of nine e/x/o constants. Boards in the first argument must be bound.
std::shared_ptr<const logic::PrimitiveTable> game_primitives();

/// The game primitives restricted to the given names (e.g. {"move", "won"}).
std::shared_ptr<const logic::PrimitiveTable> game_primitives(std::initializer_list<std::string_view> names);

}  // namespace cogwin::game
