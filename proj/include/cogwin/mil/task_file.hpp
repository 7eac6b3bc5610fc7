#pragma once

#include <cogwin/mil/learn.hpp>

#include <memory>
#include <string_view>

namespace cogwin::mil {

// Task file, one directive per line ('%' starts a comment):
//   max_clauses: 5
//   node_budget: 10000000
//   primitives: move, won, number_of_pairs
//   constants: x, o, 0, 1, 2
//   metarule postcon_dyadic [P,Q,R]: P(A,B) :- Q(A,B), R(B).
//   background: win_1(A,B) :- move(A,B), won(B).
//   pos: win_1([x,x,e,o,o,e,e,e,e],[x,x,x,o,o,e,e,e,e]).
//   neg: win_1([x,x,e,o,o,e,e,e,e],[x,x,e,o,o,x,e,e,e]).
// `available` supplies the primitives that the `primitives` line selects from.
LearningTask parse_task(std::string_view text, const logic::PrimitiveTable& available);

}  // namespace cogwin::mil
