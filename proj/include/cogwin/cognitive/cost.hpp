#pragma once

#include <cogwin/logic/clause.hpp>
#include <cogwin/logic/term.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cogwin::cognitive {

/// Raised when cost evaluation exceeds its depth cap or meets an unbound primitive argument.
class CostError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Variables cost 1, constants their character count, lists the sum of their items.
std::int64_t term_cost(const logic::Term& t);
/// One for the predicate symbol plus the argument costs.
std::int64_t term_cost(const logic::Atom& a);

enum class EntryKind { Atom, Exit, Backtrack };

struct StackEntry {
    EntryKind kind;
    /// Atom text; "true" for an exit and "fail" for a backtrack point.
    std::string text;
    std::int64_t cost;
};

struct CostReport {
    logic::Atom query;
    std::vector<StackEntry> stack;
    std::int64_t total = 0;
    bool answered = false;
};

/// Minimum execution-stack cost of answering `q`. Each called atom and each
/// answer it returns are pushed, a goal that runs out of alternatives pushes a
/// backtrack point and the final answer pushes an exit. Clause and answer order
/// are free, so the minimum follows the cheapest successful derivation; negated
/// goals must be explored exhaustively. A query without answers costs its full
/// failed search.
CostReport cog(const logic::Program& p, const logic::Atom& q, std::size_t max_depth = 256);

}  // namespace cogwin::cognitive
