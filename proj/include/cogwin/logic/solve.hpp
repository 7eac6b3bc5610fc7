#pragma once

#include <cogwin/logic/engine.hpp>
#include <cogwin/logic/unify.hpp>

#include <limits>

namespace cogwin::logic {

struct SolveLimits {
    std::size_t max_depth = 512;
    std::size_t max_solutions = std::numeric_limits<std::size_t>::max();
    std::uint64_t max_steps = 0;
    bool trace = true;
};

enum class SolveStatus { Complete, SolutionCapReached, DepthCapExceeded };

struct Solution {
    Substitution bindings;
    /// Every call, exit and backtrack from the start of the query up to this answer.
    std::vector<TraceEvent> trace;
};

struct SolveResult {
    std::vector<Solution> solutions;
    SolveStatus status = SolveStatus::Complete;
    std::uint64_t steps = 0;

    bool succeeded() const { return !solutions.empty(); }
};

/// Enumerates the SLD answers of `query` in clause order.
SolveResult solve(const Program& p, const Atom& query, const SolveLimits& limits = {});

/// The distinct resolved instances of `query` that are provable, in answer order.
std::vector<Atom> answers(const Program& p, const Atom& query, const SolveLimits& limits = {});

}  // namespace cogwin::logic
