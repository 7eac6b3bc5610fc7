#pragma once

#include <cogwin/logic/clause.hpp>

#include <functional>
#include <set>
#include <span>
#include <stdexcept>
#include <vector>

namespace cogwin::logic {

/// Raised when a predicate that should be unfolded only occurs under negation.
class UnfoldError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct UnfoldOptions {
    /// Decides whether a clause produced by inlining may replace the original.
    /// Unset means every inlined clause is accepted.
    std::function<bool(const Clause&)> admissible;
    /// Defined predicates that must never be inlined (besides the roots).
    std::set<PredKey> keep;
    /// Ground values for the first argument of each root. Literal removal keeps
    /// every root's answers over this domain unchanged. Empty disables removal.
    std::vector<Term> domain;
    std::size_t max_depth = 256;
};

/// Inlines single-use, single-clause helper predicates, drops repeated body
/// literals, then greedily deletes body literals whose removal does not change
/// any root's answers over the domain. Helpers no longer referenced are dropped.
Program unfold_reduce(const Program& p, std::span<const PredKey> roots, const UnfoldOptions& opts = {});

/// Number of clauses defining the root and every non-primitive predicate it depends on.
std::size_t dependency_closure_size(const Program& p, PredKey root);

}  // namespace cogwin::logic
