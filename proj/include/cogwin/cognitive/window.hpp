#pragma once

#include <cogwin/cognitive/cost.hpp>
#include <cogwin/logic/clause.hpp>
#include <cogwin/mil/learn.hpp>
#include <cogwin/mil/metarule.hpp>

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace cogwin::logic {
class PrimitiveTable;
}

namespace cogwin::cognitive {

using BigCount = unsigned __int128;

std::string to_string(BigCount n);

/// m^n * p^((1+j)n): programs of n clauses over m metarules, p predicates and
/// at most j body literals. Throws std::overflow_error past 128 bits and
/// std::invalid_argument when m, p or n is below 1 or j is negative.
BigCount bound(std::int64_t m, std::int64_t p, std::int64_t j, std::int64_t n);

struct CapacityProfile {
    std::int64_t n = 1;
    std::string label;
};

/// Learner configuration the hypothesis space is measured against.
struct SpaceParams {
    std::int64_t m = 4;
    std::int64_t p = 2;
    std::int64_t j = 2;
};

enum class Verdict { HarmfulRisk, NoBenefit, BenefitPossible };
std::string to_string(Verdict v);

struct QueryCost {
    logic::Atom query;
    std::int64_t cog = 0;
    std::int64_t cogp = 0;
};

struct RootVerdict {
    logic::PredKey root;
    std::size_t closure_size = 0;
    BigCount space = 0;
    BigCount capacity = 0;
    std::vector<QueryCost> costs;
    Verdict verdict = Verdict::NoBenefit;
};

struct WindowVerdict {
    CapacityProfile profile;
    std::vector<RootVerdict> roots;
};

/// Queries for one root paired with their CogP values.
struct RootQueries {
    logic::PredKey root;
    std::vector<std::pair<logic::Atom, std::int64_t>> queries;
};

/// HARMFUL_RISK when the root's dependency closure outgrows the profile,
/// otherwise NO_BENEFIT unless the theory is strictly cheaper than CogP on
/// every query.
WindowVerdict window_verdict(const logic::Program& theory, const CapacityProfile& profile,
                             const std::vector<RootQueries>& roots, const SpaceParams& params = {});

/// Examples for one level of a dependent learning task.
struct LevelExamples {
    std::string predicate;
    std::vector<logic::Atom> positives;
    std::vector<logic::Atom> negatives;
};

struct PrimitiveSolutionConfig {
    std::vector<mil::Metarule> metarules;
    std::size_t max_clauses = 3;
    std::uint64_t node_budget = 50'000'000;
    std::vector<logic::Term> constant_pool;
    /// Optional extra acceptance test for a level, given its index and examples.
    std::function<std::function<bool(const logic::Program&)>(std::size_t, const LevelExamples&)> acceptance;
};

struct PrimitiveSolution {
    logic::Program program;
    std::vector<std::string> primitives;
};

class NoPrimitiveSolution : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Tries subsets of `phi` (names in `table`) by increasing size and, within a
/// size, in order; returns the first subset for which every level is learnable
/// with the lower levels as background.
PrimitiveSolution min_primitive_solution(const std::vector<LevelExamples>& levels, const std::vector<std::string>& phi,
                                         std::shared_ptr<const logic::PrimitiveTable> table,
                                         const PrimitiveSolutionConfig& config);

/// Cog of the query under the minimum primitive solution.
std::int64_t cogp(const PrimitiveSolution& solution, const logic::Atom& q);

nlohmann::json to_json(const CostReport& r);
nlohmann::json to_json(const WindowVerdict& v);

}  // namespace cogwin::cognitive
