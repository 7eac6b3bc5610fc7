#pragma once

#include <cogwin/logic/clause.hpp>
#include <cogwin/mil/metarule.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace cogwin::mil {

struct LearningTask {
    std::vector<logic::Atom> positives;
    std::vector<logic::Atom> negatives;
    /// Background clauses plus the primitive table.
    logic::Program background;
    std::vector<Metarule> metarules;
    std::size_t max_clauses = 5;
    /// Constants allowed in curried argument slots.
    std::vector<logic::Term> constant_pool;
    /// Meta-level and object-level resolution steps allowed per call.
    std::uint64_t node_budget = 10'000'000;
    /// Extra test applied to complete hypotheses (receives background plus hypothesis).
    std::function<bool(const logic::Program&)> accept;
    /// Allow body literals to call a target predicate (recursion).
    bool allow_recursion = false;
    /// Permit a clause to repeat a body literal (e.g. both curried literals equal).
    bool allow_duplicate_literals = false;
    std::size_t max_meta_depth = 64;
};

struct Hypothesis {
    /// Learned clauses only; shares the background's primitive table.
    logic::Program program;
    /// Id of the metarule behind each clause, parallel to program.clauses.
    std::vector<std::string> metarule_trace;
    std::set<logic::PredKey> invented;

    /// Background clauses followed by the learned ones.
    logic::Program with(const logic::Program& background) const;
    std::string str() const { return to_string(program); }
};

enum class LearnStatus { Found, NoHypothesis, BudgetExceeded };
std::string to_string(LearnStatus s);

struct LearnResult {
    LearnStatus status = LearnStatus::NoHypothesis;
    std::optional<Hypothesis> hypothesis;
    /// Clause count searched last (the returned hypothesis size when found).
    std::size_t depth = 0;
    std::uint64_t nodes = 0;
    /// Complete clauses assembled from metarules, per clause-count level.
    std::vector<std::uint64_t> clauses_enumerated;
};

/// Iterative deepening on clause count; the first consistent hypothesis found.
LearnResult learn(const LearningTask& task);

struct CandidateResult {
    LearnStatus status = LearnStatus::NoHypothesis;
    /// Distinct consistent hypotheses of the smallest size, in discovery order.
    std::vector<Hypothesis> candidates;
    std::size_t depth = 0;
    std::uint64_t nodes = 0;
};

CandidateResult learn_candidates(const LearningTask& task, std::size_t cap = 64);

/// Counted resolution steps of a program over probe queries (every answer enumerated).
/// Predicates in `opaque` count one step per call and per answer.
std::uint64_t probe_cost(const logic::Program& program, std::span<const logic::Atom> probes,
                         const std::set<logic::PredKey>& opaque);

/// The candidate with the fewest counted resolution steps over the probes, then
/// fewer clauses, then earliest. Background predicates are opaque.
const Hypothesis& select_efficient(std::span<const Hypothesis> candidates, std::span<const logic::Atom> probes,
                                   const logic::Program& background);

}  // namespace cogwin::mil
