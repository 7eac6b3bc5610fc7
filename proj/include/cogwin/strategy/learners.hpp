#pragma once

#include <cogwin/game/minimax.hpp>
#include <cogwin/game/state.hpp>
#include <cogwin/logic/clause.hpp>
#include <cogwin/mil/learn.hpp>

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cogwin::strategy {

enum class Actor : std::uint8_t { Learner, Opponent };

struct Step {
    game::GameState before;
    game::GameState after;
    Actor actor;
};

/// One game played by the learner (x) against the minimax opponent (o).
struct EpisodeLog {
    game::GameState start;
    std::vector<Step> steps;
    game::Outcome outcome;  // for the learner
};

struct StrategyTheory {
    /// Clauses for win_1..win_k and their invented helpers, with the primitive table.
    logic::Program program;
    std::vector<std::string> primitive_set;
    std::string learner;
    std::size_t episodes = 0;
    int max_k = 0;

    /// Highest k with a learned win_k.
    int levels() const;
};

struct TracePoint {
    std::size_t episode;
    std::size_t wins;
    std::size_t draws;
    std::size_t losses;
    std::size_t theory_size;
    bool converged;
};

struct LearnerOptions {
    int max_k = 3;
    /// Episode cap.
    std::size_t budget = 2000;
    std::uint64_t seed = 1;
    /// Node budget for each call into the MIL engine.
    std::uint64_t node_budget = 50'000'000;
    /// Candidate hypotheses collected for efficiency selection.
    std::size_t candidates = 32;
};

struct LearnRun {
    StrategyTheory theory;
    bool converged = false;
    /// Episodes played when convergence was first detected (or the budget).
    std::size_t episodes_to_convergence = 0;
    std::vector<TracePoint> trace;
    std::size_t positives = 0;
    std::size_t negatives = 0;
    /// Every negative example consumed, for auditing.
    std::vector<logic::Atom> negative_examples;
    std::vector<logic::Atom> positive_examples;
};

/// Positive-only dependent learning over move/2, won/1 and drawn/1 with
/// negated-lookahead metarules; hypotheses must also win by play-out.
LearnRun migo_learn(const LearnerOptions& opts);

/// Positives and negatives over move/2, won/1 and number_of_pairs/3 with the
/// four postcon/conjunction metarules and efficiency-based selection.
LearnRun miplain_learn(const LearnerOptions& opts);

/// Every solution of win_k on every reachable win_k position is an optimal move,
/// every canonical win_k position has a solution, and no lower win_j fires there.
bool theory_converged(const logic::Program& theory, int max_k);

/// Fraction of canonical win_k positions from which following the theory wins
/// in exactly k learner moves against the minimax opponent, over every
/// recommended move.
double playout_win_rate(const logic::Program& theory, int k);

/// Learner's move under the theory: a solution of the lowest win_j that has one,
/// or nothing when no rule fires.
std::vector<game::GameState> recommended_moves(const logic::Program& theory, const game::GameState& s, int max_k);

/// Metarule sets used by the two learners.
std::vector<mil::Metarule> migo_metarules();
std::vector<mil::Metarule> miplain_metarules();

/// Acceptance test for win_k hypotheses: from each board, every win_k solution
/// leads to a win within k learner moves against the minimax opponent, with
/// later moves taken from the full program.
std::function<bool(const logic::Program&)> forced_win_acceptance(int k, std::vector<game::GameState> boards);

void write_trace_csv(std::ostream& out, const std::vector<TracePoint>& trace);

/// Learns a program from a single observed move, labelled win_1(s, chosen).
/// Throws std::invalid_argument when `chosen` is not a successor of `s` and
/// std::runtime_error when nothing within the clause cap covers it.
mil::Hypothesis clone_one_shot(const game::GameState& s, const game::GameState& chosen);

}  // namespace cogwin::strategy
