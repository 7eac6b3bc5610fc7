#include <doctest.h>

#include "oracle.hpp"

#include <cogwin/game/minimax.hpp>
#include <cogwin/game/primitives.hpp>
#include <cogwin/game/questions.hpp>
#include <cogwin/logic/parser.hpp>
#include <cogwin/logic/solve.hpp>
#include <cogwin/logic/unfold.hpp>
#include <cogwin/strategy/learners.hpp>

#include <fstream>
#include <set>
#include <sstream>

using namespace cogwin;
using namespace cogwin::logic;
using game::GameState;
using game::Player;

namespace {

Program load(const std::string& name) {
    std::ifstream in(std::string(COGWIN_DATA_DIR) + "/theories/" + name);
    REQUIRE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    Program p;
    p.clauses = parse_clauses(ss.str());
    p.primitives = game::game_primitives();
    return p;
}

std::set<std::string> answer_set(const Program& p, int k, const GameState& s) {
    SolveLimits lim;
    lim.trace = false;
    std::set<std::string> out;
    for (const auto& a : answers(p, Atom("win_" + std::to_string(k), {s.to_term(), Term::variable("B")}), lim))
        out.insert(to_string(a));
    return out;
}

int fastest(const GameState& s) { return oracle::fastest(s.compact()); }

bool keeps_fastest(const GameState& s, const GameState& t) { return oracle::keeps_fastest(s.compact(), t.compact()); }

const strategy::LearnRun& miplain_run() {
    static const strategy::LearnRun run = [] {
        strategy::LearnerOptions o;
        o.max_k = 3;
        o.seed = 1;
        return strategy::miplain_learn(o);
    }();
    return run;
}

const strategy::LearnRun& migo_run() {
    static const strategy::LearnRun run = [] {
        strategy::LearnerOptions o;
        o.max_k = 3;
        o.seed = 1;
        return strategy::migo_learn(o);
    }();
    return run;
}

std::string str(const Clause& c) { return to_string(c); }

}  // namespace

TEST_CASE("miplain converges to the reference pairs theory") {
    const auto& run = miplain_run();
    REQUIRE(run.converged);
    const Program& learned = run.theory.program;
    const Program ref = load("miplain_reference.pl");
    for (const auto& s : game::reachable_states()) {
        if (s.to_move() != Player::X || game::terminal(s)) continue;
        for (int k = 1; k <= 3; ++k) CHECK(answer_set(learned, k, s) == answer_set(ref, k, s));
    }
    CHECK(dependency_closure_size(learned, {intern("win_1"), 2}) == 1);
    CHECK(dependency_closure_size(learned, {intern("win_2"), 2}) == 2);
    CHECK(dependency_closure_size(learned, {intern("win_3"), 2}) == 7);
}

TEST_CASE("converged theories win every canonical play-out in exactly k moves") {
    for (const auto* run : {&miplain_run(), &migo_run()}) {
        REQUIRE(run->converged);
        for (int k = 1; k <= 3; ++k) CHECK(strategy::playout_win_rate(run->theory.program, k) == 1.0);
    }
}

TEST_CASE("migo learns the negated lookahead shapes") {
    const auto& run = migo_run();
    REQUIRE(run.converged);
    const auto& cs = run.theory.program.clauses;
    REQUIRE(cs.size() == 5);
    CHECK(str(cs[0]) == "win_1(A,B):-move(A,B),won(B).");
    for (int k = 2; k <= 3; ++k) {
        const std::string w = "win_" + std::to_string(k);
        const std::string h = w + "_1";
        const std::size_t i = 2 * k - 3;
        CHECK(str(cs[i]) == w + "(A,B):-" + h + "(A,B),not(" + h + "(B,C)).");
        CHECK(str(cs[i + 1]) == h + "(A,B):-move(A,B),not(win_" + std::to_string(k - 1) + "(B,C)).");
    }
    CHECK(run.negatives == 0);
}

TEST_CASE("examples agree with the forced-win oracle") {
    const auto& plain = miplain_run();
    for (const auto* run : {&plain, &migo_run()}) {
        for (const auto& a : run->positive_examples) {
            auto s = *GameState::from_term(a.args[0]);
            auto t = *GameState::from_term(a.args[1]);
            const int k = std::stoi(std::string(a.name()).substr(4));
            CHECK(fastest(s) == k);
            CHECK(keeps_fastest(s, t));
        }
    }
    REQUIRE(!plain.negative_examples.empty());
    for (const auto& a : plain.negative_examples) {
        auto s = *GameState::from_term(a.args[0]);
        auto t = *GameState::from_term(a.args[1]);
        const int k = std::stoi(std::string(a.name()).substr(4));
        CHECK(fastest(s) == k);
        CHECK_FALSE(keeps_fastest(s, t));
    }
}

TEST_CASE("zero budget yields an empty unconverged theory") {
    strategy::LearnerOptions o;
    o.budget = 0;
    auto run = strategy::miplain_learn(o);
    CHECK_FALSE(run.converged);
    CHECK(run.theory.program.clauses.empty());
    CHECK(run.trace.empty());
    CHECK(run.episodes_to_convergence == 0);
}

TEST_CASE("runs are reproducible and traces are cumulative") {
    strategy::LearnerOptions o;
    o.max_k = 2;
    o.seed = 7;
    auto a = strategy::miplain_learn(o);
    auto b = strategy::miplain_learn(o);
    REQUIRE(a.trace.size() == b.trace.size());
    for (std::size_t i = 0; i < a.trace.size(); ++i) {
        CHECK(a.trace[i].wins == b.trace[i].wins);
        CHECK(a.trace[i].episode == i + 1);
        CHECK(a.trace[i].wins + a.trace[i].draws + a.trace[i].losses == i + 1);
    }
    CHECK(a.trace.back().converged == a.converged);
    std::ostringstream csv;
    strategy::write_trace_csv(csv, a.trace);
    CHECK(csv.str().rfind("episode,wins,draws,losses,theory_size,converged\n", 0) == 0);
}

TEST_CASE("convergence check rejects incomplete and unsound theories") {
    Program p;
    p.primitives = game::game_primitives();
    p.clauses = parse_clauses("win_1(A,B) :- move(A,B), won(B).");
    CHECK(strategy::theory_converged(p, 1));
    CHECK_FALSE(strategy::theory_converged(p, 2));
    p.clauses.push_back(parse_clause("win_2(A,B) :- move(A,B)."));
    CHECK_FALSE(strategy::theory_converged(p, 2));
}

TEST_CASE("one-shot cloning of a pair-making move") {
    auto s = GameState::parse("[x,e,e,e,o,e,e,e,e]");
    auto t = GameState::parse("[x,x,e,e,o,e,e,e,e]");
    auto h = strategy::clone_one_shot(s, t);
    REQUIRE(h.program.clauses.size() == 2);
    CHECK(str(h.program.clauses[0]) == "win_1(A,B):-move(A,B),win_1_1(B).");
    CHECK(str(h.program.clauses[1]) == "win_1_1(A):-number_of_pairs(A,x,1).");
}

TEST_CASE("one-shot cloning of a winning move") {
    auto s = GameState::parse("[x,x,e,o,o,e,e,e,e]");
    auto t = GameState::parse("[x,x,x,o,o,e,e,e,e]");
    auto h = strategy::clone_one_shot(s, t);
    REQUIRE(h.program.clauses.size() == 1);
    CHECK(str(h.program.clauses[0]) == "win_1(A,B):-move(A,B),won(B).");
}

TEST_CASE("cloning rejects an illegal move") {
    auto s = GameState::parse("[x,e,e,e,o,e,e,e,e]");
    auto t = GameState::parse("[x,x,x,e,o,e,e,e,e]");
    CHECK_THROWS_AS(strategy::clone_one_shot(s, t), std::invalid_argument);
}
