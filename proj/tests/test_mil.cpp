#include <doctest.h>

#include <cogwin/game/minimax.hpp>
#include <cogwin/game/primitives.hpp>
#include <cogwin/game/questions.hpp>
#include <cogwin/logic/parser.hpp>
#include <cogwin/logic/solve.hpp>
#include <cogwin/mil/learn.hpp>
#include <cogwin/mil/task_file.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

using namespace cogwin;
using namespace cogwin::game;
using namespace cogwin::logic;
using namespace cogwin::mil;

namespace {

std::string slurp(const std::string& rel) {
    std::ifstream in(std::string(COGWIN_DATA_DIR) + "/" + rel);
    REQUIRE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<Term> pool() {
    std::vector<Term> out;
    for (auto c : {"x", "o", "0", "1", "2"}) out.push_back(Term::constant(c));
    return out;
}

LearningTask pairs_task(int k, std::size_t boards) {
    LearningTask t;
    t.metarules = parse_metarules(slurp("metarules/miplain.txt"));
    t.background.primitives = game_primitives({"move", "won", "number_of_pairs"});
    if (k >= 2) t.background.clauses.push_back(parse_clause("win_1(A,B):-move(A,B),won(B)."));
    t.constant_pool = pool();
    t.max_clauses = 3;
    const auto& states = canonical_pool(k);
    const std::string name = "win_" + std::to_string(k);
    for (std::size_t i = 0; i < boards; ++i) {
        const auto& s = states[i * (states.size() / boards)];
        for (const auto& c : successors(s)) {
            Atom a(name, {s.to_term(), c.to_term()});
            (is_optimal_move(s, c) ? t.positives : t.negatives).push_back(a);
        }
    }
    return t;
}

bool provable(const Program& p, const Atom& a) {
    SolveLimits lim;
    lim.trace = false;
    lim.max_solutions = 1;
    return solve(p, a, lim).succeeded();
}

}  // namespace

TEST_CASE("metarule parsing") {
    auto ms = parse_metarules(slurp("metarules/miplain.txt"));
    REQUIRE(ms.size() == 4);
    CHECK(ms[0].id == "postcon_dyadic");
    CHECK(ms[3].predicate_vars.size() == 3);
    CHECK(ms[3].curried_vars.size() == 4);
    CHECK(ms[2].body_size() == 2);
    auto migo = parse_metarules(slurp("metarules/migo.txt"));
    REQUIRE(migo.size() == 2);
    CHECK(migo[1].tmpl.body[1].negated);
    CHECK_THROWS(parse_metarule("postcon [P]: P(A) :- Q(A)."));
}

TEST_CASE("clauses are matched against metarules") {
    auto ms = parse_metarules(slurp("metarules/miplain.txt"));
    CHECK(matching_metarule(parse_clause("win_2(A,B):-move(A,B),win_2_1(B)."), ms) == "postcon_dyadic");
    CHECK(matching_metarule(parse_clause("f(A):-number_of_pairs(A,x,2),number_of_pairs(A,o,0)."), ms) ==
          "conj_curry2");
    CHECK(matching_metarule(parse_clause("f(A):-number_of_pairs(A,x,1),g(A)."), ms) == "conj_curry1");
    CHECK_FALSE(fits_any_metarule(parse_clause("f(A):-number_of_pairs(A,x,0),g(A,B),h(B)."), ms));
    // First-order variables must stay distinct.
    CHECK_FALSE(fits_any_metarule(parse_clause("f(A,A):-move(A,A),won(A)."), ms));
}

TEST_CASE("one-move win from a single example") {
    LearningTask t;
    t.metarules = parse_metarules(slurp("metarules/miplain.txt"));
    t.background.primitives = game_primitives({"move", "won"});
    t.positives.push_back(
        Atom("win_1", {GameState::parse("xxeooeeee").to_term(), GameState::parse("xxxooeeee").to_term()}));
    auto r = learn(t);
    REQUIRE(r.status == LearnStatus::Found);
    CHECK(r.hypothesis->str() == "win_1(A,B):-move(A,B),won(B).\n");
    CHECK(r.hypothesis->metarule_trace == std::vector<std::string>{"postcon_dyadic"});
    CHECK(r.depth == 1);
}

TEST_CASE("no positives gives the empty hypothesis") {
    LearningTask t;
    t.metarules = parse_metarules(slurp("metarules/miplain.txt"));
    t.background.primitives = game_primitives();
    auto r = learn(t);
    REQUIRE(r.status == LearnStatus::Found);
    CHECK(r.hypothesis->program.clauses.empty());
}

TEST_CASE("two-move wins from positives and negatives") {
    auto t = pairs_task(2, 5);
    auto r = learn(t);
    REQUIRE(r.status == LearnStatus::Found);
    CHECK(r.hypothesis->str() ==
          "win_2(A,B):-move(A,B),win_2_1(B).\n"
          "win_2_1(A):-number_of_pairs(A,x,2),number_of_pairs(A,o,0).\n");
    CHECK(r.hypothesis->invented.size() == 1);

    SUBCASE("sound post hoc") {
        auto full = r.hypothesis->with(t.background);
        for (const auto& p : t.positives) CHECK(provable(full, p));
        for (const auto& n : t.negatives) CHECK_FALSE(provable(full, n));
    }
    SUBCASE("minimal") {
        auto smaller = t;
        smaller.max_clauses = r.depth - 1;
        CHECK(learn(smaller).status == LearnStatus::NoHypothesis);
    }
    SUBCASE("deterministic") {
        CHECK(learn(t).hypothesis->str() == r.hypothesis->str());
    }
    SUBCASE("clauses enumerated stay inside the hypothesis-space bound") {
        // m metarules, p predicate symbols available, j = 2 body literals, times the
        // choices for four curried slots.
        const double m = 4, p = 5, j = 2, slots = std::pow(5.0, 4);
        for (std::size_t n = 1; n < r.clauses_enumerated.size(); ++n) {
            double bound = std::pow(m, n) * std::pow(p, (1 + j) * n) * std::pow(slots, n);
            CHECK(static_cast<double>(r.clauses_enumerated[n]) <= bound);
        }
    }
}

TEST_CASE("budget exhaustion is distinct from failure") {
    auto t = pairs_task(2, 5);
    t.node_budget = 50;
    CHECK(learn(t).status == LearnStatus::BudgetExceeded);
    auto u = pairs_task(2, 5);
    u.max_clauses = 1;
    CHECK(learn(u).status == LearnStatus::NoHypothesis);
}

TEST_CASE("efficiency selection") {
    Program bg;
    bg.primitives = game_primitives();
    bg.clauses.push_back(parse_clause("win_1(A,B):-move(A,B),won(B)."));
    auto make = [&](std::string_view text) {
        Hypothesis h;
        h.program.clauses = parse_clauses(text);
        h.program.primitives = bg.primitives;
        return h;
    };
    std::vector<Hypothesis> cands{
        make("win_2(A,B):-win_2_1(A,B),not(win_2_1(B,C)).\nwin_2_1(A,B):-move(A,B),not(win_1(B,C)).\n"),
        make("win_2(A,B):-move(A,B),win_2_1(B).\n"
             "win_2_1(A):-number_of_pairs(A,x,2),number_of_pairs(A,o,0).\n"),
    };
    std::vector<Atom> probes;
    for (const auto& s : canonical_pool(2)) probes.push_back(Atom("win_2", {s.to_term(), Term::variable("B")}));
    const auto& best = select_efficient(cands, probes, bg);
    CHECK(&best == &cands[1]);

    // Oracle: total trace length over the same probes, every answer enumerated.
    auto trace_total = [&](const Hypothesis& h) {
        std::vector<TraceEvent> events;
        EngineOptions o;
        o.trace = &events;
        auto full = h.with(bg);
        Engine eng(full, o);
        for (const auto& q : probes) {
            Clause local = renumber(Clause{q, {}});
            auto m = eng.mark();
            eng.call(local.head, eng.alloc(1), []() { return false; });
            eng.undo(m);
        }
        return events.size();
    };
    CHECK(trace_total(cands[1]) < trace_total(cands[0]));

    std::vector<Hypothesis> one{cands[0]};
    CHECK(&select_efficient(one, probes, bg) == &one[0]);
    std::vector<Hypothesis> twins{cands[1], cands[1]};
    CHECK(&select_efficient(twins, probes, bg) == &twins[0]);
}

TEST_CASE("candidates at the minimal size") {
    auto t = pairs_task(2, 5);
    auto r = learn_candidates(t, 16);
    REQUIRE(r.status == LearnStatus::Found);
    CHECK(r.depth == 2);
    CHECK(r.candidates.size() >= 2);
    for (const auto& h : r.candidates) CHECK(h.program.clauses.size() == 2);
}

TEST_CASE("task files") {
    const char* text = R"(
        % one-move wins
        max_clauses: 2
        node_budget: 100000
        primitives: move, won
        constants: x, o
        metarule postcon_dyadic [P,Q,R]: P(A,B) :- Q(A,B), R(B).
        pos: win_1([x,x,e,o,o,e,e,e,e],[x,x,x,o,o,e,e,e,e]).
        neg: win_1([x,x,e,o,o,e,e,e,e],[x,x,e,o,o,x,e,e,e]).
    )";
    auto t = parse_task(text, *game_primitives());
    CHECK(t.max_clauses == 2);
    CHECK(t.node_budget == 100000);
    CHECK(t.background.primitives->keys().size() == 2);
    CHECK(t.constant_pool.size() == 2);
    CHECK(t.positives.size() == 1);
    CHECK(t.negatives.size() == 1);
    auto r = learn(t);
    REQUIRE(r.hypothesis);
    CHECK(r.hypothesis->str() == "win_1(A,B):-move(A,B),won(B).\n");
    CHECK_THROWS(parse_task("primitives: fly", *game_primitives()));
    CHECK_THROWS(parse_task("pos: p(X).", *game_primitives()));
}
