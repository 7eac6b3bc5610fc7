#include <doctest.h>

#include "oracle.hpp"

#include <cogwin/game/island.hpp>
#include <cogwin/game/minimax.hpp>
#include <cogwin/game/primitives.hpp>
#include <cogwin/game/questions.hpp>
#include <cogwin/game/symmetry.hpp>
#include <cogwin/logic/parser.hpp>
#include <cogwin/logic/solve.hpp>

#include <map>
#include <set>
#include <sstream>

using namespace cogwin;
using namespace cogwin::game;
using namespace cogwin::logic;

namespace {

using oracle::kLines;
using oracle::line_win;
using oracle::mover;
using oracle::negamax;

const std::set<std::string>& oracle_states() { return oracle::reachable(); }

Program with_game(std::string_view text) {
    Program p;
    p.clauses = parse_clauses(text);
    p.primitives = game_primitives();
    return p;
}

}  // namespace

TEST_CASE("reachable state count matches brute force") {
    CHECK(oracle_states().size() == 5478);
    CHECK(reachable_states().size() == 5478);
    std::set<std::string> mine;
    for (const auto& s : reachable_states()) mine.insert(s.compact());
    CHECK(mine == oracle_states());
}

TEST_CASE("move generation") {
    CHECK(successors(GameState::empty()).size() == 9);
    CHECK(successors(GameState::parse("xoxxoooxx")).empty());
    auto s = GameState::parse("[e,x,o,e,e,x,o,e,o]");
    // Four empty cells, so four successors whichever mark is placed.
    CHECK(successors(s).size() == 4);
    CHECK(successors(GameState::parse("xxxooeeee")).empty());
}

TEST_CASE("won and drawn") {
    CHECK(won(GameState::parse("xxxooeeee"), Player::X));
    CHECK_FALSE(won(GameState::empty(), Player::X));
    CHECK_FALSE(won(GameState::empty(), Player::O));
    CHECK_FALSE(drawn(GameState::empty()));
    CHECK(drawn(GameState::parse("[x,o,x,x,o,o,o,x,x]")));
}

TEST_CASE("number_of_pairs") {
    auto s = GameState::parse("[e,x,o,e,e,x,o,e,o]");
    CHECK(number_of_pairs(s, Player::O) == 2);
    CHECK(number_of_pairs(s, Player::X) == 0);
    CHECK(number_of_pairs(GameState::empty(), Player::X) == 0);
    for (const auto& st : reachable_states()) {
        for (Player p : {Player::X, Player::O}) {
            int n = number_of_pairs(st, p);
            CHECK(n <= 8);
            if (st.count(mark_of(p)) < 2) CHECK(n == 0);
        }
    }
}

TEST_CASE("minimax agrees with an independent negamax on every reachable state") {
    std::map<std::string, int> memo;
    CHECK(negamax("eeeeeeeee", memo) == 0);
    CHECK(minimax(GameState::empty()).value == Outcome::Draw);
    int mismatches = 0;
    for (const auto& s : reachable_states()) {
        if (won_any(s)) continue;
        int v = negamax(s.compact(), memo);
        auto label = minimax(s);
        CHECK(label.side == s.to_move());
        if (v == 0) {
            mismatches += label.value != Outcome::Draw || label.depth.has_value();
        } else if (v > 0) {
            mismatches += label.value != Outcome::Win || label.depth != 10 - v;
        } else {
            mismatches += label.value != Outcome::Loss || label.depth != 10 + v;
        }
    }
    CHECK(mismatches == 0);
}

TEST_CASE("minimax labels for simple positions") {
    auto l = minimax(GameState::parse("xxeooeeee"));
    CHECK(l.value == Outcome::Win);
    CHECK(l.depth == 1);
    auto t = minimax(GameState::parse("xxxooeeee"));
    CHECK(t == MinimaxLabel{Outcome::Win, 0, Player::X});
    auto u = minimax(GameState::parse("xxeoooxee"));
    CHECK(u == MinimaxLabel{Outcome::Win, 0, Player::O});
}

TEST_CASE("classify_win_k") {
    CHECK(classify_win_k(GameState::parse("xxeooeeee")) == 1);
    CHECK_FALSE(classify_win_k(GameState::empty()));
    CHECK_THROWS_AS(classify_win_k(GameState::parse("xeeeeeeee")), std::invalid_argument);
    // x on 1 and 3, o on 2 and 9, nobody holds a pair. x on 7 threatens 4 and 5 at once.
    auto fork = GameState::parse("[x,o,x,e,e,e,e,e,o]");
    CHECK(number_of_pairs(fork, Player::X) == 0);
    CHECK(number_of_pairs(fork.place(6), Player::X) == 2);
    CHECK(is_optimal_move(fork, fork.place(6)));
    CHECK(classify_win_k(fork) == 2);
}

TEST_CASE("win_k counts against the negamax oracle") {
    std::map<std::string, int> memo;
    std::map<int, int> oracle, mine, oracle_canon, mine_canon;
    for (const auto& b : oracle_states()) {
        if (mover(b) != 'x' || line_win(b, 'x') || line_win(b, 'o')) continue;
        int v = negamax(b, memo);
        if (v <= 0) continue;
        int plies = 10 - v;
        int k = (plies + 1) / 2;
        oracle[k]++;
        // o holds no pair: no o line with two o and an empty cell.
        int opairs = 0;
        for (auto l : kLines) {
            int oc = 0, ec = 0;
            for (int i = 0; i < 3; ++i) oc += b[l[i] - '0'] == 'o', ec += b[l[i] - '0'] == 'e';
            opairs += oc == 2 && ec == 1;
        }
        if (opairs == 0) oracle_canon[k]++;
    }
    for (const auto& s : reachable_states()) {
        if (s.to_move() != Player::X) continue;
        if (auto k = classify_win_k(s)) mine[*k]++;
    }
    for (int k = 1; k <= 3; ++k) mine_canon[k] = static_cast<int>(canonical_pool(k).size());
    CHECK(mine == oracle);
    CHECK(mine_canon == oracle_canon);
    CHECK(oracle.rbegin()->first == 3);
}

TEST_CASE("a double threat is a win in two") {
    int found = 0;
    for (const auto& st : canonical_pool(2)) {
        for (const auto& t : successors(st)) {
            if (number_of_pairs(t, Player::X) >= 2 && is_optimal_move(st, t)) ++found;
        }
    }
    CHECK(found > 0);
}

TEST_CASE("symmetry group laws") {
    Symmetry r = Symmetry::Rotate90;
    CHECK(r * r * r * r == Symmetry::Identity);
    auto s = GameState::parse("xoeexeeeo");
    CHECK(apply_symmetry(apply_symmetry(apply_symmetry(apply_symmetry(s, r), r), r), r) == s);
    for (Symmetry a : Symmetry::all()) {
        CHECK((a * a == Symmetry::Identity || a * a * a * a == Symmetry::Identity));
        CHECK(a * a.inverse() == Symmetry::Identity);
        for (Symmetry b : Symmetry::all()) {
            CHECK(apply_symmetry(s, a * b) == apply_symmetry(apply_symmetry(s, b), a));
            bool closed = false;
            for (Symmetry c : Symmetry::all()) closed |= (a * b) == c;
            CHECK(closed);
        }
    }
}

TEST_CASE("classification is invariant under symmetry") {
    for (int k = 1; k <= 3; ++k)
        for (const auto& s : canonical_pool(k))
            for (Symmetry g : Symmetry::all()) CHECK(classify_win_k(apply_symmetry(s, g)) == k);
}

TEST_CASE("island map is a bijection and invertible") {
    for (std::uint64_t seed : {0ull, 1ull, 42ull}) {
        auto m = IslandMap::make(seed);
        CHECK(m.valid());
        auto inv = m.inverse();
        auto s = GameState::parse("xoeexeeeo");
        CHECK(islandize(islandize(s, m), inv) == s);
        CHECK(inv.inverse().territory == m.territory);
        CHECK(inv.vocabulary.at("territory") == "cell");
        int islands = 0;
        for (const auto& f : m.features) islands += f.island;
        CHECK(islands == 3);
    }
}

TEST_CASE("question banks") {
    for (int k = 1; k <= 3; ++k) {
        auto bank = question_bank(k, 5, 11);
        CHECK(bank.size() == 5);
        for (std::size_t i = 0; i < bank.size(); ++i) {
            CHECK(is_canonical_position(bank[i]));
            CHECK(classify_win_k(bank[i]) == k);
            for (std::size_t j = 0; j < i; ++j) CHECK_FALSE(isomorphic(bank[i], bank[j]));
        }
        CHECK(question_bank(k, 5, 11) == bank);
    }
    std::vector<BankEntry> entries{{2, question_bank(2, 1, 3)[0], 99}};
    std::stringstream ss;
    write_bank(ss, entries);
    auto back = read_bank(ss);
    REQUIRE(back.size() == 1);
    CHECK(back[0].board == entries[0].board);
    CHECK(back[0].symmetry_seed == 99);
}

TEST_CASE("primitives through the solver agree with direct evaluation") {
    auto p = with_game("");
    SolveLimits lim;
    lim.trace = false;
    for (const auto& s : reachable_states()) {
        CHECK(solve(p, Atom("won", {s.to_term()}), lim).succeeded() == won_any(s));
        CHECK(solve(p, Atom("drawn", {s.to_term()}), lim).succeeded() == drawn(s));
        auto r = solve(p, Atom("move", {s.to_term(), Term::variable("B")}), lim);
        CHECK(r.solutions.size() == successors(s).size());
        for (Player pl : {Player::X, Player::O}) {
            Term pt = Term::constant(std::string(1, to_char(pl)));
            Term n = Term::constant(std::to_string(number_of_pairs(s, pl)));
            CHECK(solve(p, Atom("number_of_pairs", {s.to_term(), pt, n}), lim).succeeded());
        }
    }
}

TEST_CASE("win_1 clause finds exactly the line-completing moves") {
    auto p = with_game("win_1(A,B):-move(A,B),won(B).");
    auto s = GameState::parse("[x,x,e,o,o,e,e,e,e]");
    auto r = solve(p, Atom("win_1", {s.to_term(), Term::variable("B")}));
    REQUIRE(r.solutions.size() == 1);
    CHECK(to_string(*r.solutions[0].bindings.lookup("B")) == "[x,x,x,o,o,e,e,e,e]");
    CHECK_FALSE(solve(p, Atom("win_1", {GameState::empty().to_term(), Term::variable("B")})).succeeded());
    CHECK(solve(p, parse_atom("won([x,x,x,o,o,e,e,e,e])")).succeeded());

    SolveLimits lim;
    lim.trace = false;
    for (const auto& st : canonical_pool(1)) {
        std::set<std::string> direct;
        for (int i = 0; i < 9; ++i) {
            if (st.compact()[i] != 'e') continue;
            std::string t = st.compact();
            t[i] = 'x';
            if (line_win(t, 'x')) direct.insert(GameState::parse(t).str());
        }
        std::set<std::string> solved;
        for (const auto& a : answers(p, Atom("win_1", {st.to_term(), Term::variable("B")}), lim))
            solved.insert(to_string(a.args[1]));
        CHECK(solved == direct);
    }
}
