#include <doctest.h>

#include <cogwin/explain/explain.hpp>
#include <cogwin/game/minimax.hpp>
#include <cogwin/game/primitives.hpp>
#include <cogwin/game/questions.hpp>
#include <cogwin/logic/parser.hpp>
#include <cogwin/logic/solve.hpp>

#include <fstream>
#include <sstream>

using namespace cogwin;
using namespace cogwin::explain;
using game::GameState;
using logic::Program;

namespace {

Program reference() {
    std::ifstream in(std::string(COGWIN_DATA_DIR) + "/theories/miplain_reference.pl");
    REQUIRE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    Program p;
    p.clauses = logic::parse_clauses(ss.str());
    p.primitives = game::game_primitives();
    return p;
}

const TemplateTable& templates() {
    static const TemplateTable t = TemplateTable::load(std::string(COGWIN_DATA_DIR) + "/explain/templates.txt");
    return t;
}

bool holds(const logic::Atom& lit) {
    Program p;
    p.primitives = game::game_primitives();
    logic::SolveLimits lim;
    lim.trace = false;
    const bool proved = logic::solve(p, lit.positive(), lim).succeeded();
    return lit.negated ? !proved : proved;
}

std::string shape(const Sentence& s) {
    std::string out = s.literal.name();
    if (s.literal.name() == "number_of_pairs") out += "," + s.literal.args[1].text() + "," + s.literal.args[2].text();
    return out;
}

bool contains(const std::vector<Sentence>& ss, const std::string& phrase) {
    for (const auto& s : ss)
        if (s.text.find(phrase) != std::string::npos) return true;
    return false;
}

}  // namespace

TEST_CASE("a two-move win is explained by pairs made and prevented") {
    const Program ref = reference();
    const auto& s = game::canonical_pool(2).front();
    auto p = explain::explain(ref, s, 2, templates());
    REQUIRE(p.sentences.size() == 2);
    CHECK(contains(p.sentences, "makes two pairs of crosses"));
    CHECK(contains(p.sentences, "prevents a pair of noughts"));
    CHECK(game::is_optimal_move(s, s.place(p.suggested_move)));
    CHECK(p.sentences[0].lines.size() == 2);
}

TEST_CASE("an immediate win has a single condition") {
    const Program ref = reference();
    auto p = explain::explain(ref, game::canonical_pool(1).front(), 1, templates());
    REQUIRE(p.sentences.size() == 1);
    CHECK(p.sentences[0].text == "it completes a line of crosses");
    CHECK(p.sentences[0].lines.size() == 1);
}

TEST_CASE("finished games and missing rules are reported") {
    const Program ref = reference();
    auto done = GameState::parse("[x,x,x,o,o,e,e,e,e]");
    CHECK_THROWS_AS(explain::explain(ref, done, 1, templates()), ExplainError);
    CHECK_THROWS_AS(explain::explain(ref, game::canonical_pool(1).front(), 4, templates()), ExplainError);
    auto draw = GameState::parse("[x,o,x,x,o,o,o,x,e]");
    CHECK_THROWS_AS(explain::explain(ref, draw, 1, templates()), ExplainError);
}

TEST_CASE("explanations are total, faithful and in execution order on every canonical board") {
    const Program ref = reference();
    const std::vector<std::vector<std::string>> order = {
        {"won"},
        {"number_of_pairs,x,2", "number_of_pairs,o,0"},
        {"number_of_pairs,x,1", "move", "number_of_pairs,x,0", "move", "number_of_pairs,x,2", "number_of_pairs,o,0"},
    };
    for (int k = 1; k <= 3; ++k) {
        for (const auto& s : game::canonical_pool(k)) {
            auto p = explain::explain(ref, s, k, templates());
            CHECK(game::is_move(s, s.place(p.suggested_move)));
            std::vector<std::string> got;
            for (const auto& sent : p.sentences) {
                got.push_back(shape(sent));
                CHECK(holds(sent.literal));
                for (int c : sent.cells) CHECK((c >= 0 && c < 9));
            }
            CHECK(got == order[k - 1]);
        }
    }
}

TEST_CASE("a rejected move is explained by its first violated condition") {
    const Program ref = reference();
    std::size_t with_reason = 0;
    for (int k = 1; k <= 3; ++k) {
        for (const auto& s : game::canonical_pool(k)) {
            for (const auto& t : game::successors(s)) {
                if (game::is_optimal_move(s, t)) continue;
                auto p = explain::explain(ref, s, k, templates(), t);
                REQUIRE(p.rejected_move);
                CHECK(*p.rejected_move == *game::moved_cell(s, t));
                REQUIRE(p.rejection);
                CHECK(p.rejection->violated);
                CHECK_FALSE(holds(p.rejection->literal));
                ++with_reason;
            }
            break;
        }
    }
    CHECK(with_reason > 0);
    const auto& s = game::canonical_pool(1).front();
    CHECK_THROWS_AS(explain::explain(ref, s, 1, templates(), s), std::invalid_argument);
}

TEST_CASE("island rendering") {
    const Program ref = reference();
    const auto& s = game::canonical_pool(3).front();
    auto t = game::successors(s).front();
    auto p = explain::explain(ref, s, 3, templates(), game::is_optimal_move(s, t) ? game::successors(s).back() : t);

    auto identity = game::IslandMap::make(0);
    identity.vocabulary.clear();
    CHECK(render_island(p, identity) == p);

    for (std::uint64_t seed : {1ull, 7ull, 99ull}) {
        auto m = game::IslandMap::make(seed);
        auto island = render_island(p, m);
        CHECK(island.position == game::islandize(p.position, m));
        CHECK(island.suggested_move == m.territory[p.suggested_move]);
        CHECK(render_island(island, m.inverse()) == p);
    }
    auto two = explain::explain(ref, game::canonical_pool(2).front(), 2, templates());
    auto island = render_island(two, game::IslandMap::make(3));
    CHECK(contains(island.sentences, "makes two near-complete sets of blue flags"));
}

TEST_CASE("phrase translation matches whole words, longest phrase first") {
    std::map<std::string, std::string> v{{"pair", "set"}, {"pair of crosses", "blue set"}, {"x", "blue"}};
    CHECK(translate("a pair of crosses and a pair", v) == "a blue set and a set");
    CHECK(translate("xx x", v) == "xx blue");
}

TEST_CASE("template file errors") {
    CHECK_THROWS_AS(TemplateTable::parse("won(A) it wins"), std::invalid_argument);
    CHECK_THROWS_AS(TemplateTable::parse("move(A,B)@z => hi"), std::invalid_argument);
    auto t = TemplateTable::parse("not(won(A)) => nobody has won\nmove(A,B)@o => reply");
    CHECK(t.entries().size() == 2);
    CHECK(t.entries()[0].pattern.negated);
    CHECK(t.entries()[1].mover == game::Player::O);
}

TEST_CASE("payload json") {
    const Program ref = reference();
    auto p = explain::explain(ref, game::canonical_pool(2).front(), 2, templates());
    auto j = to_json(p);
    CHECK(j["k"] == 2);
    CHECK(j["sentences"].size() == 2);
    CHECK(j["rejection"].is_null());
}
