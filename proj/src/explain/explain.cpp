#include <cogwin/explain/explain.hpp>

#include <cogwin/game/primitives.hpp>
#include <cogwin/logic/parser.hpp>
#include <cogwin/logic/primitives.hpp>
#include <cogwin/logic/unify.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace cogwin::explain {

using game::GameState;
using game::Player;
using logic::Atom;
using logic::Clause;
using logic::Program;
using logic::Substitution;
using logic::Term;

namespace {

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> words(std::string_view s) {
    std::vector<std::string> out;
    std::istringstream in{std::string(s)};
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

std::optional<GameState> board_of(const Atom& a) {
    if (a.args.empty()) return std::nullopt;
    return GameState::from_term(a.args[0]);
}

}  // namespace

TemplateTable TemplateTable::parse(std::string_view text) {
    TemplateTable t;
    std::istringstream in{std::string(text)};
    std::size_t lineno = 0;
    for (std::string line; std::getline(in, line);) {
        ++lineno;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        auto arrow = s.find("=>");
        if (arrow == std::string::npos)
            throw std::invalid_argument("template line " + std::to_string(lineno) + ": missing '=>'");
        Template tpl;
        std::string lhs = trim(s.substr(0, arrow));
        tpl.phrase = trim(s.substr(arrow + 2));
        if (!lhs.empty() && lhs[0] == '!') {
            tpl.violated = true;
            lhs = trim(lhs.substr(1));
        }
        if (auto at = lhs.rfind('@'); at != std::string::npos && lhs.find(')', at) == std::string::npos) {
            std::string who = trim(lhs.substr(at + 1));
            if (who != "x" && who != "o")
                throw std::invalid_argument("template line " + std::to_string(lineno) + ": unknown mover " + who);
            tpl.mover = who == "x" ? Player::X : Player::O;
            lhs = trim(lhs.substr(0, at));
        }
        bool negated = false;
        if (lhs.rfind("not(", 0) == 0 && lhs.back() == ')') {
            negated = true;
            lhs = trim(lhs.substr(4, lhs.size() - 5));
        }
        tpl.pattern = logic::parse_atom(lhs);
        tpl.pattern.negated = negated;
        if (tpl.phrase.empty()) throw std::invalid_argument("template line " + std::to_string(lineno) + ": empty phrase");
        t.entries_.push_back(std::move(tpl));
    }
    return t;
}

TemplateTable TemplateTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read templates: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

const Template* TemplateTable::find(const Atom& literal, bool violated) const {
    for (const auto& t : entries_) {
        if (t.violated != violated || t.pattern.negated != literal.negated) continue;
        if (t.pattern.key() != literal.key()) continue;
        if (t.mover) {
            auto b = board_of(literal);
            if (!b || b->to_move() != *t.mover) continue;
        }
        if (logic::unify(t.pattern.positive(), literal.positive())) return &t;
    }
    return nullptr;
}

std::string translate(std::string_view text, const std::map<std::string, std::string>& vocabulary) {
    std::vector<std::pair<std::vector<std::string>, const std::string*>> keys;
    for (const auto& [k, v] : vocabulary) keys.emplace_back(words(k), &v);
    std::stable_sort(keys.begin(), keys.end(), [](const auto& a, const auto& b) { return a.first.size() > b.first.size(); });
    auto ws = words(text);
    std::string out;
    for (std::size_t i = 0; i < ws.size();) {
        const std::string* image = nullptr;
        std::size_t len = 1;
        for (const auto& [kw, v] : keys) {
            if (kw.empty() || i + kw.size() > ws.size()) continue;
            if (std::equal(kw.begin(), kw.end(), ws.begin() + static_cast<std::ptrdiff_t>(i))) {
                image = v;
                len = kw.size();
                break;
            }
        }
        if (!out.empty()) out += ' ';
        out += image ? *image : ws[i];
        i += len;
    }
    return out;
}

namespace {

struct Failure {
    std::size_t depth = 0;
    std::optional<Atom> literal;
};

// Depth-first prover that records the primitive and negated literals of a proof
// in execution order, expanding every defined predicate in place.
class Walker {
public:
    explicit Walker(const Program& p) : p_(p) {}

    bool prove(std::vector<Atom> goals, std::size_t i, Substitution s, std::vector<Atom>& trace, Failure* fail,
               Substitution* result) {
        if (++steps_ > kMaxSteps) throw ExplainError("explanation search exceeded its step budget");
        if (i == goals.size()) {
            if (result) *result = s;
            return true;
        }
        Atom lit = s.apply(goals[i]);
        auto failed = [&] {
            if (fail && (!fail->literal || trace.size() > fail->depth)) {
                fail->depth = trace.size();
                fail->literal = lit;
            }
            return false;
        };
        if (lit.negated) {
            std::vector<Atom> scratch;
            if (prove({lit.positive()}, 0, {}, scratch, nullptr, nullptr)) return failed();
            trace.push_back(lit);
            if (prove(goals, i + 1, s, trace, fail, result)) return true;
            trace.pop_back();
            return false;
        }
        if (const auto* fn = p_.primitives ? p_.primitives->find(lit.key()) : nullptr) {
            std::vector<std::vector<Term>> tuples;
            try {
                tuples = (*fn)(lit.args);
            } catch (const logic::InstantiationError& e) {
                throw ExplainError(e.what());
            }
            bool any = false;
            for (auto& tuple : tuples) {
                auto mu = logic::unify(lit, Atom(lit.predicate, std::move(tuple)));
                if (!mu) continue;
                any = true;
                Substitution next = s;
                for (const auto& [k, v] : mu->bindings()) next.bind(Term::variable(k.first, k.second), v);
                trace.push_back(mu->apply(lit));
                if (prove(goals, i + 1, next, trace, fail, result)) return true;
                trace.pop_back();
            }
            return any ? false : failed();
        }
        bool any = false;
        for (const Clause* c : p_.clauses_for(lit.key())) {
            Substitution fresh;
            for (const auto& v : logic::clause_variables(*c)) fresh.bind(v, Term::variable(v.symbol(), ++next_id_));
            auto theta = logic::unify(fresh.apply(c->head), lit);
            if (!theta) continue;
            any = true;
            Substitution next = s;
            for (const auto& [k, v] : theta->bindings()) next.bind(Term::variable(k.first, k.second), v);
            std::vector<Atom> expanded(goals.begin(), goals.begin() + static_cast<std::ptrdiff_t>(i));
            for (const auto& b : c->body) expanded.push_back(fresh.apply(b));
            expanded.insert(expanded.end(), goals.begin() + static_cast<std::ptrdiff_t>(i) + 1, goals.end());
            if (prove(std::move(expanded), i, next, trace, fail, result)) return true;
        }
        return any ? false : failed();
    }

private:
    static constexpr std::uint64_t kMaxSteps = 5'000'000;
    const Program& p_;
    std::uint32_t next_id_ = 1u << 21;
    std::uint64_t steps_ = 0;
};

std::vector<std::array<int, 3>> player_pairs(const GameState& s, Player p) {
    std::vector<std::array<int, 3>> out;
    const auto mark = p == Player::X ? game::Cell::X : game::Cell::O;
    for (const auto& l : game::win_lines()) {
        int mine = 0, empty = 0;
        for (int c : l) {
            if (s.cells[c] == mark) ++mine;
            else if (s.cells[c] == game::Cell::Empty) ++empty;
        }
        if (mine == 2 && empty == 1) out.push_back({l[0], l[1], l[2]});
    }
    return out;
}

std::vector<std::array<int, 3>> full_lines(const GameState& s) {
    std::vector<std::array<int, 3>> out;
    for (const auto& l : game::win_lines())
        if (s.cells[l[0]] != game::Cell::Empty && s.cells[l[0]] == s.cells[l[1]] && s.cells[l[1]] == s.cells[l[2]])
            out.push_back({l[0], l[1], l[2]});
    return out;
}

Sentence phrase(const Atom& lit, bool violated, const TemplateTable& templates) {
    const Template* t = templates.find(lit, violated);
    if (!t) throw ExplainError("no template for " + std::string(violated ? "violated " : "") + logic::to_string(lit));
    Sentence out{lit, violated, t->phrase, {}, {}};
    auto board = board_of(lit);
    if (!board || lit.negated) return out;
    const std::string& name = lit.name();
    if (name == "move" && lit.args.size() == 2) {
        if (auto after = GameState::from_term(lit.args[1]))
            if (auto c = game::moved_cell(*board, *after)) out.cells.push_back(*c);
    } else if (name == "won") {
        out.lines = full_lines(*board);
    } else if (name == "number_of_pairs" && lit.args.size() == 3 && lit.args[1].is_constant()) {
        out.lines = player_pairs(*board, lit.args[1].text() == "x" ? Player::X : Player::O);
    }
    std::set<int> cells(out.cells.begin(), out.cells.end());
    for (const auto& l : out.lines) cells.insert(l.begin(), l.end());
    out.cells.assign(cells.begin(), cells.end());
    return out;
}

}  // namespace

ExplanationPayload explain(const Program& theory, const GameState& s, int k, const TemplateTable& templates,
                           std::optional<GameState> rejected) {
    if (game::terminal(s)) throw ExplainError("no explanation for a finished game: " + s.str());
    if (s.to_move() != Player::X) throw ExplainError("explanations are given for the cross player");
    const std::string root = "win_" + std::to_string(k);
    if (!theory.defines({logic::intern(root), 2})) throw ExplainError("theory has no " + root + "/2");

    ExplanationPayload out;
    out.position = s;
    out.k = k;
    Walker walker(theory);
    std::vector<Atom> trace;
    Substitution result;
    const Term answer = Term::variable("Move");
    if (!walker.prove({Atom(root, {s.to_term(), answer})}, 0, {}, trace, nullptr, &result))
        throw ExplainError(root + " gives no move on " + s.str());
    auto chosen = GameState::from_term(result.apply(answer));
    if (!chosen) throw ExplainError(root + " answer is not a board");
    out.suggested_move = *game::moved_cell(s, *chosen);

    std::vector<Atom> seen;
    bool first_move = true;
    for (const auto& lit : trace) {
        if (std::find(seen.begin(), seen.end(), lit) != seen.end()) continue;
        seen.push_back(lit);
        // The suggested move itself is the action being explained, not a condition.
        if (first_move && !lit.negated && lit.name() == "move") {
            first_move = false;
            continue;
        }
        out.sentences.push_back(phrase(lit, false, templates));
    }

    if (rejected) {
        auto cell = game::moved_cell(s, *rejected);
        if (!cell) throw std::invalid_argument("rejected board is not a move from " + s.str());
        out.rejected_move = *cell;
        Failure fail;
        std::vector<Atom> scratch;
        Walker w(theory);
        if (!w.prove({Atom(root, {s.to_term(), rejected->to_term()})}, 0, {}, scratch, &fail, nullptr) && fail.literal)
            out.rejection = phrase(*fail.literal, true, templates);
    }
    return out;
}

namespace {

Atom map_boards(const Atom& a, const game::IslandMap& m) {
    Atom out = a;
    for (auto& t : out.args)
        if (auto b = GameState::from_term(t)) t = game::islandize(*b, m).to_term();
    return out;
}

Sentence map_sentence(const Sentence& s, const game::IslandMap& m) {
    Sentence out = s;
    out.literal = map_boards(s.literal, m);
    out.text = translate(s.text, m.vocabulary);
    for (auto& c : out.cells) c = m.territory[c];
    std::sort(out.cells.begin(), out.cells.end());
    for (auto& l : out.lines)
        for (auto& c : l) c = m.territory[c];
    return out;
}

}  // namespace

ExplanationPayload render_island(const ExplanationPayload& p, const game::IslandMap& m) {
    std::set<int> seen(m.territory.begin(), m.territory.end());
    if (seen.size() != 9 || *seen.begin() != 0 || *seen.rbegin() != 8)
        throw std::invalid_argument("island map is not a permutation of the cells");
    ExplanationPayload out = p;
    out.position = game::islandize(p.position, m);
    out.suggested_move = m.territory[p.suggested_move];
    if (p.rejected_move) out.rejected_move = m.territory[*p.rejected_move];
    for (auto& s : out.sentences) s = map_sentence(s, m);
    if (p.rejection) out.rejection = map_sentence(*p.rejection, m);
    return out;
}

nlohmann::json to_json(const ExplanationPayload& p) {
    auto sentence = [](const Sentence& s) {
        nlohmann::json lines = nlohmann::json::array();
        for (const auto& l : s.lines) lines.push_back({l[0], l[1], l[2]});
        return nlohmann::json{{"text", s.text},
                              {"condition", logic::to_string(s.literal)},
                              {"violated", s.violated},
                              {"cells", s.cells},
                              {"lines", lines}};
    };
    nlohmann::json sentences = nlohmann::json::array();
    for (const auto& s : p.sentences) sentences.push_back(sentence(s));
    nlohmann::json j{{"position", p.position.str()},
                     {"k", p.k},
                     {"suggested_move", p.suggested_move},
                     {"sentences", sentences}};
    j["rejected_move"] = p.rejected_move ? nlohmann::json(*p.rejected_move) : nlohmann::json(nullptr);
    j["rejection"] = p.rejection ? sentence(*p.rejection) : nlohmann::json(nullptr);
    return j;
}

}  // namespace cogwin::explain
