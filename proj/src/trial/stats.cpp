#include <cogwin/trial/stats.hpp>

#include <cogwin/logic/parser.hpp>
#include <cogwin/logic/primitives.hpp>
#include <cogwin/logic/unify.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace cogwin::trial {

using logic::Atom;
using logic::Term;

std::string to_string(Effect e) {
    switch (e) {
        case Effect::Beneficial: return "beneficial";
        case Effect::Harmful: return "harmful";
        case Effect::NoEffect: return "no_effect";
    }
    return "?";
}

double accuracy(const TrialSession& s, Part part, int k) {
    std::size_t n = 0, ok = 0;
    for (const auto& r : s.records) {
        if (r.part != part || (k != 0 && r.k != k)) continue;
        ++n;
        ok += r.correct;
    }
    return n == 0 ? 0.0 : static_cast<double>(ok) / static_cast<double>(n);
}

namespace {

GroupStats arm_stats(const std::vector<const TrialSession*>& group, Arm arm) {
    GroupStats g;
    g.arm = arm;
    g.sessions = group.size();
    for (int k = 0; k <= 3; ++k) {
        double pre = 0, post = 0;
        for (const auto* s : group) {
            pre += accuracy(*s, Part::PreTest, k);
            post += accuracy(*s, Part::PostTest, k);
        }
        g.pre_accuracy[k] = pre / static_cast<double>(group.size());
        g.post_accuracy[k] = post / static_cast<double>(group.size());
    }
    return g;
}

}  // namespace

StudyStats group_stats(const std::vector<TrialSession>& sessions) {
    std::vector<const TrialSession*> self, aided;
    for (const auto& s : sessions) {
        if (!s.completed()) throw ProtocolError("session " + s.id + " is not complete");
        (s.arm == Arm::SelfLearning ? self : aided).push_back(&s);
    }
    if (self.empty() || aided.empty()) throw ProtocolError("both arms need at least one completed session");
    StudyStats out{arm_stats(self, Arm::SelfLearning), arm_stats(aided, Arm::MachineAided), {}};
    for (int k = 0; k <= 3; ++k) {
        EffectRow row;
        row.k = k;
        row.c = out.self_learning.post_accuracy[k];
        row.c_ex = out.machine_aided.post_accuracy[k];
        row.e_ex = row.c_ex - row.c;
        row.effect = row.e_ex > 0 ? Effect::Beneficial : row.e_ex < 0 ? Effect::Harmful : Effect::NoEffect;
        out.effects.push_back(row);
    }
    return out;
}

std::vector<TrialSession> mediocre_subsample(const std::vector<TrialSession>& sessions) {
    if (sessions.size() < 2) throw std::invalid_argument("mediocre subsample needs at least two sessions");
    std::vector<double> acc;
    for (const auto& s : sessions) acc.push_back(accuracy(s, Part::PreTest, 0));
    double mean = 0;
    for (double a : acc) mean += a;
    mean /= static_cast<double>(acc.size());
    double var = 0;
    for (double a : acc) var += (a - mean) * (a - mean);
    const double sd = std::sqrt(var / static_cast<double>(acc.size()));
    const double eps = 1e-12;
    std::vector<TrialSession> out;
    for (std::size_t i = 0; i < sessions.size(); ++i)
        if (acc[i] >= mean - sd - eps && acc[i] <= mean + sd + eps) out.push_back(sessions[i]);
    return out;
}

ResponseAnnotation annotate_response(const std::string& response_id, int level, int coverage,
                                     const std::string& annotator, int max_coverage) {
    if (level < 0 || level > 4) throw std::invalid_argument("quality level must be in 0..4");
    if (coverage < 0 || coverage > max_coverage)
        throw std::invalid_argument("coverage must be in 0.." + std::to_string(max_coverage));
    return {response_id, coverage, level, level >= 3, annotator};
}

std::vector<Atom> category_conditions(const logic::Program& theory, int k) {
    const logic::PredKey root{logic::intern("win_" + std::to_string(k)), 2};
    if (!theory.defines(root)) throw std::invalid_argument("theory has no win_" + std::to_string(k));
    std::vector<Atom> out;
    std::set<std::string> seen;
    for (const auto& key : theory.dependencies(root)) {
        for (const auto* c : theory.clauses_for(key)) {
            for (const auto& lit : c->body) {
                if (!theory.is_primitive(lit.key()) || lit.name() == "move") continue;
                Atom g = lit;
                std::size_t v = 0;
                for (auto& t : g.args)
                    if (t.is_variable()) t = Term::variable("V" + std::to_string(v++), 0);
                if (seen.insert(logic::to_string(g)).second) out.push_back(g);
            }
        }
    }
    return out;
}

namespace {

std::string normalise(std::string_view text) {
    std::string out = " ";
    for (char ch : text) {
        unsigned char c = static_cast<unsigned char>(ch);
        out += std::isalnum(c) ? static_cast<char>(std::tolower(c)) : ' ';
    }
    out += ' ';
    // Collapse runs of spaces.
    std::string collapsed;
    for (char c : out)
        if (!(c == ' ' && !collapsed.empty() && collapsed.back() == ' ')) collapsed += c;
    return collapsed;
}

}  // namespace

Lexicon Lexicon::parse(std::string_view text) {
    Lexicon lx;
    std::istringstream in{std::string(text)};
    std::size_t lineno = 0;
    for (std::string line; std::getline(in, line);) {
        ++lineno;
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#') continue;
        auto arrow = line.find("=>");
        if (arrow == std::string::npos) throw std::invalid_argument("lexicon line " + std::to_string(lineno) + ": missing '=>'");
        Atom pattern = logic::parse_atom(line.substr(0, arrow));
        std::vector<std::string> syn;
        std::stringstream rest(line.substr(arrow + 2));
        for (std::string w; std::getline(rest, w, ',');) {
            std::string n = normalise(w);
            if (n.size() > 2) syn.push_back(n);
        }
        lx.entries_.emplace_back(std::move(pattern), std::move(syn));
    }
    return lx;
}

Lexicon Lexicon::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read lexicon: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

int Lexicon::coverage(std::string_view text, const std::vector<Atom>& conditions) const {
    const std::string t = normalise(text);
    int n = 0;
    for (const auto& cond : conditions) {
        bool hit = false;
        for (const auto& [pattern, syns] : entries_) {
            if (pattern.key() != cond.key() || !logic::unify(pattern, cond)) continue;
            for (const auto& s : syns)
                if (t.find(s) != std::string::npos) hit = true;
        }
        n += hit;
    }
    return n;
}

int coverage_assist(std::string_view text, int k, const logic::Program& theory, const Lexicon& lexicon) {
    return lexicon.coverage(text, category_conditions(theory, k));
}

nlohmann::json to_json(const StudyStats& s) {
    auto group = [](const GroupStats& g) {
        nlohmann::json pre, post;
        for (const auto& [k, v] : g.pre_accuracy) pre[k == 0 ? "all" : "win_" + std::to_string(k)] = v;
        for (const auto& [k, v] : g.post_accuracy) post[k == 0 ? "all" : "win_" + std::to_string(k)] = v;
        return nlohmann::json{{"arm", to_string(g.arm)}, {"sessions", g.sessions}, {"pre", pre}, {"post", post}};
    };
    nlohmann::json effects = nlohmann::json::array();
    for (const auto& e : s.effects)
        effects.push_back({{"category", e.k == 0 ? "all" : "win_" + std::to_string(e.k)},
                           {"C", e.c},
                           {"C_ex", e.c_ex},
                           {"E_ex", e.e_ex},
                           {"effect", to_string(e.effect)}});
    return {{"self_learning", group(s.self_learning)}, {"machine_aided", group(s.machine_aided)}, {"effects", effects}};
}

nlohmann::json to_json(const ResponseAnnotation& a) {
    return {{"response", a.response_id},
            {"primitive_coverage", a.primitive_coverage},
            {"level", a.level},
            {"hq", a.hq},
            {"annotator", a.annotator}};
}

}  // namespace cogwin::trial
