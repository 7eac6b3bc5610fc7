#include <cogwin/mil/metarule.hpp>

#include <cogwin/logic/parser.hpp>
#include <cogwin/logic/unify.hpp>

#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>

namespace cogwin::mil {

using logic::Atom;
using logic::Clause;
using logic::Symbol;
using logic::Term;

bool Metarule::is_curried(const Term& t) const { return t.is_variable() && curried_vars.count(t.symbol()) > 0; }

std::string Metarule::str() const {
    std::string vars;
    for (Symbol s : predicate_vars) vars += (vars.empty() ? "" : ",") + logic::symbol_text(s);
    for (Symbol s : curried_vars) vars += "," + logic::symbol_text(s);
    return "metarule " + id + " [" + vars + "]: " + to_string(tmpl);
}

Metarule parse_metarule(std::string_view text) {
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("bad metarule (" + why + "): " + std::string(text));
    };
    std::string_view rest = text;
    auto trim = [](std::string_view v) {
        while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.remove_prefix(1);
        while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.remove_suffix(1);
        return v;
    };
    rest = trim(rest);
    if (rest.rfind("metarule", 0) != 0) fail("missing keyword");
    rest.remove_prefix(8);
    auto open = rest.find('['), close = rest.find(']');
    if (open == std::string_view::npos || close == std::string_view::npos || close < open) fail("missing variable list");
    auto colon = rest.find(':', close);
    if (colon == std::string_view::npos) fail("missing ':'");

    Metarule m;
    m.id = std::string(trim(rest.substr(0, open)));
    if (m.id.empty()) fail("missing id");
    std::set<Symbol> existentials;
    std::stringstream vars{std::string(rest.substr(open + 1, close - open - 1))};
    for (std::string v; std::getline(vars, v, ',');) {
        auto name = trim(v);
        if (!name.empty()) existentials.insert(logic::intern(name));
    }
    m.tmpl = logic::parse_template(rest.substr(colon + 1));

    auto note_pred = [&](const Atom& a) {
        if (existentials.count(a.predicate)) m.predicate_vars.insert(a.predicate);
    };
    note_pred(m.tmpl.head);
    for (const auto& b : m.tmpl.body) note_pred(b);
    for (Symbol s : existentials)
        if (!m.predicate_vars.count(s)) m.curried_vars.insert(s);
    if (!m.is_predicate_var(m.tmpl.head.predicate)) fail("head predicate must be existential");
    return m;
}

std::vector<Metarule> parse_metarules(std::string_view text) {
    std::vector<Metarule> out;
    std::stringstream ss{std::string(text)};
    for (std::string line; std::getline(ss, line);) {
        auto pct = line.find('%');
        if (pct != std::string::npos) line.resize(pct);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        out.push_back(parse_metarule(line));
    }
    return out;
}

namespace {

struct Matcher {
    const Metarule& m;
    std::map<Symbol, Symbol> preds;
    std::map<logic::VarKey, Term> firsts;
    std::map<logic::VarKey, logic::VarKey> firsts_back;
    std::map<Symbol, Term> curried;

    bool term(const Term& t, const Term& c) {
        if (t.is_variable()) {
            if (m.is_curried(t)) {
                if (!c.is_constant()) return false;
                auto [it, fresh] = curried.emplace(t.symbol(), c);
                return fresh || it->second == c;
            }
            if (!c.is_variable()) return false;
            logic::VarKey tk{t.symbol(), t.var_id()}, ck{c.symbol(), c.var_id()};
            auto [it, fresh] = firsts.emplace(tk, c);
            if (!fresh) return it->second == c;
            // First-order variables map one to one.
            return firsts_back.emplace(ck, tk).second;
        }
        return t == c;
    }

    bool atom(const Atom& t, const Atom& c) {
        if (t.negated != c.negated || t.args.size() != c.args.size()) return false;
        if (m.is_predicate_var(t.predicate)) {
            auto [it, fresh] = preds.emplace(t.predicate, c.predicate);
            if (!fresh && it->second != c.predicate) return false;
        } else if (t.predicate != c.predicate) {
            return false;
        }
        for (std::size_t i = 0; i < t.args.size(); ++i)
            if (!term(t.args[i], c.args[i])) return false;
        return true;
    }
};

}  // namespace

std::optional<std::string> matching_metarule(const Clause& c, std::span<const Metarule> metarules) {
    for (const auto& m : metarules) {
        if (m.tmpl.body.size() != c.body.size()) continue;
        Matcher mt{m, {}, {}, {}, {}};
        bool ok = mt.atom(m.tmpl.head, c.head);
        for (std::size_t i = 0; ok && i < c.body.size(); ++i) ok = mt.atom(m.tmpl.body[i], c.body[i]);
        if (ok) return m.id;
    }
    return std::nullopt;
}

bool fits_any_metarule(const Clause& c, std::span<const Metarule> metarules) {
    return matching_metarule(c, metarules).has_value();
}

}  // namespace cogwin::mil
