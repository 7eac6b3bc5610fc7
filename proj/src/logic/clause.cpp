#include <cogwin/logic/clause.hpp>
#include <cogwin/logic/primitives.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace cogwin::logic {

std::string PredKey::str() const { return symbol_text(name) + "/" + std::to_string(arity); }

bool Atom::is_ground() const {
    return std::all_of(args.begin(), args.end(), [](const Term& t) { return t.is_ground(); });
}

bool operator<(const Atom& a, const Atom& b) {
    if (a.negated != b.negated) return a.negated < b.negated;
    if (a.predicate != b.predicate) return a.name() < b.name();
    return std::lexicographical_compare(a.args.begin(), a.args.end(), b.args.begin(), b.args.end());
}

bool Program::is_primitive(PredKey k) const { return primitives && primitives->contains(k); }

bool Program::defines(PredKey k) const {
    return std::any_of(clauses.begin(), clauses.end(), [&](const Clause& c) { return c.head.key() == k; });
}

std::vector<const Clause*> Program::clauses_for(PredKey k) const {
    std::vector<const Clause*> out;
    for (const auto& c : clauses)
        if (c.head.key() == k) out.push_back(&c);
    return out;
}

std::vector<PredKey> Program::defined_predicates() const {
    std::vector<PredKey> out;
    for (const auto& c : clauses)
        if (std::find(out.begin(), out.end(), c.head.key()) == out.end()) out.push_back(c.head.key());
    return out;
}

std::vector<PredKey> Program::dependencies(PredKey root) const {
    std::vector<PredKey> order{root};
    std::set<PredKey> seen{root};
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (const auto& c : clauses) {
            if (c.head.key() != order[i]) continue;
            for (const auto& lit : c.body) {
                auto k = lit.key();
                if (is_primitive(k) || !seen.insert(k).second) continue;
                order.push_back(k);
            }
        }
    }
    return order;
}

void Program::validate() const {
    std::map<Symbol, std::uint32_t> arity;
    auto check_arity = [&](const Atom& a) {
        auto [it, inserted] = arity.emplace(a.predicate, static_cast<std::uint32_t>(a.args.size()));
        if (!inserted && it->second != a.args.size())
            throw std::invalid_argument("predicate " + a.name() + " used with arities " +
                                        std::to_string(it->second) + " and " +
                                        std::to_string(a.args.size()));
    };
    for (const auto& c : clauses) {
        if (c.head.negated) throw std::invalid_argument("negated head in clause " + to_string(c));
        check_arity(c.head);
        for (const auto& lit : c.body) {
            check_arity(lit);
            if (!is_primitive(lit.key()) && !defines(lit.key()))
                throw std::invalid_argument("undefined predicate " + lit.key().str() + " in " +
                                            to_string(c));
        }
    }
}

std::string to_string(const Atom& a) {
    std::string out;
    if (a.negated) out += "not(";
    out += a.name();
    if (!a.args.empty()) {
        out += '(';
        for (std::size_t i = 0; i < a.args.size(); ++i) {
            if (i) out += ',';
            out += to_string(a.args[i]);
        }
        out += ')';
    }
    if (a.negated) out += ')';
    return out;
}

std::string to_string(const Clause& c) {
    std::string out = to_string(c.head);
    if (!c.body.empty()) {
        out += ":-";
        for (std::size_t i = 0; i < c.body.size(); ++i) {
            if (i) out += ',';
            out += to_string(c.body[i]);
        }
    }
    return out + ".";
}

std::string to_string(const Program& p) {
    std::string out;
    for (const auto& c : p.clauses) out += to_string(c) + "\n";
    return out;
}

namespace {
void collect_vars(const Term& t, std::vector<Term>& out) {
    if (t.is_variable()) {
        if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
    } else if (t.is_list()) {
        for (const auto& i : t.items()) collect_vars(i, out);
    }
}
}  // namespace

std::vector<Term> clause_variables(const Clause& c) {
    std::vector<Term> out;
    for (const auto& t : c.head.args) collect_vars(t, out);
    for (const auto& lit : c.body)
        for (const auto& t : lit.args) collect_vars(t, out);
    return out;
}

std::optional<PredKey> find_predicate(const Program& p, std::string_view name) {
    for (auto k : p.defined_predicates())
        if (symbol_text(k.name) == name) return k;
    return std::nullopt;
}

}  // namespace cogwin::logic
