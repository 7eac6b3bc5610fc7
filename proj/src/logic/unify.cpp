#include <cogwin/logic/unify.hpp>

namespace cogwin::logic {

const Term* Substitution::lookup(const Term& var) const {
    auto it = map_.find(var_key(var));
    return it == map_.end() ? nullptr : &it->second;
}

const Term* Substitution::lookup(std::string_view name) const {
    for (const auto& [k, v] : map_)
        if (symbol_text(k.first) == name) return &v;
    return nullptr;
}

Term Substitution::apply(const Term& t) const {
    switch (t.kind()) {
        case Term::Kind::Variable: {
            auto* v = lookup(t);
            return v ? *v : t;
        }
        case Term::Kind::Constant: return t;
        case Term::Kind::List: {
            if (t.is_ground()) return t;
            std::vector<Term> items;
            items.reserve(t.items().size());
            for (const auto& i : t.items()) items.push_back(apply(i));
            return Term::list(std::move(items));
        }
    }
    return t;
}

Atom Substitution::apply(const Atom& a) const {
    Atom out = a;
    for (auto& t : out.args) t = apply(t);
    return out;
}

void Substitution::bind(const Term& var, Term value) {
    Substitution single;
    single.map_.emplace(var_key(var), value);
    for (auto& [k, v] : map_) v = single.apply(v);
    map_[var_key(var)] = std::move(value);
}

std::string to_string(const Substitution& s) {
    std::string out = "{";
    bool first = true;
    for (const auto& [k, v] : s.bindings()) {
        if (!first) out += ", ";
        first = false;
        out += symbol_text(k.first) + "=" + to_string(v);
    }
    return out + "}";
}

namespace {

bool occurs(const Term& var, const Term& t) {
    if (t.is_variable()) return t == var;
    for (const auto& i : t.items())
        if (occurs(var, i)) return true;
    return false;
}

bool unify_into(const Term& a0, const Term& b0, Substitution& s) {
    Term a = s.apply(a0);
    Term b = s.apply(b0);
    if (a == b) return true;
    if (a.is_variable()) {
        if (occurs(a, b)) return false;
        s.bind(a, b);
        return true;
    }
    if (b.is_variable()) return unify_into(b, a, s);
    if (a.is_list() && b.is_list()) {
        auto ai = a.items(), bi = b.items();
        if (ai.size() != bi.size()) return false;
        for (std::size_t i = 0; i < ai.size(); ++i)
            if (!unify_into(ai[i], bi[i], s)) return false;
        return true;
    }
    return false;
}

}  // namespace

std::optional<Substitution> unify(const Term& a, const Term& b) {
    Substitution s;
    if (!unify_into(a, b, s)) return std::nullopt;
    return s;
}

std::optional<Substitution> unify(const Atom& a, const Atom& b) {
    if (a.negated || b.negated || a.key() != b.key()) return std::nullopt;
    Substitution s;
    for (std::size_t i = 0; i < a.args.size(); ++i)
        if (!unify_into(a.args[i], b.args[i], s)) return std::nullopt;
    return s;
}

}  // namespace cogwin::logic
