#pragma once

#include <cogwin/logic/clause.hpp>

#include <map>
#include <optional>
#include <string>
#include <utility>

namespace cogwin::logic {

using VarKey = std::pair<Symbol, std::uint32_t>;

inline VarKey var_key(const Term& v) { return {v.symbol(), v.var_id()}; }

/// Variable-to-term bindings. Always stored fully applied (idempotent).
class Substitution {
public:
    bool empty() const { return map_.empty(); }
    std::size_t size() const { return map_.size(); }
    const Term* lookup(const Term& var) const;
    /// Lookup by variable name, ignoring ids.
    const Term* lookup(std::string_view name) const;
    void bind(const Term& var, Term value);

    Term apply(const Term& t) const;
    Atom apply(const Atom& a) const;

    const std::map<VarKey, Term>& bindings() const { return map_; }
    friend bool operator==(const Substitution&, const Substitution&) = default;

private:
    std::map<VarKey, Term> map_;
};

std::string to_string(const Substitution& s);

/// Most general unifier of two non-negated atoms (with occurs check).
std::optional<Substitution> unify(const Atom& a, const Atom& b);
std::optional<Substitution> unify(const Term& a, const Term& b);

}  // namespace cogwin::logic
