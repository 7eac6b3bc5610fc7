#pragma once

#include <cogwin/logic/clause.hpp>

#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cogwin::mil {

/// Second-order clause template. Predicate positions may hold existential
/// variables; other existential variables are curried argument slots that are
/// bound to constants when the template is instantiated.
struct Metarule {
    std::string id;
    logic::Clause tmpl;
    std::set<logic::Symbol> predicate_vars;
    std::set<logic::Symbol> curried_vars;

    std::size_t body_size() const { return tmpl.body.size(); }
    bool is_predicate_var(logic::Symbol s) const { return predicate_vars.count(s) > 0; }
    bool is_curried(const logic::Term& t) const;
    std::string str() const;
};

/// Parses `metarule <id> [P,Q,R,S,T]: P(A) :- Q(A,S,T), R(A).`
/// The bracketed list names every existential variable.
Metarule parse_metarule(std::string_view text);
/// One metarule per line; blank lines and `%` comments are skipped.
std::vector<Metarule> parse_metarules(std::string_view text);

/// Id of the first metarule the clause instantiates, if any.
std::optional<std::string> matching_metarule(const logic::Clause& c, std::span<const Metarule> metarules);
bool fits_any_metarule(const logic::Clause& c, std::span<const Metarule> metarules);

}  // namespace cogwin::mil
