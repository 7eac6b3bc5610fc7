#pragma once

#include <cogwin/logic/term.hpp>

#include <compare>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace cogwin::logic {

/// Predicate name plus arity.
struct PredKey {
    Symbol name{0};
    std::uint32_t arity{0};

    auto operator<=>(const PredKey&) const = default;
    std::string str() const;
};

struct Atom {
    Symbol predicate{0};
    std::vector<Term> args;
    bool negated{false};

    Atom() = default;
    Atom(std::string_view pred, std::vector<Term> a, bool neg = false)
        : predicate(intern(pred)), args(std::move(a)), negated(neg) {}
    Atom(Symbol pred, std::vector<Term> a, bool neg = false)
        : predicate(pred), args(std::move(a)), negated(neg) {}

    PredKey key() const { return {predicate, static_cast<std::uint32_t>(args.size())}; }
    const std::string& name() const { return symbol_text(predicate); }
    Atom positive() const { return Atom(predicate, args, false); }
    bool is_ground() const;

    friend bool operator==(const Atom& a, const Atom& b) = default;
    friend bool operator<(const Atom& a, const Atom& b);
};

struct Clause {
    Atom head;
    std::vector<Atom> body;

    friend bool operator==(const Clause& a, const Clause& b) = default;
};

class PrimitiveTable;

/// Ordered definite-clause program with a table of built-in predicates.
struct Program {
    std::vector<Clause> clauses;
    std::shared_ptr<const PrimitiveTable> primitives;

    bool is_primitive(PredKey k) const;
    bool defines(PredKey k) const;
    std::vector<const Clause*> clauses_for(PredKey k) const;
    /// Defined (non-primitive) predicates in order of first definition.
    std::vector<PredKey> defined_predicates() const;
    /// Non-primitive predicates reachable from `root` through clause bodies, root included.
    std::vector<PredKey> dependencies(PredKey root) const;
    /// Throws std::invalid_argument when a body predicate is neither defined nor primitive,
    /// when a head is negated, or when a predicate is used with two arities.
    void validate() const;
};

std::string to_string(const Atom& a);
std::string to_string(const Clause& c);
std::string to_string(const Program& p);

/// Variables occurring in the clause, in order of first occurrence.
std::vector<Term> clause_variables(const Clause& c);

/// Finds the predicate named `name` among the program's defined predicates.
std::optional<PredKey> find_predicate(const Program& p, std::string_view name);

}  // namespace cogwin::logic
