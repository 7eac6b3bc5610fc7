#pragma once

#include <cogwin/logic/clause.hpp>

#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

namespace cogwin::logic {

/// Raised by a primitive when an argument it needs bound is still a variable.
class InstantiationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A built-in predicate. Receives its arguments with all bound variables
/// substituted and returns every argument tuple that satisfies it; the engine
/// unifies each tuple with the call.
using PrimitiveFn = std::function<std::vector<std::vector<Term>>(std::span<const Term> args)>;

class PrimitiveTable {
public:
    void add(std::string_view name, std::uint32_t arity, PrimitiveFn fn);
    const PrimitiveFn* find(PredKey key) const;
    bool contains(PredKey key) const { return find(key) != nullptr; }
    /// Keys in registration order.
    const std::vector<PredKey>& keys() const { return order_; }
    /// Copy restricted to the named predicates.
    PrimitiveTable restricted(std::span<const PredKey> keep) const;

private:
    std::map<PredKey, PrimitiveFn> fns_;
    std::vector<PredKey> order_;
};

}  // namespace cogwin::logic
