#pragma once

#include <cogwin/logic/clause.hpp>
#include <cogwin/logic/function_ref.hpp>
#include <cogwin/logic/primitives.hpp>

#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <vector>

namespace cogwin::logic {

struct TraceEvent {
    enum class Kind : std::uint8_t { Call, Exit, Backtrack, Success };
    Kind kind;
    Atom atom;  // empty for Backtrack and Success
};

std::string to_string(const TraceEvent& e);

/// Thrown when the step budget of an engine is exhausted.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct EngineOptions {
    std::size_t max_depth = 512;
    /// Total resolution steps allowed; 0 means unlimited.
    std::uint64_t max_steps = 0;
    /// When set, every call, exit and backtrack is appended here.
    std::vector<TraceEvent>* trace = nullptr;
    /// Predicates executed as black boxes for step counting (see counted_steps()).
    std::set<PredKey> opaque;
};

/// A term inside a clause template, paired with the offset that renames the
/// template's local variables apart. Base 0 means variable ids are global.
struct Ref {
    const Term* term;
    std::uint32_t base;
};

/// SLD resolution with negation as finite failure, written in continuation
/// passing style over a trailed binding store. Clause templates are shared,
/// never copied, during resolution.
///
/// Continuations return true to stop the search.
class Engine {
public:
    using Cont = FunctionRef<bool()>;

    explicit Engine(const Program& program, EngineOptions opts = {});
    Engine(const Engine&) = delete;
    Engine& operator=(const Engine&) = delete;

    /// Appends a clause to its predicate's definition.
    void push_clause(const Clause& c);
    /// Removes the most recently pushed clause.
    void pop_clause();

    bool is_primitive(PredKey k) const { return prims_ && prims_->contains(k); }
    bool is_defined(PredKey k) const;
    const PrimitiveTable* primitives() const { return prims_; }

    /// Reserves `n` fresh variable slots and returns their base.
    std::uint32_t alloc(std::uint32_t n);

    struct Mark {
        std::size_t trail;
        std::uint32_t top;
    };
    Mark mark() const { return {trail_.size(), top_}; }
    void undo(Mark m);

    Ref walk(Ref r) const;
    bool unify(Ref a, Ref b);
    bool unify_args(const Atom& a, std::uint32_t abase, const Atom& b, std::uint32_t bbase);
    Term resolve(const Term& t, std::uint32_t base) const;
    Atom resolve(const Atom& a, std::uint32_t base) const;

    bool solve(std::span<const Atom> goals, std::uint32_t base, Cont k);
    bool call(const Atom& goal, std::uint32_t base, Cont k);
    /// True when the positive form of `goal` has at least one proof. Bindings are left untouched.
    bool provable(const Atom& goal, std::uint32_t base);

    std::uint64_t steps() const { return steps_; }
    std::uint64_t counted_steps() const { return counted_; }
    bool depth_exceeded() const { return depth_exceeded_; }
    void reset_counters();

private:
    struct Compiled {
        Clause clause;  // variables renumbered 0..nvars-1
        std::uint32_t nvars;
    };
    struct Slot {
        const Term* term = nullptr;
        std::uint32_t base = 0;
        bool bound = false;
    };

    bool solve_from(std::span<const Atom> goals, std::size_t i, std::uint32_t base, Cont k);
    bool call_primitive(const PrimitiveFn& fn, const Atom& goal, std::uint32_t base, Cont k);
    bool call_defined(const Atom& goal, std::uint32_t base, Cont k);
    void step();
    void emit(TraceEvent::Kind kind, const Atom* a, std::uint32_t base);
    void bind(std::uint32_t slot, Ref value);

    const PrimitiveTable* prims_;
    std::shared_ptr<const PrimitiveTable> prims_owner_;
    std::map<PredKey, std::deque<Compiled>> db_;
    std::vector<PredKey> pushed_;
    EngineOptions opts_;

    std::vector<Slot> slots_;
    std::vector<std::uint32_t> trail_;
    std::uint32_t top_ = 0;

    std::size_t depth_ = 0;
    std::size_t opaque_depth_ = 0;
    std::uint64_t steps_ = 0;
    std::uint64_t counted_ = 0;
    bool depth_exceeded_ = false;
};

/// Renumbers the clause's variables to ids 0..n-1 in order of first occurrence.
Clause renumber(const Clause& c, std::uint32_t* nvars = nullptr);

}  // namespace cogwin::logic
