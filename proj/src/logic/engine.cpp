#include <cogwin/logic/engine.hpp>

#include <algorithm>
#include <map>
#include <utility>

namespace cogwin::logic {

namespace {

using LocalIds = std::map<std::pair<Symbol, std::uint32_t>, std::uint32_t>;

Term renumber_term(const Term& t, LocalIds& ids) {
    switch (t.kind()) {
        case Term::Kind::Variable: {
            auto [it, inserted] = ids.emplace(std::make_pair(t.symbol(), t.var_id()),
                                              static_cast<std::uint32_t>(ids.size()));
            return Term::variable(t.symbol(), it->second);
        }
        case Term::Kind::Constant: return t;
        case Term::Kind::List: {
            if (t.is_ground()) return t;
            std::vector<Term> items;
            for (const auto& i : t.items()) items.push_back(renumber_term(i, ids));
            return Term::list(std::move(items));
        }
    }
    return t;
}

Atom renumber_atom(const Atom& a, LocalIds& ids) {
    Atom out(a.predicate, {}, a.negated);
    out.args.reserve(a.args.size());
    for (const auto& t : a.args) out.args.push_back(renumber_term(t, ids));
    return out;
}

}  // namespace

Clause renumber(const Clause& c, std::uint32_t* nvars) {
    LocalIds ids;
    Clause out;
    out.head = renumber_atom(c.head, ids);
    for (const auto& lit : c.body) out.body.push_back(renumber_atom(lit, ids));
    if (nvars) *nvars = static_cast<std::uint32_t>(ids.size());
    return out;
}

std::string to_string(const TraceEvent& e) {
    switch (e.kind) {
        case TraceEvent::Kind::Call: return "call " + to_string(e.atom);
        case TraceEvent::Kind::Exit: return "exit " + to_string(e.atom);
        case TraceEvent::Kind::Backtrack: return "fail";
        case TraceEvent::Kind::Success: return "true";
    }
    return {};
}

Engine::Engine(const Program& program, EngineOptions opts)
    : prims_(program.primitives.get()), prims_owner_(program.primitives), opts_(std::move(opts)) {
    for (const auto& c : program.clauses) {
        std::uint32_t n = 0;
        Clause r = renumber(c, &n);
        db_[c.head.key()].push_back({std::move(r), n});
    }
    slots_.resize(64);
    top_ = 1;  // slot 0 is never handed out
}

void Engine::push_clause(const Clause& c) {
    std::uint32_t n = 0;
    Clause r = renumber(c, &n);
    auto key = c.head.key();
    db_[key].push_back({std::move(r), n});
    pushed_.push_back(key);
}

void Engine::pop_clause() {
    auto key = pushed_.back();
    pushed_.pop_back();
    auto& defs = db_[key];
    defs.pop_back();
    if (defs.empty()) db_.erase(key);
}

bool Engine::is_defined(PredKey k) const {
    auto it = db_.find(k);
    return it != db_.end() && !it->second.empty();
}

std::uint32_t Engine::alloc(std::uint32_t n) {
    std::uint32_t base = top_;
    top_ += n;
    if (slots_.size() < top_) slots_.resize(std::max<std::size_t>(top_, slots_.size() * 2));
    return base;
}

void Engine::undo(Mark m) {
    while (trail_.size() > m.trail) {
        slots_[trail_.back()] = Slot{};
        trail_.pop_back();
    }
    top_ = m.top;
}

void Engine::bind(std::uint32_t slot, Ref value) {
    slots_[slot] = Slot{value.term, value.base, true};
    trail_.push_back(slot);
}

Ref Engine::walk(Ref r) const {
    while (r.term->is_variable()) {
        const Slot& s = slots_[r.base + r.term->var_id()];
        if (!s.bound) return r;
        r = Ref{s.term, s.base};
    }
    return r;
}

bool Engine::unify(Ref a, Ref b) {
    a = walk(a);
    b = walk(b);
    if (a.term->is_variable()) {
        std::uint32_t ga = a.base + a.term->var_id();
        if (b.term->is_variable() && b.base + b.term->var_id() == ga) return true;
        bind(ga, b);
        return true;
    }
    if (b.term->is_variable()) {
        bind(b.base + b.term->var_id(), a);
        return true;
    }
    if (a.term->kind() != b.term->kind()) return false;
    if (a.term->is_constant()) return a.term->symbol() == b.term->symbol();
    auto ai = a.term->items(), bi = b.term->items();
    if (ai.size() != bi.size()) return false;
    if (ai.data() == bi.data()) return true;
    for (std::size_t i = 0; i < ai.size(); ++i)
        if (!unify(Ref{&ai[i], a.base}, Ref{&bi[i], b.base})) return false;
    return true;
}

bool Engine::unify_args(const Atom& a, std::uint32_t abase, const Atom& b, std::uint32_t bbase) {
    if (a.args.size() != b.args.size()) return false;
    for (std::size_t i = 0; i < a.args.size(); ++i)
        if (!unify(Ref{&a.args[i], abase}, Ref{&b.args[i], bbase})) return false;
    return true;
}

Term Engine::resolve(const Term& t, std::uint32_t base) const {
    Ref r = walk(Ref{&t, base});
    switch (r.term->kind()) {
        case Term::Kind::Variable: return Term::variable(r.term->symbol(), r.base + r.term->var_id());
        case Term::Kind::Constant: return *r.term;
        case Term::Kind::List: {
            if (r.term->is_ground()) return *r.term;
            std::vector<Term> items;
            items.reserve(r.term->items().size());
            for (const auto& i : r.term->items()) items.push_back(resolve(i, r.base));
            return Term::list(std::move(items));
        }
    }
    return *r.term;
}

Atom Engine::resolve(const Atom& a, std::uint32_t base) const {
    Atom out(a.predicate, {}, a.negated);
    out.args.reserve(a.args.size());
    for (const auto& t : a.args) out.args.push_back(resolve(t, base));
    return out;
}

void Engine::reset_counters() {
    steps_ = 0;
    counted_ = 0;
    depth_exceeded_ = false;
}

void Engine::step() {
    ++steps_;
    if (opaque_depth_ == 0) ++counted_;
    if (opts_.max_steps && steps_ > opts_.max_steps)
        throw BudgetExceeded("resolution step budget of " + std::to_string(opts_.max_steps) + " exhausted");
}

void Engine::emit(TraceEvent::Kind kind, const Atom* a, std::uint32_t base) {
    if (!opts_.trace) return;
    opts_.trace->push_back(TraceEvent{kind, a ? resolve(*a, base) : Atom{}});
}

bool Engine::solve(std::span<const Atom> goals, std::uint32_t base, Cont k) {
    return solve_from(goals, 0, base, k);
}

bool Engine::solve_from(std::span<const Atom> goals, std::size_t i, std::uint32_t base, Cont k) {
    if (i == goals.size()) return k();
    return call(goals[i], base, [&]() { return solve_from(goals, i + 1, base, k); });
}

bool Engine::provable(const Atom& goal, std::uint32_t base) {
    Mark m = mark();
    bool found;
    if (auto* fn = prims_ ? prims_->find(goal.key()) : nullptr) {
        found = call_primitive(*fn, goal, base, []() { return true; });
    } else {
        found = call_defined(goal, base, []() { return true; });
    }
    undo(m);
    return found;
}

bool Engine::call(const Atom& goal, std::uint32_t base, Cont k) {
    step();
    if (goal.negated) {
        emit(TraceEvent::Kind::Call, &goal, base);
        if (provable(goal, base)) {
            emit(TraceEvent::Kind::Backtrack, nullptr, 0);
            return false;
        }
        emit(TraceEvent::Kind::Exit, &goal, base);
        return k();
    }
    if (auto* fn = prims_ ? prims_->find(goal.key()) : nullptr) return call_primitive(*fn, goal, base, k);
    return call_defined(goal, base, k);
}

bool Engine::call_primitive(const PrimitiveFn& fn, const Atom& goal, std::uint32_t base, Cont k) {
    emit(TraceEvent::Kind::Call, &goal, base);
    std::vector<Term> args;
    args.reserve(goal.args.size());
    for (const auto& t : goal.args) args.push_back(resolve(t, base));
    const auto tuples = fn(args);
    for (const auto& tuple : tuples) {
        Mark m = mark();
        bool ok = true;
        for (std::size_t i = 0; ok && i < tuple.size(); ++i)
            ok = unify(Ref{&tuple[i], 0}, Ref{&goal.args[i], base});
        if (ok) {
            if (opaque_depth_ == 0) ++counted_;
            emit(TraceEvent::Kind::Exit, &goal, base);
            if (k()) return true;
        }
        undo(m);
    }
    emit(TraceEvent::Kind::Backtrack, nullptr, 0);
    return false;
}

bool Engine::call_defined(const Atom& goal, std::uint32_t base, Cont k) {
    emit(TraceEvent::Kind::Call, &goal, base);
    auto it = db_.find(goal.key());
    if (it == db_.end()) {
        emit(TraceEvent::Kind::Backtrack, nullptr, 0);
        return false;
    }
    const auto& defs = it->second;
    const std::size_t n = defs.size();
    const std::size_t depth0 = depth_;
    const std::size_t opaque0 = opaque_depth_;
    const bool enters_opaque = !opts_.opaque.empty() && opts_.opaque.count(goal.key()) > 0;
    if (depth0 + 1 > opts_.max_depth) {
        depth_exceeded_ = true;
        emit(TraceEvent::Kind::Backtrack, nullptr, 0);
        return false;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const Compiled& c = defs[i];
        Mark m = mark();
        std::uint32_t nb = alloc(c.nvars);
        if (unify_args(c.clause.head, nb, goal, base)) {
            ++steps_;
            depth_ = depth0 + 1;
            opaque_depth_ = opaque0 + (enters_opaque ? 1 : 0);
            auto exit = [&]() {
                std::size_t saved = opaque_depth_;
                opaque_depth_ = opaque0;
                if (opaque_depth_ == 0) ++counted_;
                emit(TraceEvent::Kind::Exit, &goal, base);
                bool stop = k();
                opaque_depth_ = saved;
                return stop;
            };
            bool stop = solve(c.clause.body, nb, exit);
            depth_ = depth0;
            opaque_depth_ = opaque0;
            if (stop) return true;
        }
        undo(m);
    }
    emit(TraceEvent::Kind::Backtrack, nullptr, 0);
    return false;
}

}  // namespace cogwin::logic
