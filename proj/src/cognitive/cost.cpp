#include <cogwin/cognitive/cost.hpp>

#include <cogwin/logic/primitives.hpp>
#include <cogwin/logic/unify.hpp>

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <unordered_map>

namespace cogwin::cognitive {

using logic::Atom;
using logic::Clause;
using logic::Program;
using logic::Substitution;
using logic::Term;

std::int64_t term_cost(const Term& t) {
    switch (t.kind()) {
        case Term::Kind::Variable: return 1;
        case Term::Kind::Constant: return static_cast<std::int64_t>(t.text().size());
        case Term::Kind::List: {
            std::int64_t sum = 0;
            for (const auto& i : t.items()) sum += term_cost(i);
            return sum;
        }
    }
    return 0;
}

std::int64_t term_cost(const Atom& a) {
    std::int64_t sum = 1;
    for (const auto& t : a.args) sum += term_cost(t);
    return sum;
}

namespace {

// Persistent concatenation tree so stacks can be shared between memo entries.
struct Node;
using Rope = std::shared_ptr<const Node>;
struct Node {
    std::optional<StackEntry> leaf;
    Rope left, right;
};

Rope leaf(StackEntry e) { return std::make_shared<const Node>(Node{std::move(e), nullptr, nullptr}); }

Rope concat(Rope a, Rope b) {
    if (!a) return b;
    if (!b) return a;
    return std::make_shared<const Node>(Node{std::nullopt, std::move(a), std::move(b)});
}

std::vector<StackEntry> flatten(const Rope& r) {
    std::vector<StackEntry> out;
    std::vector<const Node*> todo;
    if (r) todo.push_back(r.get());
    while (!todo.empty()) {
        const Node* n = todo.back();
        todo.pop_back();
        if (n->leaf) {
            out.push_back(*n->leaf);
            continue;
        }
        if (n->right) todo.push_back(n->right.get());
        if (n->left) todo.push_back(n->left.get());
    }
    return out;
}

struct Path {
    std::int64_t cost = 0;
    Rope stack;
};

Path operator+(const Path& a, const Path& b) { return {a.cost + b.cost, concat(a.stack, b.stack)}; }

Path atom_entry(const Atom& a) { return {term_cost(a), leaf({EntryKind::Atom, logic::to_string(a), term_cost(a)})}; }
Path backtrack() { return {1, leaf({EntryKind::Backtrack, "fail", 1})}; }
Path exit_entry() { return {1, leaf({EntryKind::Exit, "true", 1})}; }

struct AtomResult {
    Atom goal;  // the goal first evaluated; answers use its variables
    std::vector<std::pair<Atom, Path>> answers;
    Path exhaust;
};

struct ConjAnswer {
    Substitution subst;
    Path best;
};

struct ConjResult {
    std::vector<ConjAnswer> answers;
    Path exhaust;
};

class Evaluator {
public:
    Evaluator(const Program& p, std::size_t max_depth) : p_(p), max_depth_(max_depth) {}

    // Answers and costs of a goal, expressed over that goal's own variables.
    std::vector<std::pair<Atom, Path>> answers_for(const Atom& g, Path* exhaust) {
        const AtomResult& r = eval(g);
        *exhaust = r.exhaust;
        if (r.goal == g) return r.answers;
        std::map<logic::VarKey, Term> ren;
        auto from = variables(r.goal), to = variables(g);
        for (std::size_t i = 0; i < from.size(); ++i) ren.emplace(logic::var_key(from[i]), to[i]);
        std::vector<std::pair<Atom, Path>> out;
        for (const auto& [a, path] : r.answers) {
            Atom b = a;
            for (auto& t : b.args) t = rename(t, ren);
            out.emplace_back(std::move(b), path);
        }
        return out;
    }

    ConjResult conj(const std::vector<Atom>& goals, std::size_t i, const Substitution& s) {
        ConjResult out;
        if (i == goals.size()) {
            out.answers.push_back({s, {}});
            return out;
        }
        Atom lit = s.apply(goals[i]);
        Path sub_exhaust;
        if (lit.negated) {
            auto inner = answers_for(lit.positive(), &sub_exhaust);
            if (!inner.empty()) {
                // The cheapest proof of the negated goal, then failure.
                const Path* cheapest = &inner.front().second;
                for (const auto& [a, path] : inner)
                    if (path.cost < cheapest->cost) cheapest = &path;
                out.exhaust = *cheapest + backtrack();
                return out;
            }
            ConjResult rest = conj(goals, i + 1, s);
            for (auto& c : rest.answers) out.answers.push_back({std::move(c.subst), sub_exhaust + c.best});
            out.exhaust = sub_exhaust + rest.exhaust;
            return out;
        }
        auto answers = answers_for(lit, &sub_exhaust);
        out.exhaust = sub_exhaust;
        for (const auto& [a, path] : answers) {
            auto mu = logic::unify(lit, a);
            if (!mu) continue;
            Substitution next = s;
            for (const auto& [k, v] : mu->bindings()) next.bind(Term::variable(k.first, k.second), v);
            ConjResult rest = conj(goals, i + 1, next);
            for (auto& c : rest.answers) out.answers.push_back({std::move(c.subst), path + c.best});
            out.exhaust = out.exhaust + rest.exhaust;
        }
        return out;
    }

private:
    static std::vector<Term> variables(const Atom& a) {
        std::vector<Term> out;
        std::vector<Term> todo(a.args.rbegin(), a.args.rend());
        while (!todo.empty()) {
            Term t = todo.back();
            todo.pop_back();
            if (t.is_variable()) {
                if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
            } else if (t.is_list()) {
                auto items = t.items();
                for (auto it = items.rbegin(); it != items.rend(); ++it) todo.push_back(*it);
            }
        }
        return out;
    }

    static std::string variant_key(const Atom& g) {
        Substitution s;
        auto vars = variables(g);
        for (std::size_t i = 0; i < vars.size(); ++i) s.bind(vars[i], Term::variable("_V" + std::to_string(i), 0));
        return logic::to_string(s.apply(g));
    }

    static Term rename(const Term& t, const std::map<logic::VarKey, Term>& ren) {
        if (t.is_variable()) {
            auto it = ren.find(logic::var_key(t));
            return it == ren.end() ? t : it->second;
        }
        if (!t.is_list()) return t;
        std::vector<Term> items;
        for (const auto& i : t.items()) items.push_back(rename(i, ren));
        return Term::list(std::move(items));
    }

    const AtomResult& eval(const Atom& g) {
        std::string key = variant_key(g);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        if (++depth_ > max_depth_) throw CostError("depth cap exceeded at " + logic::to_string(g));
        AtomResult r;
        r.goal = g;
        const Path call = atom_entry(g);
        Path exhaust = call;
        std::map<std::string, std::size_t> seen;
        auto add_answer = [&](const Atom& ans, const Path& path) {
            exhaust = exhaust + atom_entry(ans);
            auto text = logic::to_string(ans);
            auto [it, fresh] = seen.emplace(text, r.answers.size());
            if (fresh) r.answers.emplace_back(ans, path);
            else if (path.cost < r.answers[it->second].second.cost) r.answers[it->second].second = path;
        };
        if (const auto* fn = p_.primitives ? p_.primitives->find(g.key()) : nullptr) {
            std::vector<std::vector<Term>> tuples;
            try {
                tuples = (*fn)(g.args);
            } catch (const logic::InstantiationError& e) {
                throw CostError(e.what());
            }
            for (auto& tuple : tuples) {
                Atom a(g.predicate, std::move(tuple));
                auto mu = logic::unify(g, a);
                if (!mu) continue;
                Atom ans = mu->apply(g);
                add_answer(ans, call + atom_entry(ans));
            }
        } else {
            for (const Clause* c : p_.clauses_for(g.key())) {
                Substitution fresh;
                for (const auto& v : logic::clause_variables(*c)) fresh.bind(v, Term::variable(v.symbol(), ++next_id_));
                auto theta = logic::unify(fresh.apply(c->head), g);
                if (!theta) continue;
                std::vector<Atom> body;
                for (const auto& b : c->body) body.push_back(fresh.apply(b));
                ConjResult res = conj(body, 0, *theta);
                exhaust = exhaust + res.exhaust;
                for (const auto& a : res.answers) {
                    Atom ans = a.subst.apply(g);
                    add_answer(ans, call + a.best + atom_entry(ans));
                }
            }
        }
        r.exhaust = exhaust + backtrack();
        --depth_;
        return memo_.emplace(std::move(key), std::move(r)).first->second;
    }

    const Program& p_;
    std::size_t max_depth_;
    std::size_t depth_ = 0;
    std::uint32_t next_id_ = 1u << 20;
    std::unordered_map<std::string, AtomResult> memo_;
};

}  // namespace

CostReport cog(const Program& p, const Atom& q, std::size_t max_depth) {
    Evaluator ev(p, max_depth);
    Path exhaust;
    auto answers = ev.answers_for(q, &exhaust);
    CostReport out;
    out.query = q;
    Path chosen = exhaust;
    if (!answers.empty()) {
        const Path* best = &answers.front().second;
        for (const auto& [a, path] : answers)
            if (path.cost < best->cost) best = &path;
        chosen = *best + exit_entry();
        out.answered = true;
    }
    out.total = chosen.cost;
    out.stack = flatten(chosen.stack);
    return out;
}

}  // namespace cogwin::cognitive
