#include <cogwin/mil/learn.hpp>

#include <cogwin/logic/engine.hpp>
#include <cogwin/logic/primitives.hpp>

#include <algorithm>
#include <deque>
#include <map>

namespace cogwin::mil {

using logic::Atom;
using logic::BudgetExceeded;
using logic::Clause;
using logic::Engine;
using logic::PredKey;
using logic::Program;
using logic::Symbol;
using logic::Term;

Program Hypothesis::with(const Program& background) const {
    Program p = background;
    p.clauses.insert(p.clauses.end(), program.clauses.begin(), program.clauses.end());
    return p;
}

std::string to_string(LearnStatus s) {
    switch (s) {
        case LearnStatus::Found: return "found";
        case LearnStatus::NoHypothesis: return "no hypothesis";
        case LearnStatus::BudgetExceeded: return "budget exceeded";
    }
    return {};
}

namespace {

struct Template {
    const Metarule* rule;
    Clause clause;  // renumbered
    std::uint32_t nvars = 0;
    std::map<Symbol, std::uint32_t> curried_ids;
};

struct Entry {
    Clause clause;
    Clause compiled;
    std::uint32_t nvars;
    std::string metarule;
};

struct Partial {
    const Template* tmpl;
    std::map<Symbol, Symbol> preds;
    Symbol root;
};

class Search {
public:
    Search(const LearningTask& task, std::size_t cap, std::uint64_t budget, std::size_t collect)
        : task_(task), cap_(cap), budget_(budget), collect_(collect), eng_(task.background, engine_options(budget)) {
        for (const auto& m : task.metarules) {
            Template t;
            t.rule = &m;
            t.clause = logic::renumber(m.tmpl, &t.nvars);
            for (const auto& v : logic::clause_variables(t.clause))
                if (m.curried_vars.count(v.symbol())) t.curried_ids[v.symbol()] = v.var_id();
            templates_.push_back(std::move(t));
        }
        for (const auto* set : {&task.positives, &task.negatives})
            for (const auto& a : *set) hyp_[a.key()] = a.predicate, targets_.insert(a.key());
        background_preds_ = task.background.defined_predicates();
        if (task.background.primitives) primitive_preds_ = task.background.primitives->keys();
        for (const auto& m : task.metarules)
            for (const auto& b : m.tmpl.body) monotone_ = monotone_ && !b.negated;
        for (const auto& t : templates_) head_arities_.insert(static_cast<std::uint32_t>(t.clause.head.args.size()));
    }

    /// Runs the search; true when it stopped early (found or cap reached).
    bool run() { return prove_examples(0); }

    std::vector<Hypothesis> found;
    std::uint64_t enumerated = 0;
    std::uint64_t nodes() const { return meta_steps_ + eng_.steps(); }

private:
    static logic::EngineOptions engine_options(std::uint64_t budget) {
        logic::EngineOptions o;
        o.max_steps = budget;
        return o;
    }

    void tick() {
        ++meta_steps_;
        if (meta_steps_ + eng_.steps() > budget_) throw BudgetExceeded("node budget exhausted");
    }

    bool prove_examples(std::size_t i) {
        if (i == task_.positives.size()) return complete();
        return prove(task_.positives[i], 0, 0, [&]() {
            // Without negation in the metarules, adding clauses never retracts a
            // consequence, so a covered negative rules out every extension.
            if (monotone_ && i + 1 < task_.positives.size() && covers_negative()) return false;
            return prove_examples(i + 1);
        });
    }

    bool covers_negative() {
        for (const auto& neg : task_.negatives)
            if (eng_.provable(neg, 0)) return true;
        return false;
    }

    bool has_clauses(PredKey k) const {
        return std::any_of(h_.begin(), h_.end(), [&](const Entry& e) { return e.clause.head.key() == k; });
    }

    bool prove(const Atom& goal, std::uint32_t base, std::size_t depth, Engine::Cont k) {
        tick();
        if (depth > task_.max_meta_depth) return false;
        if (goal.negated) {
            if (eng_.provable(goal, base)) return false;
            return k();
        }
        const PredKey key = goal.key();
        auto hp = hyp_.find(key);
        if (hp == hyp_.end()) return eng_.call(goal, base, k);

        const std::size_t n = h_.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Entry& e = h_[i];
            if (e.clause.head.key() != key) continue;
            auto m = eng_.mark();
            std::uint32_t nb = eng_.alloc(e.nvars);
            if (eng_.unify_args(e.compiled.head, nb, goal, base) &&
                prove_body(e.compiled.body, 0, nb, depth + 1, k))
                return true;
            eng_.undo(m);
        }

        if (h_.size() + pending_ >= cap_) return false;
        for (const auto& t : templates_) {
            if (t.clause.head.args.size() != goal.args.size()) continue;
            auto m = eng_.mark();
            std::uint32_t nb = eng_.alloc(t.nvars);
            if (eng_.unify_args(t.clause.head, nb, goal, base)) {
                Partial p{&t, {{t.clause.head.predicate, key.name}}, hp->second};
                ++pending_;
                bool stop = build(p, 0, nb, depth + 1, k);
                --pending_;
                if (stop) return true;
            }
            eng_.undo(m);
        }
        return false;
    }

    bool prove_body(const std::vector<Atom>& body, std::size_t i, std::uint32_t base, std::size_t depth,
                    Engine::Cont k) {
        if (i == body.size()) return k();
        return prove(body[i], base, depth, [&]() { return prove_body(body, i + 1, base, depth, k); });
    }

    std::vector<std::pair<Symbol, bool>> candidates(const Atom& lit, const Partial& p) {
        const auto arity = static_cast<std::uint32_t>(lit.args.size());
        const Symbol self = p.preds.at(p.tmpl->clause.head.predicate);
        std::vector<std::pair<Symbol, bool>> out;
        auto add = [&](PredKey k) {
            if (k.arity == arity) out.emplace_back(k.name, false);
        };
        if (lit.negated) {
            // Negation only over predicates that already have a definition.
            for (const auto& k : background_preds_) add(k);
            for (const auto& [k, root] : hyp_)
                if (!targets_.count(k) && k.name != self && has_clauses(k)) add(k);
            return out;
        }
        for (const auto& k : primitive_preds_) add(k);
        for (const auto& k : background_preds_) add(k);
        for (const auto& [k, root] : hyp_) {
            if (k.name == self || !has_clauses(k)) continue;
            if (targets_.count(k) && !task_.allow_recursion) continue;
            add(k);
        }
        if (head_arities_.count(arity) && h_.size() + pending_ < cap_) out.emplace_back(Symbol{0}, true);
        return out;
    }

    bool build(Partial& p, std::size_t i, std::uint32_t nb, std::size_t depth, Engine::Cont k) {
        const auto& body = p.tmpl->clause.body;
        if (i == body.size()) return finalize(p, nb, k);
        const Atom& lit = body[i];
        const Metarule& rule = *p.tmpl->rule;

        auto attempt = [&](Symbol name) {
            Atom goal(name, lit.args, lit.negated);
            return prove(goal, nb, depth, [&]() { return curried_ok(lit, p, nb) && build(p, i + 1, nb, depth, k); });
        };

        if (!rule.is_predicate_var(lit.predicate)) return attempt(lit.predicate);
        if (auto it = p.preds.find(lit.predicate); it != p.preds.end()) return attempt(it->second);

        for (auto [name, fresh] : candidates(lit, p)) {
            PredKey invented_key{};
            if (fresh) {
                int& counter = invent_count_[p.root];
                name = logic::intern(logic::symbol_text(p.root) + "_" + std::to_string(++counter));
                invented_key = PredKey{name, static_cast<std::uint32_t>(lit.args.size())};
                if (hyp_.count(invented_key)) {
                    --counter;
                    continue;
                }
                hyp_[invented_key] = p.root;
                invented_.push_back(invented_key);
            }
            p.preds[lit.predicate] = name;
            bool stop = attempt(name);
            p.preds.erase(lit.predicate);
            if (fresh) {
                hyp_.erase(invented_key);
                invented_.pop_back();
                --invent_count_[p.root];
            }
            if (stop) return true;
        }
        return false;
    }

    bool curried_ok(const Atom& lit, const Partial& p, std::uint32_t nb) const {
        for (const auto& a : lit.args) {
            if (!p.tmpl->rule->is_curried(a)) continue;
            Term v = eng_.resolve(a, nb);
            if (!v.is_constant()) return false;
            if (std::find(task_.constant_pool.begin(), task_.constant_pool.end(), v) == task_.constant_pool.end())
                return false;
        }
        return true;
    }

    Term instantiate(const Term& t, const Partial& p, std::uint32_t nb) const {
        if (p.tmpl->rule->is_curried(t)) {
            auto id = p.tmpl->curried_ids.at(t.symbol());
            return eng_.resolve(Term::variable(t.symbol(), id), nb);
        }
        return t;
    }

    Atom instantiate(const Atom& a, const Partial& p, std::uint32_t nb) const {
        Symbol name = p.tmpl->rule->is_predicate_var(a.predicate) ? p.preds.at(a.predicate) : a.predicate;
        Atom out(name, {}, a.negated);
        for (const auto& t : a.args) out.args.push_back(instantiate(t, p, nb));
        return out;
    }

    bool finalize(const Partial& p, std::uint32_t nb, Engine::Cont k) {
        const Clause& src = p.tmpl->rule->tmpl;
        Clause c{instantiate(src.head, p, nb), {}};
        for (const auto& b : src.body) {
            Atom a = instantiate(b, p, nb);
            if (!task_.allow_duplicate_literals && std::find(c.body.begin(), c.body.end(), a) != c.body.end())
                return false;
            c.body.push_back(std::move(a));
        }
        for (const auto& e : h_)
            if (e.clause == c) return false;
        ++enumerated;
        std::uint32_t nvars = 0;
        Clause compiled = logic::renumber(c, &nvars);
        h_.push_back({c, std::move(compiled), nvars, p.tmpl->rule->id});
        eng_.push_clause(c);
        --pending_;
        bool stop = k();
        ++pending_;
        eng_.pop_clause();
        h_.pop_back();
        return stop;
    }

    bool complete() {
        if (covers_negative()) return false;
        for (const auto& pos : task_.positives)
            if (!eng_.provable(pos, 0)) return false;
        // Clauses grouped by predicate: targets first, then invented predicates
        // in order of invention.
        std::map<PredKey, std::size_t> rank;
        for (const auto* set : {&task_.positives, &task_.negatives})
            for (const auto& a : *set) rank.emplace(a.key(), rank.size());
        for (const auto& k : invented_) rank.emplace(k, rank.size());
        std::vector<const Entry*> order;
        for (const auto& e : h_) order.push_back(&e);
        std::stable_sort(order.begin(), order.end(), [&](const Entry* a, const Entry* b) {
            return rank[a->clause.head.key()] < rank[b->clause.head.key()];
        });
        Hypothesis h;
        h.program.primitives = task_.background.primitives;
        for (const auto* e : order) {
            h.program.clauses.push_back(e->clause);
            h.metarule_trace.push_back(e->metarule);
        }
        h.invented.insert(invented_.begin(), invented_.end());
        if (task_.accept && !task_.accept(h.with(task_.background))) return false;
        const std::string text = h.str();
        for (const auto& f : found)
            if (f.str() == text) return false;
        found.push_back(std::move(h));
        return found.size() >= collect_;
    }

    const LearningTask& task_;
    std::size_t cap_;
    std::uint64_t budget_;
    std::size_t collect_;
    Engine eng_;
    std::vector<Template> templates_;
    std::deque<Entry> h_;
    std::size_t pending_ = 0;
    std::map<PredKey, Symbol> hyp_;
    std::set<PredKey> targets_;
    std::vector<PredKey> background_preds_;
    std::vector<PredKey> primitive_preds_;
    std::set<std::uint32_t> head_arities_;
    std::map<Symbol, int> invent_count_;
    std::vector<PredKey> invented_;
    std::uint64_t meta_steps_ = 0;
    bool monotone_ = true;
};

template <class Result>
void deepen(const LearningTask& task, std::size_t collect, Result& out, std::vector<Hypothesis>& hyps,
            std::vector<std::uint64_t>* per_level) {
    std::uint64_t used = 0;
    try {
        for (std::size_t n = 0; n <= task.max_clauses; ++n) {
            out.depth = n;
            Search s(task, n, task.node_budget - used, collect);
            try {
                s.run();
            } catch (const BudgetExceeded&) {
                used += s.nodes();
                if (per_level) per_level->push_back(s.enumerated);
                throw;
            }
            used += s.nodes();
            if (per_level) per_level->push_back(s.enumerated);
            if (!s.found.empty()) {
                hyps = std::move(s.found);
                out.status = LearnStatus::Found;
                break;
            }
        }
    } catch (const BudgetExceeded&) {
        out.status = LearnStatus::BudgetExceeded;
    }
    out.nodes = used;
}

}  // namespace

LearnResult learn(const LearningTask& task) {
    LearnResult r;
    std::vector<Hypothesis> hyps;
    deepen(task, 1, r, hyps, &r.clauses_enumerated);
    if (!hyps.empty()) r.hypothesis = std::move(hyps.front());
    return r;
}

CandidateResult learn_candidates(const LearningTask& task, std::size_t cap) {
    CandidateResult r;
    deepen(task, cap, r, r.candidates, nullptr);
    return r;
}

std::uint64_t probe_cost(const Program& program, std::span<const Atom> probes, const std::set<PredKey>& opaque) {
    logic::EngineOptions opts;
    opts.opaque = opaque;
    Engine eng(program, opts);
    for (const auto& q : probes) {
        std::uint32_t n = 0;
        Clause local = logic::renumber(Clause{q, {}}, &n);
        auto m = eng.mark();
        std::uint32_t base = eng.alloc(n);
        eng.call(local.head, base, []() { return false; });
        eng.undo(m);
    }
    return eng.counted_steps();
}

const Hypothesis& select_efficient(std::span<const Hypothesis> candidates, std::span<const Atom> probes,
                                   const Program& background) {
    if (candidates.empty()) throw std::invalid_argument("select_efficient needs at least one candidate");
    const Hypothesis* best = nullptr;
    std::uint64_t best_cost = 0;
    for (const auto& h : candidates) {
        std::set<PredKey> opaque;
        for (const auto& k : background.defined_predicates())
            if (!h.program.defines(k)) opaque.insert(k);
        std::uint64_t cost = probe_cost(h.with(background), probes, opaque);
        if (!best || cost < best_cost ||
            (cost == best_cost && h.program.clauses.size() < best->program.clauses.size())) {
            best = &h;
            best_cost = cost;
        }
    }
    return *best;
}

}  // namespace cogwin::mil
