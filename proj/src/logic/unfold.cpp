#include <cogwin/logic/unfold.hpp>

#include <cogwin/logic/primitives.hpp>
#include <cogwin/logic/solve.hpp>
#include <cogwin/logic/unify.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>

namespace cogwin::logic {

namespace {

struct Use {
    std::size_t clause;
    std::size_t literal;
};

std::map<PredKey, std::vector<Use>> uses_of(const Program& p) {
    std::map<PredKey, std::vector<Use>> uses;
    for (std::size_t c = 0; c < p.clauses.size(); ++c)
        for (std::size_t l = 0; l < p.clauses[c].body.size(); ++l)
            uses[p.clauses[c].body[l].key()].push_back({c, l});
    return uses;
}

void dedupe(Clause& c) {
    std::vector<Atom> body;
    for (auto& lit : c.body)
        if (std::find(body.begin(), body.end(), lit) == body.end()) body.push_back(std::move(lit));
    c.body = std::move(body);
}

// Variables of `c` renamed so they cannot clash with names used in `host`.
Clause rename_apart(const Clause& c, const Clause& host) {
    std::set<std::string> taken;
    for (const auto& v : clause_variables(host)) taken.insert(v.text());
    Substitution s;
    int n = 0;
    for (const auto& v : clause_variables(c)) {
        std::string name;
        do name = "V" + std::to_string(n++);
        while (taken.count(name));
        taken.insert(name);
        s.bind(v, Term::variable(name));
    }
    Clause out{s.apply(c.head), {}};
    for (const auto& lit : c.body) out.body.push_back(s.apply(lit));
    return out;
}

std::optional<Clause> inline_at(const Clause& host, std::size_t lit, const Clause& def) {
    Clause fresh = rename_apart(def, host);
    auto mgu = unify(host.body[lit].positive(), fresh.head);
    if (!mgu) return std::nullopt;
    Clause out{mgu->apply(host.head), {}};
    for (std::size_t i = 0; i < host.body.size(); ++i) {
        if (i == lit) {
            for (const auto& b : fresh.body) out.body.push_back(mgu->apply(b));
        } else {
            out.body.push_back(mgu->apply(host.body[i]));
        }
    }
    return out;
}

std::string letter_name(int k) {
    std::string name;
    do {
        name.insert(name.begin(), static_cast<char>('A' + k % 26));
        k = k / 26 - 1;
    } while (k >= 0);
    return name;
}

Clause rename(const Clause& c, const std::function<std::string(int)>& namer) {
    Substitution s;
    int n = 0;
    for (const auto& v : clause_variables(c)) s.bind(v, Term::variable(namer(n++)));
    Clause out{s.apply(c.head), {}};
    for (const auto& b : c.body) out.body.push_back(s.apply(b));
    return out;
}

// Canonical variable names A, B, C... in order of first occurrence. Goes through
// temporary names so existing letters are never captured.
Clause tidy(const Clause& c) {
    Clause mid = rename(c, [](int k) { return "_T" + std::to_string(k); });
    return rename(mid, letter_name);
}

bool inline_pass(Program& p, const std::set<PredKey>& fixed, const UnfoldOptions& opts) {
    auto uses = uses_of(p);
    for (const auto& key : p.defined_predicates()) {
        if (fixed.count(key)) continue;
        auto defs = p.clauses_for(key);
        auto it = uses.find(key);
        if (defs.size() != 1 || it == uses.end() || it->second.size() != 1) continue;
        Use u = it->second.front();
        const Clause& host = p.clauses[u.clause];
        if (host.head.key() == key) continue;
        if (host.body[u.literal].negated)
            throw UnfoldError("cannot unfold negated literal " + to_string(host.body[u.literal]) + " in " +
                              to_string(host));
        auto merged = inline_at(host, u.literal, *defs.front());
        if (!merged) continue;
        dedupe(*merged);
        *merged = tidy(*merged);
        if (opts.admissible && !opts.admissible(*merged)) continue;
        const Clause* def = defs.front();
        p.clauses[u.clause] = std::move(*merged);
        p.clauses.erase(std::find_if(p.clauses.begin(), p.clauses.end(),
                                     [&](const Clause& c) { return &c == def; }));
        return true;
    }
    return false;
}

using AnswerSets = std::vector<std::vector<std::string>>;

std::optional<AnswerSets> answer_sets(const Program& p, std::span<const PredKey> roots, const UnfoldOptions& opts) {
    AnswerSets out;
    SolveLimits lim;
    lim.max_depth = opts.max_depth;
    lim.trace = false;
    for (const auto& root : roots) {
        for (const auto& d : opts.domain) {
            std::vector<Term> args{d};
            for (std::uint32_t i = 1; i < root.arity; ++i) args.push_back(Term::variable("Q" + std::to_string(i)));
            Atom q(root.name, std::move(args));
            std::vector<std::string> row;
            try {
                auto r = solve(p, q, lim);
                if (r.status == SolveStatus::DepthCapExceeded) return std::nullopt;
                for (const auto& s : r.solutions) {
                    Atom a = s.bindings.apply(q);
                    if (!a.is_ground()) return std::nullopt;
                    row.push_back(to_string(a));
                }
            } catch (const InstantiationError&) {
                return std::nullopt;
            }
            std::sort(row.begin(), row.end());
            row.erase(std::unique(row.begin(), row.end()), row.end());
            out.push_back(std::move(row));
        }
    }
    return out;
}

void drop_unreferenced(Program& p, const std::set<PredKey>& fixed) {
    for (bool changed = true; changed;) {
        changed = false;
        auto uses = uses_of(p);
        for (auto it = p.clauses.begin(); it != p.clauses.end(); ++it) {
            auto key = it->head.key();
            if (fixed.count(key) || uses.count(key)) continue;
            p.clauses.erase(std::remove_if(p.clauses.begin(), p.clauses.end(),
                                           [&](const Clause& c) { return c.head.key() == key; }),
                            p.clauses.end());
            changed = true;
            break;
        }
    }
}

}  // namespace

Program unfold_reduce(const Program& input, std::span<const PredKey> roots, const UnfoldOptions& opts) {
    Program p = input;
    std::set<PredKey> fixed(opts.keep.begin(), opts.keep.end());
    fixed.insert(roots.begin(), roots.end());

    while (inline_pass(p, fixed, opts)) {
    }
    for (auto& c : p.clauses) dedupe(c);

    if (!opts.domain.empty()) {
        std::vector<PredKey> checked(roots.begin(), roots.end());
        auto baseline = answer_sets(p, checked, opts);
        if (baseline) {
            for (std::size_t c = 0; c < p.clauses.size(); ++c) {
                for (std::size_t l = 0; l < p.clauses[c].body.size();) {
                    Program trial = p;
                    trial.clauses[c].body.erase(trial.clauses[c].body.begin() + static_cast<std::ptrdiff_t>(l));
                    auto got = answer_sets(trial, checked, opts);
                    if (got && *got == *baseline) {
                        p = std::move(trial);
                    } else {
                        ++l;
                    }
                }
            }
        }
    }
    drop_unreferenced(p, fixed);
    return p;
}

std::size_t dependency_closure_size(const Program& p, PredKey root) {
    if (!p.defines(root)) throw std::invalid_argument("unknown root " + root.str());
    std::size_t n = 0;
    for (const auto& k : p.dependencies(root)) n += p.clauses_for(k).size();
    return n;
}

}  // namespace cogwin::logic
