#include <cogwin/cognitive/window.hpp>

#include <cogwin/logic/primitives.hpp>
#include <cogwin/logic/unfold.hpp>

#include <algorithm>

namespace cogwin::cognitive {

using logic::Atom;
using logic::PredKey;
using logic::Program;

std::string to_string(BigCount n) {
    if (n == 0) return "0";
    std::string out;
    while (n > 0) {
        out.push_back(static_cast<char>('0' + static_cast<int>(n % 10)));
        n /= 10;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

namespace {

BigCount checked_pow(BigCount base, std::int64_t exp) {
    BigCount out = 1;
    const BigCount limit = ~static_cast<BigCount>(0);
    for (std::int64_t i = 0; i < exp; ++i) {
        if (base != 0 && out > limit / base) throw std::overflow_error("bound exceeds 128 bits");
        out *= base;
    }
    return out;
}

}  // namespace

BigCount bound(std::int64_t m, std::int64_t p, std::int64_t j, std::int64_t n) {
    if (m < 1 || p < 1 || n < 1 || j < 0) throw std::invalid_argument("bound: m, p, n must be >= 1 and j >= 0");
    BigCount a = checked_pow(static_cast<BigCount>(m), n);
    BigCount b = checked_pow(static_cast<BigCount>(p), (1 + j) * n);
    if (a > (~static_cast<BigCount>(0)) / b) throw std::overflow_error("bound exceeds 128 bits");
    return a * b;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::HarmfulRisk: return "HARMFUL_RISK";
        case Verdict::NoBenefit: return "NO_BENEFIT";
        case Verdict::BenefitPossible: return "BENEFIT_POSSIBLE";
    }
    return "?";
}

WindowVerdict window_verdict(const Program& theory, const CapacityProfile& profile,
                             const std::vector<RootQueries>& roots, const SpaceParams& params) {
    if (profile.n < 1) throw std::invalid_argument("capacity must be at least 1");
    WindowVerdict out{profile, {}};
    for (const auto& rq : roots) {
        RootVerdict rv;
        rv.root = rq.root;
        rv.closure_size = logic::dependency_closure_size(theory, rq.root);
        rv.space = bound(params.m, params.p, params.j, static_cast<std::int64_t>(rv.closure_size));
        rv.capacity = bound(params.m, params.p, params.j, profile.n);
        bool cheaper = !rq.queries.empty();
        for (const auto& [q, cp] : rq.queries) {
            const std::int64_t c = cog(theory, q).total;
            rv.costs.push_back({q, c, cp});
            cheaper = cheaper && c < cp;
        }
        if (rv.space > rv.capacity) rv.verdict = Verdict::HarmfulRisk;
        else if (!cheaper) rv.verdict = Verdict::NoBenefit;
        else rv.verdict = Verdict::BenefitPossible;
        out.roots.push_back(std::move(rv));
    }
    return out;
}

PrimitiveSolution min_primitive_solution(const std::vector<LevelExamples>& levels, const std::vector<std::string>& phi,
                                         std::shared_ptr<const logic::PrimitiveTable> table,
                                         const PrimitiveSolutionConfig& config) {
    std::vector<PredKey> keys;
    for (const auto& name : phi) {
        auto it = std::find_if(table->keys().begin(), table->keys().end(),
                               [&](const PredKey& k) { return logic::symbol_text(k.name) == name; });
        if (it == table->keys().end()) throw std::invalid_argument("unknown primitive " + name);
        keys.push_back(*it);
    }
    const std::size_t n = keys.size();
    for (std::size_t size = 1; size <= n; ++size) {
        // Subsets of this size in lexicographic order of positions.
        std::vector<std::size_t> pick(size);
        for (std::size_t i = 0; i < size; ++i) pick[i] = i;
        while (true) {
            std::vector<PredKey> subset;
            std::vector<std::string> names;
            for (auto i : pick) {
                subset.push_back(keys[i]);
                names.push_back(phi[i]);
            }
            Program program;
            program.primitives = std::make_shared<const logic::PrimitiveTable>(table->restricted(subset));
            bool ok = true;
            for (std::size_t l = 0; l < levels.size() && ok; ++l) {
                mil::LearningTask task;
                task.positives = levels[l].positives;
                task.negatives = levels[l].negatives;
                task.background = program;
                task.metarules = config.metarules;
                task.max_clauses = config.max_clauses;
                task.node_budget = config.node_budget;
                task.constant_pool = config.constant_pool;
                if (config.acceptance) task.accept = config.acceptance(l, levels[l]);
                auto r = mil::learn(task);
                if (!r.hypothesis) {
                    ok = false;
                    break;
                }
                for (const auto& c : r.hypothesis->program.clauses) program.clauses.push_back(c);
            }
            if (ok) return {std::move(program), std::move(names)};
            // Advance to the next combination.
            std::size_t i = size;
            while (i > 0 && pick[i - 1] == n - size + (i - 1)) --i;
            if (i == 0) break;
            ++pick[i - 1];
            for (std::size_t k = i; k < size; ++k) pick[k] = pick[k - 1] + 1;
        }
    }
    throw NoPrimitiveSolution("no subset of the primitives admits a consistent program");
}

std::int64_t cogp(const PrimitiveSolution& solution, const Atom& q) { return cog(solution.program, q).total; }

nlohmann::json to_json(const CostReport& r) {
    nlohmann::json stack = nlohmann::json::array();
    for (const auto& e : r.stack) stack.push_back({{"entry", e.text}, {"cost", e.cost}});
    return {{"query", logic::to_string(r.query)}, {"answered", r.answered}, {"total", r.total}, {"stack", stack}};
}

nlohmann::json to_json(const WindowVerdict& v) {
    nlohmann::json roots = nlohmann::json::array();
    for (const auto& r : v.roots) {
        nlohmann::json costs = nlohmann::json::array();
        for (const auto& c : r.costs)
            costs.push_back({{"query", logic::to_string(c.query)}, {"cog", c.cog}, {"cogp", c.cogp}});
        roots.push_back({{"root", r.root.str()},
                         {"closure_size", r.closure_size},
                         {"hypothesis_space", to_string(r.space)},
                         {"capacity_bound", to_string(r.capacity)},
                         {"costs", costs},
                         {"verdict", to_string(r.verdict)}});
    }
    return {{"profile", {{"label", v.profile.label}, {"n", v.profile.n}}}, {"roots", roots}};
}

}  // namespace cogwin::cognitive
