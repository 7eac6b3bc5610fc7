#include <cogwin/logic/solve.hpp>

#include <algorithm>

namespace cogwin::logic {

SolveResult solve(const Program& p, const Atom& query, const SolveLimits& limits) {
    std::vector<TraceEvent> events;
    EngineOptions opts;
    opts.max_depth = limits.max_depth;
    opts.max_steps = limits.max_steps;
    opts.trace = limits.trace ? &events : nullptr;
    Engine eng(p, opts);

    Clause qc{query, {}};
    std::uint32_t nvars = 0;
    Clause local = renumber(qc, &nvars);
    const std::uint32_t base = eng.alloc(nvars);
    const auto originals = clause_variables(qc);
    const auto locals = clause_variables(local);

    SolveResult result;
    bool capped = false;
    eng.call(local.head, base, [&]() {
        Solution s;
        for (std::size_t i = 0; i < originals.size(); ++i) {
            Term value = eng.resolve(locals[i], base);
            if (value.is_variable()) continue;
            s.bindings.bind(originals[i], std::move(value));
        }
        if (limits.trace) {
            s.trace = events;
            s.trace.push_back(TraceEvent{TraceEvent::Kind::Success, {}});
        }
        result.solutions.push_back(std::move(s));
        capped = result.solutions.size() >= limits.max_solutions;
        return capped;
    });
    result.steps = eng.steps();
    if (capped)
        result.status = SolveStatus::SolutionCapReached;
    else if (eng.depth_exceeded())
        result.status = SolveStatus::DepthCapExceeded;
    return result;
}

std::vector<Atom> answers(const Program& p, const Atom& query, const SolveLimits& limits) {
    SolveLimits l = limits;
    l.trace = false;
    auto r = solve(p, query, l);
    std::vector<Atom> out;
    for (const auto& s : r.solutions) {
        Atom a = s.bindings.apply(query);
        if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(std::move(a));
    }
    return out;
}

}  // namespace cogwin::logic
