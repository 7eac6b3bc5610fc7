#include <cogwin/strategy/learners.hpp>

#include <cogwin/game/primitives.hpp>
#include <cogwin/game/questions.hpp>
#include <cogwin/logic/parser.hpp>
#include <cogwin/logic/solve.hpp>

#include <algorithm>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <stdexcept>

namespace cogwin::strategy {

using game::GameState;
using game::Outcome;
using game::Player;
using logic::Atom;
using logic::Clause;
using logic::PredKey;
using logic::Program;
using logic::Term;

namespace {

const char* const kMiplainMetarules = R"(
metarule postcon_dyadic [P,Q,R]: P(A,B) :- Q(A,B), R(B).
metarule postcon_monadic [P,Q,R]: P(A) :- Q(A,B), R(B).
metarule conj_curry1 [P,Q,R,S,T]: P(A) :- Q(A,S,T), R(A).
metarule conj_curry2 [P,Q,R,S,T,U,V]: P(A) :- Q(A,S,T), R(A,U,V).
)";

const char* const kMigoMetarules = R"(
metarule postcon_dyadic [P,Q,R]: P(A,B) :- Q(A,B), R(B).
metarule lookahead_dyadic [P,Q,R]: P(A,B) :- Q(A,B), not(R(B,C)).
)";

std::string win_name(int k) { return "win_" + std::to_string(k); }

PredKey win_key(int k) { return {logic::intern(win_name(k)), 2}; }

std::vector<Term> constant_pool() {
    std::vector<Term> out;
    for (auto c : {"x", "o", "0", "1", "2"}) out.push_back(Term::constant(c));
    return out;
}

logic::SolveLimits quiet() {
    logic::SolveLimits lim;
    lim.trace = false;
    return lim;
}

std::vector<GameState> solutions(const Program& p, int k, const GameState& s) {
    std::vector<GameState> out;
    if (!p.defines(win_key(k))) return out;
    for (const auto& a : logic::answers(p, Atom(win_name(k), {s.to_term(), Term::variable("B")}), quiet()))
        if (auto t = GameState::from_term(a.args[1])) out.push_back(*t);
    return out;
}

bool provable(const Program& p, const Atom& a) {
    if (!p.defines(a.key())) return false;
    auto lim = quiet();
    lim.max_solutions = 1;
    return logic::solve(p, a, lim).succeeded();
}

// Following the theory from s (x to move) wins within n learner moves against
// the minimax opponent, whichever recommended move is taken.
bool forced_within(const Program& p, const GameState& s, int n, bool exact) {
    if (n <= 0) return false;
    auto recs = recommended_moves(p, s, n);
    if (recs.empty()) return false;
    for (const auto& b : recs) {
        if (game::won(b, Player::X)) {
            if (exact && n != 1) return false;
            continue;
        }
        if (game::terminal(b)) return false;
        auto c = game::optimal_reply(b);
        if (!c || game::won(*c, Player::O)) return false;
        if (!forced_within(p, *c, n - 1, exact)) return false;
    }
    return true;
}

struct Level {
    std::vector<Atom> positives;
    std::vector<Atom> negatives;
    std::vector<Clause> clauses;
    bool dirty = false;
};

enum class Kind { Migo, Miplain };

class Loop {
public:
    Loop(Kind kind, const LearnerOptions& opts)
        : kind_(kind), opts_(opts), rng_(opts.seed), levels_(static_cast<std::size_t>(opts.max_k)) {
        if (opts.max_k < 1 || opts.max_k > 3) throw std::invalid_argument("max_k must be 1..3");
        if (kind == Kind::Migo) {
            prims_ = game::game_primitives({"move", "won", "drawn"});
            primitive_names_ = {"move", "won", "drawn"};
            metarules_ = migo_metarules();
        } else {
            prims_ = game::game_primitives({"move", "won", "number_of_pairs"});
            primitive_names_ = {"move", "won", "number_of_pairs"};
            metarules_ = miplain_metarules();
        }
        for (int k = 1; k <= opts.max_k; ++k)
            for (const auto& s : game::canonical_pool(k)) starts_.push_back(s);
    }

    LearnRun run() {
        LearnRun out;
        std::size_t wins = 0, draws = 0, losses = 0;
        bool converged = false;
        std::size_t episode = 0;
        for (; episode < opts_.budget && !converged; ++episode) {
            EpisodeLog log = play(pick_start());
            switch (log.outcome) {
                case Outcome::Win: ++wins; break;
                case Outcome::Draw: ++draws; break;
                case Outcome::Loss: ++losses; break;
            }
            harvest(log, out);
            if (relearn()) converged = theory_converged(program(), opts_.max_k);
            out.trace.push_back({episode + 1, wins, draws, losses, program().clauses.size(), converged});
        }
        out.converged = converged;
        out.episodes_to_convergence = episode;
        out.theory.program = program();
        out.theory.primitive_set = primitive_names_;
        out.theory.learner = kind_ == Kind::Migo ? "migo" : "miplain";
        out.theory.episodes = episode;
        out.theory.max_k = opts_.max_k;
        return out;
    }

private:
    Program program(int below = 99) const {
        Program p;
        p.primitives = prims_;
        for (int k = 1; k <= opts_.max_k && k < below; ++k)
            for (const auto& c : levels_[k - 1].clauses) p.clauses.push_back(c);
        return p;
    }

    GameState pick_start() {
        // Uniform over depth first, then over positions of that depth.
        std::uniform_int_distribution<int> dk(1, opts_.max_k);
        const auto& pool = game::canonical_pool(dk(rng_));
        std::uniform_int_distribution<std::size_t> di(0, pool.size() - 1);
        return pool[di(rng_)];
    }

    EpisodeLog play(const GameState& start) {
        EpisodeLog log{start, {}, Outcome::Draw};
        const Program theory = program();
        GameState s = start;
        while (!game::terminal(s)) {
            GameState t;
            Actor actor;
            if (s.to_move() == Player::X) {
                auto recs = recommended_moves(theory, s, opts_.max_k);
                if (recs.empty()) recs = game::successors(s);
                std::uniform_int_distribution<std::size_t> d(0, recs.size() - 1);
                t = recs[d(rng_)];
                actor = Actor::Learner;
            } else {
                t = *game::optimal_reply(s);
                actor = Actor::Opponent;
            }
            log.steps.push_back({s, t, actor});
            s = t;
        }
        log.outcome = game::won(s, Player::X) ? Outcome::Win : game::won(s, Player::O) ? Outcome::Loss : Outcome::Draw;
        return log;
    }

    void add(int k, const Atom& a, bool positive, LearnRun& out) {
        Level& lv = levels_[k - 1];
        auto& set = positive ? lv.positives : lv.negatives;
        if (std::find(set.begin(), set.end(), a) != set.end()) return;
        set.push_back(a);
        (positive ? out.positive_examples : out.negative_examples).push_back(a);
        ++(positive ? out.positives : out.negatives);
        const Program p = program();
        const bool handled = positive ? provable(p, a) : !provable(p, a);
        if (!handled) lv.dirty = true;
    }

    void harvest(const EpisodeLog& log, LearnRun& out) {
        std::vector<const Step*> mine;
        for (const auto& st : log.steps)
            if (st.actor == Actor::Learner) mine.push_back(&st);
        const int m = static_cast<int>(mine.size());
        if (log.outcome == Outcome::Win) {
            for (int idx = 0; idx < m; ++idx) {
                const int i = m - idx;
                const Step& st = *mine[idx];
                if (i > opts_.max_k || !game::is_canonical_position(st.before)) continue;
                if (game::classify_win_k(st.before) != i) continue;
                add(i, Atom(win_name(i), {st.before.to_term(), st.after.to_term()}), true, out);
            }
        }
        if (kind_ == Kind::Migo) return;
        // Backtrack along the path: the first learner move that gives away a
        // fastest forced win is a negative example for that depth.
        for (const Step* st : mine) {
            auto k = game::classify_win_k(st->before);
            if (!k || *k > opts_.max_k) continue;
            if (game::is_optimal_move(st->before, st->after)) continue;
            add(*k, Atom(win_name(*k), {st->before.to_term(), st->after.to_term()}), false, out);
            break;
        }
    }

    // Relearns dirty levels bottom-up. True when any level changed.
    bool relearn() {
        bool changed = false;
        for (int k = 1; k <= opts_.max_k; ++k) {
            Level& lv = levels_[k - 1];
            if (!lv.dirty) continue;
            // Dependent learning: lower levels must exist first.
            bool lower_ready = true;
            for (int j = 1; j < k; ++j) lower_ready = lower_ready && !levels_[j - 1].clauses.empty();
            if (!lower_ready || lv.positives.empty()) continue;
            lv.dirty = false;
            auto learned = learn_level(k);
            if (!learned || *learned == lv.clauses) continue;
            lv.clauses = std::move(*learned);
            changed = true;
            for (int j = k + 1; j <= opts_.max_k; ++j)
                if (!levels_[j - 1].positives.empty()) levels_[j - 1].dirty = true;
        }
        return changed;
    }

    std::optional<std::vector<Clause>> learn_level(int k) {
        const Level& lv = levels_[k - 1];
        mil::LearningTask task;
        task.positives = lv.positives;
        task.background = program(k);
        task.metarules = metarules_;
        task.node_budget = opts_.node_budget;
        if (kind_ == Kind::Migo) {
            task.max_clauses = 3;
            std::vector<GameState> boards;
            for (const auto& a : lv.positives) boards.push_back(*GameState::from_term(a.args[0]));
            task.accept = forced_win_acceptance(k, std::move(boards));
            auto r = mil::learn(task);
            if (!r.hypothesis) return std::nullopt;
            return r.hypothesis->program.clauses;
        }
        task.negatives = lv.negatives;
        task.constant_pool = constant_pool();
        task.max_clauses = 5;
        auto r = mil::learn_candidates(task, opts_.candidates);
        if (r.candidates.empty()) return std::nullopt;
        std::vector<Atom> probes;
        std::set<std::string> seen;
        for (const auto& a : lv.positives)
            if (seen.insert(to_string(a.args[0])).second)
                probes.push_back(Atom(win_name(k), {a.args[0], Term::variable("B")}));
        return mil::select_efficient(r.candidates, probes, task.background).program.clauses;
    }

    Kind kind_;
    LearnerOptions opts_;
    std::mt19937_64 rng_;
    std::vector<Level> levels_;
    std::shared_ptr<const logic::PrimitiveTable> prims_;
    std::vector<std::string> primitive_names_;
    std::vector<mil::Metarule> metarules_;
    std::vector<GameState> starts_;
};

}  // namespace

int StrategyTheory::levels() const {
    int n = 0;
    for (int k = 1; k <= 9; ++k)
        if (program.defines(win_key(k))) n = k;
    return n;
}

std::vector<GameState> recommended_moves(const Program& theory, const GameState& s, int max_k) {
    for (int k = 1; k <= max_k; ++k) {
        auto sols = solutions(theory, k, s);
        if (sols.empty()) continue;
        std::sort(sols.begin(), sols.end());
        sols.erase(std::unique(sols.begin(), sols.end()), sols.end());
        return sols;
    }
    return {};
}

bool theory_converged(const Program& theory, int max_k) {
    for (int k = 1; k <= max_k; ++k)
        if (!theory.defines(win_key(k))) return false;
    for (const auto& s : game::reachable_states()) {
        if (s.to_move() != Player::X || game::terminal(s)) continue;
        auto k = game::classify_win_k(s);
        if (!k || *k > max_k) continue;
        auto sols = solutions(theory, *k, s);
        for (const auto& t : sols)
            if (!game::is_optimal_move(s, t)) return false;
        if (!game::is_canonical_position(s)) continue;
        if (sols.empty()) return false;
        for (int j = 1; j < *k; ++j)
            if (!solutions(theory, j, s).empty()) return false;
    }
    return true;
}

double playout_win_rate(const Program& theory, int k) {
    const auto& pool = game::canonical_pool(k);
    std::size_t ok = 0;
    for (const auto& s : pool) ok += forced_within(theory, s, k, true);
    return pool.empty() ? 0.0 : static_cast<double>(ok) / static_cast<double>(pool.size());
}

std::vector<mil::Metarule> migo_metarules() { return mil::parse_metarules(kMigoMetarules); }

std::vector<mil::Metarule> miplain_metarules() { return mil::parse_metarules(kMiplainMetarules); }

std::function<bool(const Program&)> forced_win_acceptance(int k, std::vector<GameState> boards) {
    return [boards = std::move(boards), k](const Program& full) {
        for (const auto& s : boards) {
            auto recs = solutions(full, k, s);
            if (recs.empty()) return false;
            for (const auto& b : recs) {
                if (game::won(b, Player::X)) continue;
                if (game::terminal(b)) return false;
                auto c = game::optimal_reply(b);
                if (!c || game::won(*c, Player::O) || !forced_within(full, *c, k - 1, false)) return false;
            }
        }
        return true;
    };
}

LearnRun migo_learn(const LearnerOptions& opts) { return Loop(Kind::Migo, opts).run(); }

LearnRun miplain_learn(const LearnerOptions& opts) { return Loop(Kind::Miplain, opts).run(); }

void write_trace_csv(std::ostream& out, const std::vector<TracePoint>& trace) {
    out << "episode,wins,draws,losses,theory_size,converged\n";
    for (const auto& t : trace)
        out << t.episode << ',' << t.wins << ',' << t.draws << ',' << t.losses << ',' << t.theory_size << ','
            << (t.converged ? 1 : 0) << '\n';
}

mil::Hypothesis clone_one_shot(const GameState& s, const GameState& chosen) {
    if (!game::is_move(s, chosen)) throw std::invalid_argument("chosen board is not a legal move from " + s.str());
    mil::LearningTask task;
    task.positives.push_back(Atom("win_1", {s.to_term(), chosen.to_term()}));
    task.background.primitives = game::game_primitives({"move", "won", "number_of_pairs"});
    task.metarules = miplain_metarules();
    task.constant_pool = constant_pool();
    task.max_clauses = 3;
    task.allow_duplicate_literals = true;
    auto r = mil::learn(task);
    if (!r.hypothesis) throw std::runtime_error("no program within " + std::to_string(task.max_clauses) + " clauses");
    mil::Hypothesis h = std::move(*r.hypothesis);
    for (auto& c : h.program.clauses) {
        std::vector<Atom> body;
        for (auto& lit : c.body)
            if (std::find(body.begin(), body.end(), lit) == body.end()) body.push_back(lit);
        c.body = std::move(body);
    }
    return h;
}

}  // namespace cogwin::strategy
