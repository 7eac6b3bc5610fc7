#include "commands.hpp"

#include <cogwin/cognitive/cost.hpp>
#include <cogwin/cognitive/window.hpp>
#include <cogwin/explain/explain.hpp>
#include <cogwin/game/island.hpp>
#include <cogwin/game/minimax.hpp>
#include <cogwin/game/primitives.hpp>
#include <cogwin/game/questions.hpp>
#include <cogwin/logic/parser.hpp>
#include <cogwin/strategy/learners.hpp>
#include <cogwin/trial/service.hpp>
#include <cogwin/trial/stats.hpp>

#include <httplib.h>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace cogwin::tools {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& p) {
    std::ifstream in(p);
    if (!in) throw std::runtime_error("cannot read " + p.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& p, const std::string& text) {
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream out(p);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << text;
}

logic::Program load_theory(const fs::path& p) {
    logic::Program prog;
    prog.clauses = logic::parse_clauses(read_file(p));
    prog.primitives = game::game_primitives();
    return prog;
}

logic::Atom parse_query(std::string line) {
    while (!line.empty() && (std::isspace(static_cast<unsigned char>(line.back())) || line.back() == '.'))
        line.pop_back();
    return logic::parse_atom(line);
}

std::vector<logic::Atom> read_queries(const fs::path& p) {
    std::vector<logic::Atom> out;
    std::istringstream in(read_file(p));
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '%') continue;
        out.push_back(parse_query(line.substr(first)));
    }
    return out;
}

int level_of(const logic::Atom& a) {
    const std::string n = a.name();
    if (n.rfind("win_", 0) != 0 || n.size() != 5 || !std::isdigit(static_cast<unsigned char>(n[4])))
        throw std::invalid_argument("query is not a win_k atom: " + logic::to_string(a));
    return n[4] - '0';
}

std::vector<cognitive::LevelExamples> read_examples(const fs::path& p) {
    const json j = json::parse(read_file(p));
    std::vector<cognitive::LevelExamples> levels;
    auto add = [&](const json& list, bool positive) {
        for (const auto& text : list) {
            auto a = parse_query(text.get<std::string>());
            const auto k = static_cast<std::size_t>(level_of(a));
            while (levels.size() < k) levels.push_back({"win_" + std::to_string(levels.size() + 1), {}, {}});
            (positive ? levels[k - 1].positives : levels[k - 1].negatives).push_back(a);
        }
    };
    add(j.at("positives"), true);
    add(j.at("negatives"), false);
    return levels;
}

json examples_json(const strategy::LearnRun& run) {
    json pos = json::array(), neg = json::array();
    for (const auto& a : run.positive_examples) pos.push_back(logic::to_string(a));
    for (const auto& a : run.negative_examples) neg.push_back(logic::to_string(a));
    return {{"positives", pos}, {"negatives", neg}};
}

std::vector<cognitive::LevelExamples> levels_from_run(const strategy::LearnRun& run) {
    std::vector<cognitive::LevelExamples> levels;
    for (int k = 1; k <= run.theory.max_k; ++k) levels.push_back({"win_" + std::to_string(k), {}, {}});
    for (const auto& a : run.positive_examples) levels[static_cast<std::size_t>(level_of(a) - 1)].positives.push_back(a);
    for (const auto& a : run.negative_examples) levels[static_cast<std::size_t>(level_of(a) - 1)].negatives.push_back(a);
    return levels;
}

cognitive::PrimitiveSolutionConfig primitive_config() {
    cognitive::PrimitiveSolutionConfig cfg;
    cfg.metarules = strategy::migo_metarules();
    cfg.acceptance = [](std::size_t l, const cognitive::LevelExamples& e) {
        std::vector<game::GameState> boards;
        for (const auto& a : e.positives)
            if (auto b = game::GameState::from_term(a.args[0])) boards.push_back(*b);
        return strategy::forced_win_acceptance(static_cast<int>(l) + 1, boards);
    };
    return cfg;
}

}  // namespace

int run_learn(const LearnArgs& a, std::ostream& out) {
    strategy::LearnerOptions o;
    o.max_k = a.max_k;
    o.budget = a.budget;
    o.seed = a.seed;
    strategy::LearnRun run;
    if (a.learner == "miplain") run = strategy::miplain_learn(o);
    else if (a.learner == "migo") run = strategy::migo_learn(o);
    else throw std::invalid_argument("unknown learner: " + a.learner);

    std::ostringstream theory;
    theory << "% " << a.learner << " seed " << a.seed << ", " << run.episodes_to_convergence << " episodes, "
           << (run.converged ? "converged" : "not converged") << "\n"
           << logic::to_string(run.theory.program);
    if (a.out.empty()) out << theory.str();
    else write_file(a.out, theory.str());
    if (!a.trace.empty()) {
        std::ostringstream csv;
        strategy::write_trace_csv(csv, run.trace);
        write_file(a.trace, csv.str());
    }
    if (!a.examples.empty()) write_file(a.examples, examples_json(run).dump(2) + "\n");
    std::cerr << a.learner << ": " << (run.converged ? "converged" : "did not converge") << " after "
              << run.episodes_to_convergence << " episodes (" << run.positives << " positive, " << run.negatives
              << " negative examples)\n";
    return run.converged ? 0 : 2;
}

int run_analyze(const AnalyzeArgs& a, const trial::AppConfig& cfg, std::ostream& out) {
    const auto theory = load_theory(a.theory.empty() ? cfg.theory : a.theory);

    std::vector<logic::Atom> queries;
    if (!a.queries.empty()) {
        queries = read_queries(a.queries);
    } else {
        for (int k = 1; k <= 3; ++k) {
            if (!logic::find_predicate(theory, "win_" + std::to_string(k))) continue;
            for (const auto& s : game::canonical_pool(k))
                queries.push_back(logic::Atom("win_" + std::to_string(k), {s.to_term(), logic::Term::variable("B")}));
        }
    }
    if (queries.empty()) throw std::invalid_argument("no queries to analyse");

    std::vector<cognitive::LevelExamples> levels;
    if (!a.examples.empty()) {
        levels = read_examples(a.examples);
    } else {
        strategy::LearnerOptions o;
        o.seed = a.seed;
        std::cerr << "no examples given; collecting them with a MIPlain run (seed " << a.seed << ")\n";
        levels = levels_from_run(strategy::miplain_learn(o));
    }
    const auto solution = cognitive::min_primitive_solution(levels, a.phi, game::game_primitives(), primitive_config());

    std::map<int, cognitive::RootQueries> by_root;
    for (const auto& q : queries) {
        const int k = level_of(q);
        auto& rq = by_root[k];
        rq.root = q.key();
        rq.queries.emplace_back(q, cognitive::cogp(solution, q));
    }
    std::vector<cognitive::RootQueries> roots;
    for (auto& [k, rq] : by_root) roots.push_back(std::move(rq));
    const auto verdict = cognitive::window_verdict(theory, {a.capacity, a.label}, roots);

    json report = cognitive::to_json(verdict);
    report["primitive_solution"] = {{"primitives", solution.primitives},
                                    {"program", logic::to_string(solution.program)}};
    if (!a.json_out.empty()) write_file(a.json_out, report.dump(2) + "\n");

    out << "profile " << a.label << " (n=" << a.capacity << "), CogP primitives {";
    for (std::size_t i = 0; i < solution.primitives.size(); ++i) out << (i ? ", " : "") << solution.primitives[i];
    out << "}\n";
    out << std::left << std::setw(8) << "root" << std::setw(9) << "closure" << std::setw(22) << "|S|" << std::setw(22)
        << "bound" << std::setw(9) << "queries" << std::setw(12) << "Cog<CogP" << std::setw(12) << "Cog=CogP"
        << "verdict\n";
    for (const auto& r : verdict.roots) {
        std::size_t less = 0, equal = 0;
        for (const auto& c : r.costs) {
            less += c.cog < c.cogp;
            equal += c.cog == c.cogp;
        }
        out << std::setw(8) << logic::symbol_text(r.root.name) << std::setw(9) << r.closure_size << std::setw(22)
            << cognitive::to_string(r.space) << std::setw(22) << cognitive::to_string(r.capacity) << std::setw(9)
            << r.costs.size() << std::setw(12) << less << std::setw(12) << equal << cognitive::to_string(r.verdict)
            << "\n";
    }
    if (a.json_out.empty()) out << report.dump(2) << "\n";
    return 0;
}

int run_explain(const ExplainArgs& a, const trial::AppConfig& cfg, std::ostream& out) {
    const auto theory = load_theory(a.theory.empty() ? cfg.theory : a.theory);
    const auto templates = explain::TemplateTable::load(cfg.templates);
    const auto s = game::GameState::parse(a.board);
    int k = 0;
    if (a.k) {
        k = *a.k;
    } else {
        const auto c = game::classify_win_k(s);
        if (!c) throw std::invalid_argument("board is not a win_k position; pass --k");
        k = *c;
    }
    std::optional<game::GameState> rejected;
    if (a.reject) rejected = s.place(*a.reject);
    auto p = explain::explain(theory, s, k, templates, rejected);
    if (a.island_seed) p = explain::render_island(p, game::IslandMap::make(*a.island_seed));
    if (a.json) {
        out << explain::to_json(p).dump(2) << "\n";
        return 0;
    }
    const char* place = a.island_seed ? "territory" : "cell";
    out << "win_" << k << ": play " << place << " " << p.suggested_move << "\n";
    for (const auto& sentence : p.sentences) out << "  - " << sentence.text << "\n";
    if (p.rejection) out << place << " " << *p.rejected_move << " is worse: " << p.rejection->text << "\n";
    return 0;
}

int run_serve(const trial::AppConfig& cfg, std::ostream& out) {
    trial::TrialService service(cfg.data_dir, load_theory(cfg.theory), explain::TemplateTable::load(cfg.templates),
                                cfg.trial);
    httplib::Server server;
    service.mount(server);
    out << "serving trials from " << cfg.data_dir.string() << " on http://" << cfg.host << ":" << cfg.port << "\n"
        << std::flush;
    if (!server.listen(cfg.host, cfg.port)) throw std::runtime_error("cannot listen on port " + std::to_string(cfg.port));
    return 0;
}

int run_report(const ReportArgs& a, const trial::AppConfig& cfg, std::ostream& out) {
    const std::string study = a.study.empty() ? cfg.trial.study : a.study;
    const fs::path dir = cfg.data_dir / "sessions";
    if (!fs::is_directory(dir)) throw std::runtime_error("no session logs under " + dir.string());
    std::vector<trial::TrialSession> done;
    std::size_t open = 0;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() != ".jsonl") continue;
        auto s = trial::TrialService::replay(entry.path());
        if (s.config.study != study) continue;
        if (s.completed()) done.push_back(std::move(s));
        else ++open;
    }
    std::sort(done.begin(), done.end(), [](const auto& x, const auto& y) { return x.id < y.id; });
    if (a.mediocre) done = trial::mediocre_subsample(done);
    const auto stats = trial::group_stats(done);

    json report = trial::to_json(stats);
    report["study"] = study;
    report["completed_sessions"] = done.size();
    report["incomplete_sessions"] = open;
    report["mediocre_subsample"] = a.mediocre;
    if (!a.json_out.empty()) write_file(a.json_out, report.dump(2) + "\n");

    out << "study " << study << ": " << stats.self_learning.sessions << " self-learning, "
        << stats.machine_aided.sessions << " machine-aided" << (a.mediocre ? " (mediocre subsample)" : "") << ", "
        << open << " incomplete\n";
    out << std::left << std::setw(10) << "category" << std::setw(10) << "C" << std::setw(10) << "C_ex" << std::setw(10)
        << "E_ex" << "effect\n"
        << std::fixed << std::setprecision(4);
    for (const auto& row : stats.effects) {
        out << std::setw(10) << (row.k == 0 ? std::string("all") : "win_" + std::to_string(row.k)) << std::setw(10)
            << row.c << std::setw(10) << row.c_ex << std::setw(10) << row.e_ex << trial::to_string(row.effect) << "\n";
    }
    return 0;
}

int run_clone(const CloneArgs& a, std::ostream& out) {
    const auto s = game::GameState::parse(a.board);
    if (a.move < 0 || a.move > 8) throw std::invalid_argument("--move must be a cell 0..8");
    const auto h = strategy::clone_one_shot(s, s.place(a.move));
    out << h.str();
    return 0;
}

}  // namespace cogwin::tools
