#include "commands.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

std::optional<std::filesystem::path> config_file(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (std::filesystem::exists("cogwin.json")) return std::filesystem::path("cogwin.json");
    return std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace cogwin::tools;
    CLI::App app{"Learn, analyse and explain game strategies, and run explanation trials"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("-c,--config", config_path, "JSON configuration file (default: ./cogwin.json if present)");

    LearnArgs learn;
    auto* l = app.add_subcommand("learn", "Learn a win_k strategy by play against the minimax opponent");
    l->add_option("--learner", learn.learner, "miplain or migo")->check(CLI::IsMember({"miplain", "migo"}));
    l->add_option("--max-k", learn.max_k, "Highest strategy level")->check(CLI::Range(1, 3));
    l->add_option("--budget", learn.budget, "Episode cap");
    l->add_option("--seed", learn.seed, "Random seed");
    l->add_option("-o,--out", learn.out, "Theory output file (default: stdout)");
    l->add_option("--trace", learn.trace, "Learning-curve CSV output");
    l->add_option("--examples", learn.examples, "Collected examples as JSON");

    AnalyzeArgs analyze;
    auto* a = app.add_subcommand("analyze", "Cognitive cost and hypothesis-space report for a theory");
    a->add_option("--theory", analyze.theory, "Theory file (default: configured theory)");
    a->add_option("--capacity", analyze.capacity, "Clause capacity n of the human profile")->check(CLI::PositiveNumber);
    a->add_option("--label", analyze.label, "Profile label");
    a->add_option("--queries", analyze.queries, "One win_k query per line (default: every canonical board)");
    a->add_option("--examples", analyze.examples, "Examples JSON written by learn (default: run MIPlain)");
    a->add_option("--phi", analyze.phi, "Primitive predicates searched for the minimum primitive solution");
    a->add_option("--seed", analyze.seed, "Seed for the MIPlain run when no examples are given");
    a->add_option("--json", analyze.json_out, "Write the JSON report here instead of stdout");

    ExplainArgs explain;
    auto* e = app.add_subcommand("explain", "Explain the strategy's move on a board");
    e->add_option("board", explain.board, "Board such as [x,e,e,e,o,e,e,e,e]")->required();
    e->add_option("--theory", explain.theory, "Theory file (default: configured theory)");
    e->add_option("--k", explain.k, "Question category (default: minimax classification)")->check(CLI::Range(1, 3));
    e->add_option("--reject", explain.reject, "Cell of a worse move to explain")->check(CLI::Range(0, 8));
    e->add_option("--island", explain.island_seed, "Render with the island map of this seed");
    e->add_flag("--json", explain.json, "Print the structured payload");

    auto* s = app.add_subcommand("serve", "Run the trial HTTP service");

    ReportArgs report;
    auto* r = app.add_subcommand("report", "Group statistics from session logs");
    r->add_option("--study", report.study, "Study id (default: configured study)");
    r->add_flag("--mediocre", report.mediocre, "Restrict to sessions within one standard deviation of mean pre-test accuracy");
    r->add_option("--json", report.json_out, "Also write the JSON report here");

    CloneArgs clone;
    auto* c = app.add_subcommand("clone", "Learn a program from a single observed move");
    c->add_option("board", clone.board, "Board before the move")->required();
    c->add_option("--move", clone.move, "Cell played")->required()->check(CLI::Range(0, 8));

    CLI11_PARSE(app, argc, argv);

    try {
        if (l->parsed()) return run_learn(learn, std::cout);
        if (c->parsed()) return run_clone(clone, std::cout);
        const auto cfg = cogwin::trial::load_config(config_file(config_path), COGWIN_RESOURCE_DIR);
        if (a->parsed()) return run_analyze(analyze, cfg, std::cout);
        if (e->parsed()) return run_explain(explain, cfg, std::cout);
        if (s->parsed()) return run_serve(cfg, std::cout);
        if (r->parsed()) return run_report(report, cfg, std::cout);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}
