#pragma once

#include <cogwin/trial/config.hpp>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cogwin::tools {

struct LearnArgs {
    std::string learner = "miplain";
    int max_k = 3;
    std::size_t budget = 2000;
    std::uint64_t seed = 1;
    std::filesystem::path out;
    std::filesystem::path trace;
    std::filesystem::path examples;
};

struct AnalyzeArgs {
    std::filesystem::path theory;
    std::int64_t capacity = 4;
    std::string label = "students";
    std::filesystem::path queries;
    std::filesystem::path examples;
    std::vector<std::string> phi{"move", "won", "number_of_pairs"};
    std::uint64_t seed = 1;
    std::filesystem::path json_out;
};

struct ExplainArgs {
    std::filesystem::path theory;
    std::string board;
    std::optional<int> k;
    std::optional<int> reject;
    std::optional<std::uint64_t> island_seed;
    bool json = false;
};

struct ReportArgs {
    std::string study;
    bool mediocre = false;
    std::filesystem::path json_out;
};

struct CloneArgs {
    std::string board;
    int move = -1;
};

int run_learn(const LearnArgs& a, std::ostream& out);
int run_analyze(const AnalyzeArgs& a, const trial::AppConfig& cfg, std::ostream& out);
int run_explain(const ExplainArgs& a, const trial::AppConfig& cfg, std::ostream& out);
int run_serve(const trial::AppConfig& cfg, std::ostream& out);
int run_report(const ReportArgs& a, const trial::AppConfig& cfg, std::ostream& out);
int run_clone(const CloneArgs& a, std::ostream& out);

}  // namespace cogwin::tools
