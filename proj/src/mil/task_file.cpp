#include <cogwin/mil/task_file.hpp>

#include <cogwin/logic/parser.hpp>
#include <cogwin/logic/primitives.hpp>

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace cogwin::mil {

namespace {

std::string_view trim(std::string_view v) {
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.remove_prefix(1);
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.remove_suffix(1);
    return v;
}

std::vector<std::string> split_list(std::string_view v) {
    std::vector<std::string> out;
    std::stringstream ss{std::string(v)};
    for (std::string item; std::getline(ss, item, ',');) {
        auto t = trim(item);
        if (!t.empty()) out.emplace_back(t);
    }
    return out;
}

}  // namespace

LearningTask parse_task(std::string_view text, const logic::PrimitiveTable& available) {
    LearningTask task;
    std::vector<logic::PredKey> keep;
    bool primitives_given = false;
    std::stringstream in{std::string(text)};
    std::size_t lineno = 0;
    for (std::string raw; std::getline(in, raw);) {
        ++lineno;
        if (auto pct = raw.find('%'); pct != std::string::npos) raw.resize(pct);
        auto line = trim(raw);
        if (line.empty()) continue;
        if (line.rfind("metarule", 0) == 0) {
            task.metarules.push_back(parse_metarule(line));
            continue;
        }
        auto colon = line.find(':');
        if (colon == std::string_view::npos)
            throw std::invalid_argument("task line " + std::to_string(lineno) + ": expected 'key: value'");
        auto key = trim(line.substr(0, colon));
        auto value = trim(line.substr(colon + 1));
        if (key == "max_clauses") {
            task.max_clauses = std::stoul(std::string(value));
        } else if (key == "node_budget") {
            task.node_budget = std::stoull(std::string(value));
        } else if (key == "primitives") {
            primitives_given = true;
            for (const auto& name : split_list(value)) {
                bool found = false;
                for (const auto& k : available.keys())
                    if (logic::symbol_text(k.name) == name) keep.push_back(k), found = true;
                if (!found) throw std::invalid_argument("unknown primitive: " + name);
            }
        } else if (key == "constants") {
            for (const auto& c : split_list(value)) task.constant_pool.push_back(logic::Term::constant(c));
        } else if (key == "background") {
            task.background.clauses.push_back(logic::parse_clause(value));
        } else if (key == "pos" || key == "neg") {
            auto text_atom = value;
            if (!text_atom.empty() && text_atom.back() == '.') text_atom.remove_suffix(1);
            auto a = logic::parse_atom(text_atom);
            if (!a.is_ground()) throw std::invalid_argument("examples must be ground: " + std::string(value));
            (key == "pos" ? task.positives : task.negatives).push_back(std::move(a));
        } else {
            throw std::invalid_argument("task line " + std::to_string(lineno) + ": unknown key " + std::string(key));
        }
    }
    if (!primitives_given) keep = available.keys();
    task.background.primitives = std::make_shared<const logic::PrimitiveTable>(available.restricted(keep));
    for (const auto& p : task.positives)
        for (const auto& n : task.negatives)
            if (p == n) throw std::invalid_argument("example is both positive and negative: " + to_string(p));
    return task;
}

}  // namespace cogwin::mil
