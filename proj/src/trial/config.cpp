#include <cogwin/trial/config.hpp>

#include <cstdlib>
#include <fstream>
#include <set>
#include <stdexcept>

namespace cogwin::trial {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

int parse_port(const std::string& text) {
    std::size_t used = 0;
    int port = 0;
    try {
        port = std::stoi(text, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("invalid port: " + text);
    }
    if (used != text.size() || port < 1 || port > 65535) throw std::invalid_argument("invalid port: " + text);
    return port;
}

fs::path resolve(const fs::path& base, const std::string& p) {
    fs::path q(p);
    return q.is_absolute() ? q : base / q;
}

}  // namespace

std::optional<std::string> process_env(const std::string& name) {
    const char* v = std::getenv(name.c_str());
    if (!v) return std::nullopt;
    return std::string(v);
}

AppConfig load_config(const std::optional<fs::path>& file, const fs::path& resources, const EnvLookup& env) {
    AppConfig c;
    c.theory = resources / "theories" / "miplain_reference.pl";
    c.templates = resources / "explain" / "templates.txt";
    c.lexicon = resources / "explain" / "lexicon.txt";

    if (file) {
        std::ifstream in(*file);
        if (!in) throw std::invalid_argument("cannot read config file " + file->string());
        json j;
        try {
            j = json::parse(in);
        } catch (const json::parse_error& e) {
            throw std::invalid_argument("config file " + file->string() + ": " + e.what());
        }
        if (!j.is_object()) throw std::invalid_argument("config file must hold a JSON object");
        static const std::set<std::string> keys{"host", "port", "data_dir", "theory", "templates", "lexicon", "trial"};
        for (const auto& [k, v] : j.items())
            if (!keys.count(k)) throw std::invalid_argument("unknown config key: " + k);
        const fs::path base = file->parent_path();
        try {
            c.host = j.value("host", c.host);
            if (j.contains("port")) c.port = parse_port(j["port"].is_string() ? j["port"].get<std::string>()
                                                                             : std::to_string(j["port"].get<int>()));
            if (j.contains("data_dir")) c.data_dir = resolve(base, j["data_dir"].get<std::string>());
            if (j.contains("theory")) c.theory = resolve(base, j["theory"].get<std::string>());
            if (j.contains("templates")) c.templates = resolve(base, j["templates"].get<std::string>());
            if (j.contains("lexicon")) c.lexicon = resolve(base, j["lexicon"].get<std::string>());
            if (j.contains("trial")) c.trial = config_from_json(j["trial"]);
        } catch (const json::exception& e) {
            throw std::invalid_argument("config file " + file->string() + ": " + e.what());
        }
    }
    if (auto p = env("COGWIN_PORT"); p && !p->empty()) c.port = parse_port(*p);
    if (auto d = env("COGWIN_DATA_DIR"); d && !d->empty()) c.data_dir = *d;
    return c;
}

json to_json(const AppConfig& c) {
    return {{"host", c.host},
            {"port", c.port},
            {"data_dir", c.data_dir.string()},
            {"theory", c.theory.string()},
            {"templates", c.templates.string()},
            {"lexicon", c.lexicon.string()},
            {"trial", to_json(c.trial)}};
}

}  // namespace cogwin::trial
