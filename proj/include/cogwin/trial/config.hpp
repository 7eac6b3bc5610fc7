#pragma once

#include <cogwin/trial/session.hpp>

#include <json.hpp>

#include <filesystem>
#include <functional>
#include <optional>
#include <string>

namespace cogwin::trial {

/// Settings shared by the command-line tools and the HTTP service.
struct AppConfig {
    std::string host = "127.0.0.1";
    int port = 8080;
    /// Where session logs and snapshots live.
    std::filesystem::path data_dir = "cogwin-data";
    /// Theory, explanation templates and lexicon used by the service.
    std::filesystem::path theory;
    std::filesystem::path templates;
    std::filesystem::path lexicon;
    TrialConfig trial;
};

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

/// Reads variables from the process environment.
std::optional<std::string> process_env(const std::string& name);

/// Builds the configuration from defaults rooted at `resources`, then the JSON
/// file (if any; relative paths resolve against its directory), then the
/// COGWIN_PORT and COGWIN_DATA_DIR environment variables.
/// Throws std::invalid_argument on malformed values or unknown keys.
AppConfig load_config(const std::optional<std::filesystem::path>& file, const std::filesystem::path& resources,
                      const EnvLookup& env = process_env);

nlohmann::json to_json(const AppConfig& c);

}  // namespace cogwin::trial
