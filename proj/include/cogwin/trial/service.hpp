#pragma once

#include <cogwin/explain/explain.hpp>
#include <cogwin/logic/clause.hpp>
#include <cogwin/trial/session.hpp>
#include <cogwin/trial/stats.hpp>

#include <json.hpp>

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <vector>

namespace httplib {
class Server;
}

namespace cogwin::trial {

/// Raised for unknown session ids.
class NotFound : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Sessions kept in memory and persisted as one append-only JSON-lines event
/// log per session (`<dir>/sessions/<id>.jsonl`) plus a snapshot (`<id>.json`).
class TrialService {
public:
    TrialService(std::filesystem::path data_dir, logic::Program theory, explain::TemplateTable templates,
                 TrialConfig defaults = {});

    /// Body fields (all optional): participant, study, arm, skin, bank_seed, island_seed.
    nlohmann::json create(const nlohmann::json& body);
    nlohmann::json next(const std::string& id);
    /// Body: item, choice, elapsed_ms.
    nlohmann::json answer(const std::string& id, const nlohmann::json& body);
    /// Body: item, text, elapsed_ms.
    nlohmann::json open_response(const std::string& id, const nlohmann::json& body);
    nlohmann::json stats(const std::string& study);

    TrialSession snapshot(const std::string& id) const;
    std::vector<TrialSession> sessions(const std::string& study) const;

    /// Rebuilds a session by replaying its event log.
    static TrialSession replay(const std::filesystem::path& log);

    void mount(httplib::Server& server);

private:
    struct Slot {
        std::mutex mutex;
        TrialSession session;
    };

    std::shared_ptr<Slot> slot(const std::string& id) const;
    void append(const std::string& id, const nlohmann::json& event);
    void write_snapshot(const TrialSession& s);
    void load();

    std::filesystem::path dir_;
    logic::Program theory_;
    explain::TemplateTable templates_;
    TrialConfig defaults_;
    mutable std::shared_mutex map_mutex_;
    std::map<std::string, std::shared_ptr<Slot>> slots_;
    std::map<std::string, std::size_t> enrolled_;
    std::size_t next_id_ = 1;
};

}  // namespace cogwin::trial
