#include <cogwin/trial/service.hpp>

#include <httplib.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace cogwin::trial {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string now_iso() {
    auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream out;
    out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return out.str();
}

std::string format_id(std::size_t n) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "s%06zu", n);
    return buf;
}

void apply_event(TrialSession& s, const json& e, const Presenter& p) {
    const std::string kind = e.at("event");
    if (kind == "answer") submit_answer(s, e.at("item"), e.at("choice"), e.at("elapsed_ms"), p);
    else if (kind == "open_response") submit_open_response(s, e.at("item"), e.at("text"), e.at("elapsed_ms"));
    else throw std::runtime_error("unknown event " + kind);
}

}  // namespace

TrialService::TrialService(fs::path data_dir, logic::Program theory, explain::TemplateTable templates,
                           TrialConfig defaults)
    : dir_(std::move(data_dir)), theory_(std::move(theory)), templates_(std::move(templates)),
      defaults_(std::move(defaults)) {
    fs::create_directories(dir_ / "sessions");
    load();
}

void TrialService::load() {
    std::vector<fs::path> logs;
    for (const auto& entry : fs::directory_iterator(dir_ / "sessions"))
        if (entry.path().extension() == ".jsonl") logs.push_back(entry.path());
    std::sort(logs.begin(), logs.end());
    for (const auto& log : logs) {
        auto slot = std::make_shared<Slot>();
        slot->session = replay(log);
        ++enrolled_[slot->session.config.study];
        slots_[slot->session.id] = slot;
        ++next_id_;
    }
}

TrialSession TrialService::replay(const fs::path& log) {
    std::ifstream in(log);
    if (!in) throw std::runtime_error("cannot read " + log.string());
    std::optional<TrialSession> s;
    const Presenter none;
    for (std::string line; std::getline(in, line);) {
        if (line.empty()) continue;
        json e = json::parse(line);
        if (e.at("event") == "create") {
            s = create_session(e.at("id"), e.at("participant"), config_from_json(e.at("config")),
                               arm_from_string(e.at("arm")));
        } else {
            if (!s) throw std::runtime_error(log.string() + ": event before create");
            apply_event(*s, e, none);
        }
    }
    if (!s) throw std::runtime_error(log.string() + ": empty log");
    return *s;
}

std::shared_ptr<TrialService::Slot> TrialService::slot(const std::string& id) const {
    std::shared_lock lock(map_mutex_);
    auto it = slots_.find(id);
    if (it == slots_.end()) throw NotFound("unknown session " + id);
    return it->second;
}

void TrialService::append(const std::string& id, const json& event) {
    std::ofstream out(dir_ / "sessions" / (id + ".jsonl"), std::ios::app);
    if (!out) throw std::runtime_error("cannot write session log for " + id);
    out << event.dump() << '\n';
}

void TrialService::write_snapshot(const TrialSession& s) {
    const fs::path tmp = dir_ / "sessions" / (s.id + ".json.tmp");
    {
        std::ofstream out(tmp);
        out << to_json(s).dump(2) << '\n';
    }
    fs::rename(tmp, dir_ / "sessions" / (s.id + ".json"));
}

json TrialService::create(const json& body) {
    TrialConfig c = defaults_;
    c.study = body.value("study", c.study);
    if (body.contains("skin")) c.skin = skin_from_string(body["skin"].get<std::string>());
    c.bank_seed = body.value("bank_seed", c.bank_seed);
    c.island_seed = body.value("island_seed", c.island_seed);
    if (body.contains("arm") && !body["arm"].is_null()) c.arm = arm_from_string(body["arm"].get<std::string>());
    const std::string participant = body.value("participant", "");

    auto s = std::make_shared<Slot>();
    std::unique_lock lock(map_mutex_);
    const std::string id = format_id(next_id_);
    // Alternate arms in enrollment order unless the config fixes one.
    const Arm arm = c.arm ? *c.arm : (enrolled_[c.study] % 2 == 0 ? Arm::SelfLearning : Arm::MachineAided);
    s->session = create_session(id, participant, c, arm);
    append(id, {{"event", "create"},
                {"at", now_iso()},
                {"id", id},
                {"participant", participant},
                {"arm", to_string(arm)},
                {"config", to_json(c)}});
    write_snapshot(s->session);
    ++next_id_;
    ++enrolled_[c.study];
    slots_[id] = s;
    return {{"id", id}, {"arm", to_string(arm)}, {"study", c.study}, {"skin", to_string(c.skin)},
            {"part", to_string(s->session.part)}};
}

json TrialService::next(const std::string& id) {
    auto sl = slot(id);
    std::lock_guard lock(sl->mutex);
    return next_step(sl->session, {&theory_, &templates_});
}

json TrialService::answer(const std::string& id, const json& body) {
    auto sl = slot(id);
    std::lock_guard lock(sl->mutex);
    const std::string item = body.at("item");
    const int choice = body.at("choice");
    const std::int64_t elapsed = body.at("elapsed_ms");
    const std::size_t before = sl->session.records.size();
    json out = submit_answer(sl->session, item, choice, elapsed, {&theory_, &templates_});
    if (sl->session.records.size() != before) {
        append(id, {{"event", "answer"}, {"at", now_iso()}, {"item", item}, {"choice", choice}, {"elapsed_ms", elapsed}});
        write_snapshot(sl->session);
    }
    return out;
}

json TrialService::open_response(const std::string& id, const json& body) {
    auto sl = slot(id);
    std::lock_guard lock(sl->mutex);
    const std::string item = body.at("item");
    const std::string text = body.at("text");
    const std::int64_t elapsed = body.at("elapsed_ms");
    const std::size_t before = sl->session.open_responses.size();
    json out = submit_open_response(sl->session, item, text, elapsed);
    if (sl->session.open_responses.size() != before) {
        append(id, {{"event", "open_response"}, {"at", now_iso()}, {"item", item}, {"text", text}, {"elapsed_ms", elapsed}});
        write_snapshot(sl->session);
    }
    return out;
}

TrialSession TrialService::snapshot(const std::string& id) const {
    auto sl = slot(id);
    std::lock_guard lock(sl->mutex);
    return sl->session;
}

std::vector<TrialSession> TrialService::sessions(const std::string& study) const {
    std::vector<std::shared_ptr<Slot>> all;
    {
        std::shared_lock lock(map_mutex_);
        for (const auto& [id, s] : slots_) all.push_back(s);
    }
    std::vector<TrialSession> out;
    for (const auto& s : all) {
        std::lock_guard lock(s->mutex);
        if (s->session.config.study == study) out.push_back(s->session);
    }
    return out;
}

json TrialService::stats(const std::string& study) {
    std::vector<TrialSession> done;
    std::size_t open = 0;
    for (auto& s : sessions(study)) {
        if (s.completed()) done.push_back(std::move(s));
        else ++open;
    }
    json j = to_json(group_stats(done));
    j["study"] = study;
    j["completed_sessions"] = done.size();
    j["incomplete_sessions"] = open;
    return j;
}

void TrialService::mount(httplib::Server& server) {
    auto guard = [](httplib::Response& res, auto&& fn) {
        try {
            res.set_content(fn().dump(), "application/json");
        } catch (const NotFound& e) {
            res.status = 404;
            res.set_content(json{{"error", e.what()}}.dump(), "application/json");
        } catch (const ProtocolError& e) {
            res.status = 409;
            res.set_content(json{{"error", e.what()}}.dump(), "application/json");
        } catch (const std::exception& e) {
            res.status = 400;
            res.set_content(json{{"error", e.what()}}.dump(), "application/json");
        }
    };
    auto body = [](const httplib::Request& req) { return req.body.empty() ? json::object() : json::parse(req.body); };
    server.Post("/sessions", [this, guard, body](const httplib::Request& req, httplib::Response& res) {
        res.status = 201;
        guard(res, [&] { return create(body(req)); });
    });
    server.Get(R"(/sessions/([^/]+)/next)", [this, guard](const httplib::Request& req, httplib::Response& res) {
        guard(res, [&] { return next(req.matches[1]); });
    });
    server.Get(R"(/sessions/([^/]+))", [this, guard](const httplib::Request& req, httplib::Response& res) {
        guard(res, [&] { return to_json(snapshot(req.matches[1])); });
    });
    server.Post(R"(/sessions/([^/]+)/answer)", [this, guard, body](const httplib::Request& req, httplib::Response& res) {
        guard(res, [&] { return answer(req.matches[1], body(req)); });
    });
    server.Post(R"(/sessions/([^/]+)/open-response)",
                [this, guard, body](const httplib::Request& req, httplib::Response& res) {
                    guard(res, [&] { return open_response(req.matches[1], body(req)); });
                });
    server.Get(R"(/studies/([^/]+)/stats)", [this, guard](const httplib::Request& req, httplib::Response& res) {
        guard(res, [&] { return stats(req.matches[1]); });
    });
}

}  // namespace cogwin::trial
