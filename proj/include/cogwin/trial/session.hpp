#pragma once

#include <cogwin/explain/explain.hpp>
#include <cogwin/game/island.hpp>
#include <cogwin/game/state.hpp>
#include <cogwin/game/symmetry.hpp>
#include <cogwin/logic/clause.hpp>

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cogwin::trial {

/// Raised for requests the session cannot accept in its current state.
class ProtocolError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Part { Intro, PreTest, Training, PostTest, OpenQuestions, Survey, Done };
enum class Arm { SelfLearning, MachineAided };
enum class Skin { Plain, Island };

std::string to_string(Part p);
std::string to_string(Arm a);
std::string to_string(Skin s);
Part part_from_string(const std::string& s);
Arm arm_from_string(const std::string& s);
Skin skin_from_string(const std::string& s);

struct PartCounts {
    int intro = 1;
    int pre_per_category = 5;
    int training_per_category = 3;
    int open = 6;
    int survey = 3;

    friend bool operator==(const PartCounts&, const PartCounts&) = default;
};

struct TrialConfig {
    std::string study = "default";
    Skin skin = Skin::Plain;
    std::uint64_t island_seed = 1;
    std::uint64_t bank_seed = 1;
    /// Fixed arm; otherwise assigned by enrollment order.
    std::optional<Arm> arm;
    PartCounts counts;

    friend bool operator==(const TrialConfig&, const TrialConfig&) = default;
};

struct Item {
    std::string id;
    Part part = Part::PreTest;
    int k = 0;
    game::GameState board;
    /// Training: the two candidate cells in presentation order.
    std::vector<int> options;
    int good = -1;
    int bad = -1;
    /// Post-test: symmetry applied to the matching pre-test board.
    game::Symmetry symmetry;
    /// Survey: question text and answer choices.
    std::string prompt;
    std::vector<std::string> choices;

    friend bool operator==(const Item&, const Item&) = default;
};

struct Record {
    std::string item;
    Part part = Part::PreTest;
    int k = 0;
    int choice = -1;
    bool correct = false;
    std::int64_t elapsed_ms = 0;

    friend bool operator==(const Record&, const Record&) = default;
};

struct OpenResponse {
    std::string item;
    std::string text;
    std::int64_t elapsed_ms = 0;

    friend bool operator==(const OpenResponse&, const OpenResponse&) = default;
};

struct TrialSession {
    std::string id;
    std::string participant;
    TrialConfig config;
    Arm arm = Arm::SelfLearning;
    std::vector<Item> intro, pre, training, post, survey;
    std::vector<Record> records;
    /// Post-test items chosen for open questions, once the post-test is complete.
    std::vector<std::string> open_items;
    std::vector<OpenResponse> open_responses;
    Part part = Part::Intro;
    std::size_t cursor = 0;

    bool completed() const { return part == Part::Done; }
    const std::vector<Item>& items(Part p) const;
    /// Item awaiting an answer, if the current part has one.
    const Item* current() const;
    const Item* find_item(const std::string& id) const;
    std::vector<const Record*> records_of(Part p) const;

    friend bool operator==(const TrialSession&, const TrialSession&) = default;
};

/// Question material for a new session; every item is derived from the config.
TrialSession create_session(const std::string& id, const std::string& participant, const TrialConfig& config, Arm arm);

/// Context the session needs to build payloads.
struct Presenter {
    const logic::Program* theory = nullptr;
    const explain::TemplateTable* templates = nullptr;
};

/// Payload for the current step; {"part":"done"} once completed.
nlohmann::json next_step(const TrialSession& s, const Presenter& presenter);

/// Records a move (or survey choice). Returns the feedback payload. Resubmitting
/// the last answer unchanged returns the same feedback without recording twice.
nlohmann::json submit_answer(TrialSession& s, const std::string& item, int choice, std::int64_t elapsed_ms,
                             const Presenter& presenter);

nlohmann::json submit_open_response(TrialSession& s, const std::string& item, const std::string& text,
                                    std::int64_t elapsed_ms);

/// Wrong post-test answers first, then correct ones by descending response time;
/// ties by question order. Throws ProtocolError before the post-test is complete.
std::vector<std::string> select_open_questions(const TrialSession& s, std::size_t count = 6);

nlohmann::json to_json(const TrialSession& s);
TrialSession session_from_json(const nlohmann::json& j);
nlohmann::json to_json(const TrialConfig& c);
TrialConfig config_from_json(const nlohmann::json& j);

}  // namespace cogwin::trial
