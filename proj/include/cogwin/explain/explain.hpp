#pragma once

#include <cogwin/game/island.hpp>
#include <cogwin/game/state.hpp>
#include <cogwin/logic/clause.hpp>

#include <json.hpp>

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cogwin::explain {

class ExplainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Template {
    logic::Atom pattern;  // negated for not(...) patterns
    std::optional<game::Player> mover;
    bool violated = false;
    std::string phrase;
};

/// Phrase table read from the template file (see data/explain/templates.txt).
class TemplateTable {
public:
    static TemplateTable parse(std::string_view text);
    static TemplateTable load(const std::string& path);

    /// First template matching the literal, or nullptr.
    const Template* find(const logic::Atom& literal, bool violated) const;
    const std::vector<Template>& entries() const { return entries_; }

private:
    std::vector<Template> entries_;
};

struct Sentence {
    /// The literal as evaluated on the concrete boards.
    logic::Atom literal;
    bool violated = false;
    std::string text;
    std::vector<int> cells;
    std::vector<std::array<int, 3>> lines;

    friend bool operator==(const Sentence&, const Sentence&) = default;
};

struct ExplanationPayload {
    game::GameState position;
    int k = 0;
    int suggested_move = -1;
    std::optional<int> rejected_move;
    /// Conditions of the suggested move, in execution order.
    std::vector<Sentence> sentences;
    /// First condition the rejected move fails.
    std::optional<Sentence> rejection;

    friend bool operator==(const ExplanationPayload&, const ExplanationPayload&) = default;
};

/// Runs win_k on `s`, takes the first answer as the suggested move and phrases
/// every primitive condition of its proof, with invented predicates and lower
/// win_j calls expanded in place and repeated conditions dropped. With
/// `rejected`, also phrases the first condition that move violates.
ExplanationPayload explain(const logic::Program& theory, const game::GameState& s, int k,
                           const TemplateTable& templates, std::optional<game::GameState> rejected = std::nullopt);

/// Same payload with boards and cells in territory order and text in the map's vocabulary.
ExplanationPayload render_island(const ExplanationPayload& payload, const game::IslandMap& m);

/// Replaces whole words and phrases by their images, longest phrase first.
std::string translate(std::string_view text, const std::map<std::string, std::string>& vocabulary);

nlohmann::json to_json(const ExplanationPayload& p);

}  // namespace cogwin::explain
