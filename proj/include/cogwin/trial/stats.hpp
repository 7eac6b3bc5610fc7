#pragma once

#include <cogwin/logic/clause.hpp>
#include <cogwin/trial/session.hpp>

#include <json.hpp>

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace cogwin::trial {

enum class Effect { Beneficial, Harmful, NoEffect };
std::string to_string(Effect e);

/// Mean per-session accuracy for one arm, keyed by category (0 = all categories).
struct GroupStats {
    Arm arm = Arm::SelfLearning;
    std::size_t sessions = 0;
    std::map<int, double> pre_accuracy;
    std::map<int, double> post_accuracy;
};

struct EffectRow {
    int k = 0;
    /// Post-test accuracy of the self-learning group.
    double c = 0;
    /// Post-test accuracy of the machine-aided group.
    double c_ex = 0;
    double e_ex = 0;
    Effect effect = Effect::NoEffect;
};

struct StudyStats {
    GroupStats self_learning;
    GroupStats machine_aided;
    std::vector<EffectRow> effects;
};

/// Fraction of correct answers in `part` for category k (0 = all); 0 when there are none.
double accuracy(const TrialSession& s, Part part, int k);

/// Throws ProtocolError when a session is incomplete or an arm is empty.
StudyStats group_stats(const std::vector<TrialSession>& sessions);

/// Sessions whose overall pre-test accuracy lies within one population standard
/// deviation of the mean, bounds included. Throws std::invalid_argument below two sessions.
std::vector<TrialSession> mediocre_subsample(const std::vector<TrialSession>& sessions);

struct ResponseAnnotation {
    std::string response_id;
    int primitive_coverage = 0;
    int level = 0;
    bool hq = false;
    std::string annotator;
};

/// Validates the level (0..4) and coverage (0..max_coverage); HQ iff level >= 3.
ResponseAnnotation annotate_response(const std::string& response_id, int level, int coverage,
                                     const std::string& annotator, int max_coverage);

/// Conditions of the win_k strategy: distinct primitive literals other than move/2
/// in the dependency closure of win_k, with board arguments generalised.
std::vector<logic::Atom> category_conditions(const logic::Program& theory, int k);

/// Synonym lists per condition pattern, one line per pattern: `pattern => word, phrase, ...`.
class Lexicon {
public:
    static Lexicon parse(std::string_view text);
    static Lexicon load(const std::string& path);

    /// Number of conditions with at least one synonym present in the text.
    int coverage(std::string_view text, const std::vector<logic::Atom>& conditions) const;

private:
    std::vector<std::pair<logic::Atom, std::vector<std::string>>> entries_;
};

/// Suggested primitive coverage of a verbal response for category k.
int coverage_assist(std::string_view text, int k, const logic::Program& theory, const Lexicon& lexicon);

nlohmann::json to_json(const StudyStats& s);
nlohmann::json to_json(const ResponseAnnotation& a);

}  // namespace cogwin::trial
