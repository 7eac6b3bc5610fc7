#include <cogwin/trial/session.hpp>

#include <cogwin/game/minimax.hpp>
#include <cogwin/game/questions.hpp>

#include <algorithm>
#include <random>
#include <set>

namespace cogwin::trial {

using game::GameState;
using nlohmann::json;

namespace {

const char* const kPartNames[] = {"intro", "pre_test", "training", "post_test", "open_questions", "survey", "done"};
const char* const kArmNames[] = {"self_learning", "machine_aided"};
const char* const kSkinNames[] = {"plain", "island"};

struct SurveyQuestion {
    const char* prompt;
    std::vector<std::string> choices;
};

const std::vector<SurveyQuestion>& survey_questions() {
    static const std::vector<SurveyQuestion> q = {
        {"Gender", {"female", "male", "diverse", "prefer not to say"}},
        {"Age group", {"18-24", "25-34", "35-44", "45-54", "55-64", "65 or older"}},
        {"Highest education level", {"school", "bachelor", "master", "doctorate", "other"}},
    };
    return q;
}

template <typename E, std::size_t N>
E from_names(const char* const (&names)[N], const std::string& s, const char* what) {
    for (std::size_t i = 0; i < N; ++i)
        if (s == names[i]) return static_cast<E>(i);
    throw std::invalid_argument(std::string("unknown ") + what + ": " + s);
}

std::size_t part_size(const TrialSession& s, Part p) {
    if (p == Part::OpenQuestions) return s.open_items.size();
    if (p == Part::Done) return 0;
    return s.items(p).size();
}

void advance(TrialSession& s) {
    ++s.cursor;
    while (s.part != Part::Done && s.cursor >= part_size(s, s.part)) {
        s.part = static_cast<Part>(static_cast<int>(s.part) + 1);
        s.cursor = 0;
        if (s.part == Part::OpenQuestions) s.open_items = select_open_questions(s, static_cast<std::size_t>(s.config.counts.open));
    }
}

void settle(TrialSession& s) {
    // Skip leading empty parts.
    s.cursor = 0;
    while (s.part != Part::Done && part_size(s, s.part) == 0) {
        s.part = static_cast<Part>(static_cast<int>(s.part) + 1);
        if (s.part == Part::OpenQuestions) s.open_items = select_open_questions(s, static_cast<std::size_t>(s.config.counts.open));
    }
}

game::IslandMap island_map(const TrialSession& s) { return game::IslandMap::make(s.config.island_seed); }

// Cell index as shown to the participant.
int shown(const TrialSession& s, int cell) {
    return s.config.skin == Skin::Island ? island_map(s).territory[cell] : cell;
}

int from_shown(const TrialSession& s, int index) {
    if (s.config.skin != Skin::Island) return index;
    const auto m = island_map(s);
    for (int c = 0; c < 9; ++c)
        if (m.territory[c] == index) return c;
    return -1;
}

json board_json(const TrialSession& s, const GameState& b) {
    const GameState v = s.config.skin == Skin::Island ? game::islandize(b, island_map(s)) : b;
    json cells = json::array();
    for (auto c : v.cells) cells.push_back(c == game::Cell::X ? "x" : c == game::Cell::O ? "o" : "e");
    return cells;
}

json skin_json(const TrialSession& s) {
    json j{{"skin", to_string(s.config.skin)}};
    if (s.config.skin == Skin::Island) {
        const auto m = island_map(s);
        json features = json::array();
        for (const auto& f : m.features)
            features.push_back({{"territories", f.territories}, {"name", f.name}, {"island", f.island}});
        j["island_map"] = {{"features", features}, {"vocabulary", m.vocabulary}};
    }
    return j;
}

const Record* last_record(const TrialSession& s) { return s.records.empty() ? nullptr : &s.records.back(); }

json feedback(const TrialSession& s, const Item& item, const Record& r, const Presenter& presenter) {
    json j{{"recorded", true}, {"item", item.id}, {"part", to_string(item.part)}};
    if (item.part != Part::Training) return j;
    json labels = json::array();
    for (int c : item.options) labels.push_back({{"cell", shown(s, c)}, {"optimal", c == item.good}});
    j["labels"] = labels;
    j["correct"] = r.correct;
    if (s.arm == Arm::MachineAided && presenter.theory && presenter.templates) {
        auto p = explain::explain(*presenter.theory, item.board, item.k, *presenter.templates, item.board.place(item.bad));
        if (s.config.skin == Skin::Island) p = explain::render_island(p, island_map(s));
        j["explanation"] = explain::to_json(p);
    }
    return j;
}

game::Symmetry pick_symmetry(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> d(1, 7);
    return game::Symmetry::all()[static_cast<std::size_t>(d(rng))];
}

}  // namespace

std::string to_string(Part p) { return kPartNames[static_cast<int>(p)]; }
std::string to_string(Arm a) { return kArmNames[static_cast<int>(a)]; }
std::string to_string(Skin s) { return kSkinNames[static_cast<int>(s)]; }
Part part_from_string(const std::string& s) { return from_names<Part>(kPartNames, s, "part"); }
Arm arm_from_string(const std::string& s) { return from_names<Arm>(kArmNames, s, "arm"); }
Skin skin_from_string(const std::string& s) { return from_names<Skin>(kSkinNames, s, "skin"); }

const std::vector<Item>& TrialSession::items(Part p) const {
    static const std::vector<Item> none;
    switch (p) {
        case Part::Intro: return intro;
        case Part::PreTest: return pre;
        case Part::Training: return training;
        case Part::PostTest: return post;
        case Part::Survey: return survey;
        default: return none;
    }
}

const Item* TrialSession::current() const {
    if (part == Part::Done) return nullptr;
    if (part == Part::OpenQuestions) return cursor < open_items.size() ? find_item(open_items[cursor]) : nullptr;
    const auto& v = items(part);
    return cursor < v.size() ? &v[cursor] : nullptr;
}

const Item* TrialSession::find_item(const std::string& id) const {
    for (const auto* v : {&intro, &pre, &training, &post, &survey})
        for (const auto& i : *v)
            if (i.id == id) return &i;
    return nullptr;
}

std::vector<const Record*> TrialSession::records_of(Part p) const {
    std::vector<const Record*> out;
    for (const auto& r : records)
        if (r.part == p) out.push_back(&r);
    return out;
}

TrialSession create_session(const std::string& id, const std::string& participant, const TrialConfig& config, Arm arm) {
    const auto& c = config.counts;
    if (c.intro < 0 || c.pre_per_category < 0 || c.training_per_category < 0 || c.open < 0 || c.survey < 0 ||
        c.survey > static_cast<int>(survey_questions().size()))
        throw std::invalid_argument("invalid part counts");
    TrialSession s;
    s.id = id;
    s.participant = participant;
    s.config = config;
    s.arm = arm;
    std::mt19937_64 rng(config.bank_seed);

    for (int i = 0; i < c.intro; ++i) {
        Item it;
        it.id = "intro-" + std::to_string(i + 1);
        it.part = Part::Intro;
        s.intro.push_back(it);
    }
    std::vector<Item> pre;
    for (int k = 1; k <= 3; ++k) {
        for (const auto& b : game::question_bank(k, static_cast<std::size_t>(c.pre_per_category), config.bank_seed + k)) {
            Item it;
            it.part = Part::PreTest;
            it.k = k;
            it.board = b;
            pre.push_back(it);
        }
    }
    std::shuffle(pre.begin(), pre.end(), rng);
    for (std::size_t i = 0; i < pre.size(); ++i) {
        pre[i].id = "pre-" + std::to_string(i + 1);
        Item post = pre[i];
        post.id = "post-" + std::to_string(i + 1);
        post.part = Part::PostTest;
        post.symmetry = pick_symmetry(rng);
        post.board = game::apply_symmetry(pre[i].board, post.symmetry);
        s.post.push_back(post);
    }
    s.pre = std::move(pre);

    for (int k = 1; k <= 3; ++k) {
        std::set<game::GameState> classes;
        for (const auto& b : game::canonical_pool(k)) classes.insert(game::canonical(b));
        int taken = 0;
        for (const auto& b0 : game::question_bank(k, classes.size(), config.bank_seed + 100 + k)) {
            if (taken == c.training_per_category) break;
            Item it;
            it.part = Part::Training;
            it.k = k;
            it.board = game::apply_symmetry(b0, pick_symmetry(rng));
            std::vector<int> good, bad;
            for (int cell : game::legal_moves(it.board))
                (game::is_optimal_move(it.board, it.board.place(cell)) ? good : bad).push_back(cell);
            // A board needs both a good and a bad option to be shown as a choice.
            if (good.empty() || bad.empty()) continue;
            std::uniform_int_distribution<std::size_t> dg(0, good.size() - 1), db(0, bad.size() - 1);
            it.good = good[dg(rng)];
            it.bad = bad[db(rng)];
            it.options = {it.good, it.bad};
            if (std::uniform_int_distribution<int>(0, 1)(rng)) std::swap(it.options[0], it.options[1]);
            it.id = "train-" + std::to_string(s.training.size() + 1);
            s.training.push_back(it);
            ++taken;
        }
        if (taken < c.training_per_category)
            throw std::invalid_argument("not enough training boards for win_" + std::to_string(k));
    }
    for (int i = 0; i < c.survey; ++i) {
        Item it;
        it.id = "survey-" + std::to_string(i + 1);
        it.part = Part::Survey;
        it.prompt = survey_questions()[static_cast<std::size_t>(i)].prompt;
        it.choices = survey_questions()[static_cast<std::size_t>(i)].choices;
        s.survey.push_back(it);
    }
    s.part = Part::Intro;
    settle(s);
    return s;
}

json next_step(const TrialSession& s, const Presenter&) {
    if (s.completed()) return {{"session", s.id}, {"part", "done"}};
    const Item* it = s.current();
    json j{{"session", s.id},
           {"part", to_string(s.part)},
           {"index", s.cursor},
           {"total", part_size(s, s.part)},
           {"item", it->id}};
    switch (s.part) {
        case Part::Survey:
            j["prompt"] = it->prompt;
            j["choices"] = it->choices;
            return j;
        case Part::OpenQuestions: {
            j.update(skin_json(s));
            j["board"] = board_json(s, it->board);
            for (const auto& r : s.records)
                if (r.item == it->id) j["your_move"] = shown(s, r.choice);
            j["prompt"] = "Describe the strategy behind the move you made here.";
            return j;
        }
        default:
            j.update(skin_json(s));
            j["board"] = board_json(s, it->board);
            j["to_move"] = "x";
            if (s.part == Part::Training) {
                json opts = json::array();
                for (int c : it->options) opts.push_back(shown(s, c));
                j["options"] = opts;
            }
            return j;
    }
}

json submit_answer(TrialSession& s, const std::string& item, int choice, std::int64_t elapsed_ms,
                   const Presenter& presenter) {
    if (elapsed_ms < 0) throw ProtocolError("elapsed time must not be negative");
    if (const Record* last = last_record(s); last && last->item == item) {
        const Item* it = s.find_item(item);
        const int cell = it->part == Part::Survey ? choice : from_shown(s, choice);
        if (last->choice != cell) throw ProtocolError("item " + item + " was already answered differently");
        return feedback(s, *it, *last, presenter);
    }
    if (s.completed()) throw ProtocolError("session is complete");
    if (s.part == Part::OpenQuestions) throw ProtocolError("open questions take a text response");
    const Item* it = s.current();
    if (!s.find_item(item)) throw ProtocolError("unknown item " + item);
    if (it->id != item) throw ProtocolError("expected an answer to " + it->id + ", got " + item);

    Record r{item, it->part, it->k, -1, false, elapsed_ms};
    if (it->part == Part::Survey) {
        if (choice < 0 || choice >= static_cast<int>(it->choices.size())) throw ProtocolError("choice out of range");
        r.choice = choice;
    } else {
        const int cell = from_shown(s, choice);
        if (cell < 0 || cell > 8) throw ProtocolError("cell out of range");
        if (it->part == Part::Training) {
            if (std::find(it->options.begin(), it->options.end(), cell) == it->options.end())
                throw ProtocolError("choice is not one of the presented moves");
            r.correct = cell == it->good;
        } else {
            if (it->board.cells[static_cast<std::size_t>(cell)] != game::Cell::Empty)
                throw ProtocolError("cell is occupied");
            r.correct = it->part == Part::Intro || game::is_optimal_move(it->board, it->board.place(cell));
        }
        r.choice = cell;
    }
    s.records.push_back(r);
    const Item copy = *it;
    advance(s);
    json j = feedback(s, copy, s.records.back(), presenter);
    j["next_part"] = to_string(s.part);
    return j;
}

json submit_open_response(TrialSession& s, const std::string& item, const std::string& text, std::int64_t elapsed_ms) {
    if (elapsed_ms < 0) throw ProtocolError("elapsed time must not be negative");
    if (!s.open_responses.empty() && s.open_responses.back().item == item) {
        if (s.open_responses.back().text != text) throw ProtocolError("item " + item + " was already answered differently");
        return {{"recorded", true}, {"item", item}, {"part", "open_questions"}};
    }
    if (s.part != Part::OpenQuestions) throw ProtocolError("not in the open questions part");
    if (s.open_items[s.cursor] != item) throw ProtocolError("expected a response to " + s.open_items[s.cursor]);
    s.open_responses.push_back({item, text, elapsed_ms});
    advance(s);
    return {{"recorded", true}, {"item", item}, {"part", "open_questions"}, {"next_part", to_string(s.part)}};
}

std::vector<std::string> select_open_questions(const TrialSession& s, std::size_t count) {
    auto post = s.records_of(Part::PostTest);
    if (post.size() < s.post.size()) throw ProtocolError("post-test is not complete");
    std::vector<std::pair<const Record*, std::size_t>> ranked;
    for (std::size_t i = 0; i < post.size(); ++i) ranked.emplace_back(post[i], i);
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.first->correct != b.first->correct) return !a.first->correct;
        if (a.first->correct && a.first->elapsed_ms != b.first->elapsed_ms)
            return a.first->elapsed_ms > b.first->elapsed_ms;
        return a.second < b.second;
    });
    std::vector<std::string> out;
    for (std::size_t i = 0; i < ranked.size() && i < count; ++i) out.push_back(ranked[i].first->item);
    return out;
}

json to_json(const TrialConfig& c) {
    json j{{"study", c.study},
           {"skin", to_string(c.skin)},
           {"island_seed", c.island_seed},
           {"bank_seed", c.bank_seed},
           {"counts",
            {{"intro", c.counts.intro},
             {"pre_per_category", c.counts.pre_per_category},
             {"training_per_category", c.counts.training_per_category},
             {"open", c.counts.open},
             {"survey", c.counts.survey}}}};
    j["arm"] = c.arm ? json(to_string(*c.arm)) : json(nullptr);
    return j;
}

TrialConfig config_from_json(const json& j) {
    TrialConfig c;
    c.study = j.value("study", c.study);
    c.skin = skin_from_string(j.value("skin", to_string(c.skin)));
    c.island_seed = j.value("island_seed", c.island_seed);
    c.bank_seed = j.value("bank_seed", c.bank_seed);
    if (j.contains("arm") && !j["arm"].is_null()) c.arm = arm_from_string(j["arm"].get<std::string>());
    if (j.contains("counts")) {
        const auto& k = j["counts"];
        c.counts.intro = k.value("intro", c.counts.intro);
        c.counts.pre_per_category = k.value("pre_per_category", c.counts.pre_per_category);
        c.counts.training_per_category = k.value("training_per_category", c.counts.training_per_category);
        c.counts.open = k.value("open", c.counts.open);
        c.counts.survey = k.value("survey", c.counts.survey);
    }
    return c;
}

namespace {

json item_json(const Item& it) {
    return {{"id", it.id},          {"part", to_string(it.part)}, {"k", it.k},
            {"board", it.board.str()}, {"options", it.options},  {"good", it.good},
            {"bad", it.bad},        {"symmetry", it.symmetry.name()}, {"prompt", it.prompt},
            {"choices", it.choices}};
}

Item item_from_json(const json& j) {
    Item it;
    it.id = j.at("id");
    it.part = part_from_string(j.at("part"));
    it.k = j.at("k");
    it.board = GameState::parse(j.at("board").get<std::string>());
    it.options = j.at("options").get<std::vector<int>>();
    it.good = j.at("good");
    it.bad = j.at("bad");
    it.symmetry = game::Symmetry::from_name(j.at("symmetry").get<std::string>());
    it.prompt = j.at("prompt");
    it.choices = j.at("choices").get<std::vector<std::string>>();
    return it;
}

}  // namespace

json to_json(const TrialSession& s) {
    auto items = [](const std::vector<Item>& v) {
        json a = json::array();
        for (const auto& i : v) a.push_back(item_json(i));
        return a;
    };
    json records = json::array();
    for (const auto& r : s.records)
        records.push_back({{"item", r.item},
                           {"part", to_string(r.part)},
                           {"k", r.k},
                           {"choice", r.choice},
                           {"correct", r.correct},
                           {"elapsed_ms", r.elapsed_ms}});
    json open = json::array();
    for (const auto& o : s.open_responses) open.push_back({{"item", o.item}, {"text", o.text}, {"elapsed_ms", o.elapsed_ms}});
    return {{"id", s.id},
            {"participant", s.participant},
            {"config", to_json(s.config)},
            {"arm", to_string(s.arm)},
            {"intro", items(s.intro)},
            {"pre", items(s.pre)},
            {"training", items(s.training)},
            {"post", items(s.post)},
            {"survey", items(s.survey)},
            {"records", records},
            {"open_items", s.open_items},
            {"open_responses", open},
            {"part", to_string(s.part)},
            {"cursor", s.cursor}};
}

TrialSession session_from_json(const json& j) {
    TrialSession s;
    s.id = j.at("id");
    s.participant = j.at("participant");
    s.config = config_from_json(j.at("config"));
    s.arm = arm_from_string(j.at("arm"));
    auto items = [](const json& a) {
        std::vector<Item> v;
        for (const auto& i : a) v.push_back(item_from_json(i));
        return v;
    };
    s.intro = items(j.at("intro"));
    s.pre = items(j.at("pre"));
    s.training = items(j.at("training"));
    s.post = items(j.at("post"));
    s.survey = items(j.at("survey"));
    for (const auto& r : j.at("records"))
        s.records.push_back({r.at("item"), part_from_string(r.at("part")), r.at("k"), r.at("choice"), r.at("correct"),
                             r.at("elapsed_ms")});
    s.open_items = j.at("open_items").get<std::vector<std::string>>();
    for (const auto& o : j.at("open_responses")) s.open_responses.push_back({o.at("item"), o.at("text"), o.at("elapsed_ms")});
    s.part = part_from_string(j.at("part"));
    s.cursor = j.at("cursor");
    return s;
}

}  // namespace cogwin::trial
