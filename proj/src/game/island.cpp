#include <cogwin/game/island.hpp>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace cogwin::game {

namespace {

const char* const kIslands[] = {"north island", "middle island", "south island"};
const char* const kResources[] = {"gold", "wood", "fish", "stone", "wheat"};

}  // namespace

IslandMap IslandMap::make(std::uint64_t seed) {
    IslandMap m;
    std::iota(m.territory.begin(), m.territory.end(), 0);
    if (seed != 0) {
        std::mt19937_64 rng(seed);
        std::shuffle(m.territory.begin(), m.territory.end(), rng);
    }
    const auto& lines = win_lines();
    for (int l = 0; l < 8; ++l) {
        Feature f;
        for (int i = 0; i < 3; ++i) f.territories[i] = m.territory[lines[l][i]];
        std::sort(f.territories.begin(), f.territories.end());
        f.island = l < 3;
        f.name = f.island ? kIslands[l] : kResources[l - 3];
        m.features[l] = f;
    }
    m.vocabulary = {
        {"x", "blue"},           {"o", "red"},          {"cell", "territory"},
        {"line", "win set"},     {"board", "map"},      {"pair", "near-complete set"},
        {"pairs", "near-complete sets"}, {"cross", "blue flag"}, {"crosses", "blue flags"},
        {"nought", "red flag"},  {"noughts", "red flags"},
    };
    return m;
}

bool IslandMap::valid() const {
    std::set<int> seen(territory.begin(), territory.end());
    if (seen.size() != 9 || *seen.begin() != 0 || *seen.rbegin() != 8) return false;
    const auto& lines = win_lines();
    for (int l = 0; l < 8; ++l) {
        std::array<int, 3> want{};
        for (int i = 0; i < 3; ++i) want[i] = territory[lines[l][i]];
        std::sort(want.begin(), want.end());
        if (features[l].territories != want) return false;
    }
    std::set<std::string> images;
    for (const auto& [k, v] : vocabulary) images.insert(v);
    return images.size() == vocabulary.size();
}

IslandMap IslandMap::inverse() const {
    IslandMap m;
    for (int i = 0; i < 9; ++i) m.territory[territory[i]] = i;
    const auto& lines = win_lines();
    // Lines of the inverse map are over territory space; its features list the
    // original cells so that applying both maps in turn is the identity.
    for (int l = 0; l < 8; ++l) {
        Feature f = features[l];
        for (int i = 0; i < 3; ++i) f.territories[i] = lines[l][i];
        m.features[l] = f;
    }
    for (const auto& [k, v] : vocabulary) m.vocabulary[v] = k;
    return m;
}

GameState islandize(const GameState& s, const IslandMap& m) {
    GameState out;
    for (int i = 0; i < 9; ++i) out.cells[m.territory[i]] = s.cells[i];
    return out;
}

}  // namespace cogwin::game
