#include <cogwin/game/symmetry.hpp>

#include <stdexcept>

namespace cogwin::game {

namespace {

using Perm = std::array<int, 9>;

int target_of(Symmetry::Element e, int cell) {
    int r = cell / 3, c = cell % 3;
    int nr = r, nc = c;
    switch (e) {
        case Symmetry::Identity: break;
        case Symmetry::Rotate90: nr = c, nc = 2 - r; break;
        case Symmetry::Rotate180: nr = 2 - r, nc = 2 - c; break;
        case Symmetry::Rotate270: nr = 2 - c, nc = r; break;
        case Symmetry::FlipHorizontal: nc = 2 - c; break;
        case Symmetry::FlipVertical: nr = 2 - r; break;
        case Symmetry::Transpose: nr = c, nc = r; break;
        case Symmetry::AntiTranspose: nr = 2 - c, nc = 2 - r; break;
    }
    return nr * 3 + nc;
}

const std::array<Perm, 8>& targets() {
    static const std::array<Perm, 8> table = [] {
        std::array<Perm, 8> t{};
        for (int e = 0; e < 8; ++e)
            for (int i = 0; i < 9; ++i) t[e][i] = target_of(static_cast<Symmetry::Element>(e), i);
        return t;
    }();
    return table;
}

Symmetry from_targets(const Perm& p) {
    for (int e = 0; e < 8; ++e)
        if (targets()[e] == p) return static_cast<Symmetry::Element>(e);
    throw std::logic_error("permutation is not a board symmetry");
}

const char* const kNames[] = {"identity", "rotate90",  "rotate180", "rotate270",
                              "flip_h",   "flip_v",    "transpose", "anti_transpose"};

}  // namespace

const std::array<Symmetry, 8>& Symmetry::all() {
    static const std::array<Symmetry, 8> elems{Identity,       Rotate90,     Rotate180, Rotate270,
                                               FlipHorizontal, FlipVertical, Transpose, AntiTranspose};
    return elems;
}

Symmetry Symmetry::from_name(std::string_view name) {
    for (int e = 0; e < 8; ++e)
        if (name == kNames[e]) return static_cast<Element>(e);
    throw std::invalid_argument("unknown symmetry: " + std::string(name));
}

std::string Symmetry::name() const { return kNames[e_]; }

int Symmetry::target(int cell) const { return targets()[e_][cell]; }

int Symmetry::source(int cell) const {
    for (int i = 0; i < 9; ++i)
        if (target(i) == cell) return i;
    return -1;
}

Symmetry Symmetry::operator*(Symmetry g) const {
    Perm p{};
    for (int i = 0; i < 9; ++i) p[i] = target(g.target(i));
    return from_targets(p);
}

Symmetry Symmetry::inverse() const {
    Perm p{};
    for (int i = 0; i < 9; ++i) p[target(i)] = i;
    return from_targets(p);
}

GameState apply_symmetry(const GameState& s, Symmetry g) {
    GameState t;
    for (int i = 0; i < 9; ++i) t.cells[g.target(i)] = s.cells[i];
    return t;
}

GameState canonical(const GameState& s) {
    GameState best = s;
    for (Symmetry g : Symmetry::all()) {
        GameState t = apply_symmetry(s, g);
        if (t < best) best = t;
    }
    return best;
}

bool isomorphic(const GameState& a, const GameState& b) { return canonical(a) == canonical(b); }

}  // namespace cogwin::game
