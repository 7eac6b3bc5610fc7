#pragma once

#include <cogwin/game/state.hpp>

#include <array>
#include <string>

namespace cogwin::game {

/// One of the eight dihedral transforms of the board.
class Symmetry {
public:
    enum Element : std::uint8_t {
        Identity,
        Rotate90,
        Rotate180,
        Rotate270,
        FlipHorizontal,
        FlipVertical,
        Transpose,
        AntiTranspose
    };

    constexpr Symmetry(Element e = Identity) : e_(e) {}  // NOLINT(google-explicit-constructor)
    static const std::array<Symmetry, 8>& all();
    static Symmetry from_name(std::string_view name);

    Element element() const { return e_; }
    std::string name() const;
    /// Cell of the source board that lands on `cell` of the transformed board.
    int source(int cell) const;
    /// Where `cell` of the source board lands.
    int target(int cell) const;
    /// (*this * g)(s) == apply(*this, apply(g, s))
    Symmetry operator*(Symmetry g) const;
    Symmetry inverse() const;

    friend bool operator==(Symmetry, Symmetry) = default;

private:
    Element e_;
};

GameState apply_symmetry(const GameState& s, Symmetry g);
/// Smallest image of s under the eight symmetries.
GameState canonical(const GameState& s);
bool isomorphic(const GameState& a, const GameState& b);

}  // namespace cogwin::game
