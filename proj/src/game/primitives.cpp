#include <cogwin/game/primitives.hpp>

#include <stdexcept>

namespace cogwin::game {

using logic::InstantiationError;
using logic::Term;
using Tuples = std::vector<std::vector<Term>>;

namespace {

GameState board_arg(const Term& t, const char* pred) {
    if (!t.is_ground()) throw InstantiationError(std::string(pred) + ": board argument is not bound");
    auto s = GameState::from_term(t);
    if (!s) throw std::invalid_argument(std::string(pred) + ": not a board: " + to_string(t));
    return *s;
}

Tuples move_fn(std::span<const Term> a) {
    GameState s = board_arg(a[0], "move/2");
    Tuples out;
    if (a[1].is_ground()) {
        auto t = GameState::from_term(a[1]);
        if (t && is_move(s, *t)) out.push_back({a[0], a[1]});
        return out;
    }
    for (const auto& t : successors(s)) out.push_back({a[0], t.to_term()});
    return out;
}

Tuples won_fn(std::span<const Term> a) {
    if (won_any(board_arg(a[0], "won/1"))) return {{a[0]}};
    return {};
}

Tuples drawn_fn(std::span<const Term> a) {
    if (drawn(board_arg(a[0], "drawn/1"))) return {{a[0]}};
    return {};
}

Tuples pairs_fn(std::span<const Term> a) {
    GameState s = board_arg(a[0], "number_of_pairs/3");
    Tuples out;
    for (Player p : {Player::X, Player::O}) {
        Term pt = Term::constant(std::string(1, to_char(p)));
        if (a[1].is_constant() && a[1].symbol() != pt.symbol()) continue;
        if (a[1].is_list()) continue;
        out.push_back({a[0], pt, Term::constant(std::to_string(number_of_pairs(s, p)))});
    }
    return out;
}

}  // namespace

std::shared_ptr<const logic::PrimitiveTable> game_primitives() {
    static const auto table = [] {
        auto t = std::make_shared<logic::PrimitiveTable>();
        t->add("move", 2, move_fn);
        t->add("won", 1, won_fn);
        t->add("drawn", 1, drawn_fn);
        t->add("number_of_pairs", 3, pairs_fn);
        return std::shared_ptr<const logic::PrimitiveTable>(t);
    }();
    return table;
}

std::shared_ptr<const logic::PrimitiveTable> game_primitives(std::initializer_list<std::string_view> names) {
    std::vector<logic::PredKey> keep;
    const auto& all = *game_primitives();
    for (const auto& k : all.keys())
        for (auto n : names)
            if (logic::symbol_text(k.name) == n) keep.push_back(k);
    return std::make_shared<const logic::PrimitiveTable>(all.restricted(keep));
}

}  // namespace cogwin::game
