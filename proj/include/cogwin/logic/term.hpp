#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cogwin::logic {

/// Interned identifier. Symbols are process-global and never freed.
using Symbol = std::uint32_t;

Symbol intern(std::string_view text);
const std::string& symbol_text(Symbol sym);

/// Immutable first-order term: a variable, a constant, or a list of terms.
///
/// Variables are identified by (name, id). Parsed variables carry id 0; the
/// resolution engine renames clause variables apart by assigning fresh ids.
class Term {
public:
    enum class Kind : std::uint8_t { Variable, Constant, List };

    Term() = default;

    static Term variable(std::string_view name, std::uint32_t id = 0);
    static Term variable(Symbol name, std::uint32_t id);
    static Term constant(std::string_view text);
    static Term constant(Symbol text);
    static Term list(std::vector<Term> items);

    Kind kind() const { return kind_; }
    bool is_variable() const { return kind_ == Kind::Variable; }
    bool is_constant() const { return kind_ == Kind::Constant; }
    bool is_list() const { return kind_ == Kind::List; }

    /// Variable name or constant text. Meaningless for lists.
    Symbol symbol() const { return sym_; }
    const std::string& text() const { return symbol_text(sym_); }
    std::uint32_t var_id() const { return id_; }

    std::span<const Term> items() const;

    bool is_ground() const;
    std::size_t hash() const;

    friend bool operator==(const Term& a, const Term& b);
    friend bool operator<(const Term& a, const Term& b);

private:
    Kind kind_{Kind::Constant};
    std::uint32_t id_{0};
    Symbol sym_{0};
    std::shared_ptr<const std::vector<Term>> items_;
};

std::string to_string(const Term& t);

struct TermHash {
    std::size_t operator()(const Term& t) const { return t.hash(); }
};

}  // namespace cogwin::logic
