#pragma once

#include <cogwin/logic/clause.hpp>

#include <stdexcept>
#include <string_view>
#include <vector>

namespace cogwin::logic {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t line, std::size_t col);
    std::size_t line() const { return line_; }
    std::size_t column() const { return col_; }

private:
    std::size_t line_;
    std::size_t col_;
};

// Textual clause syntax:
//   head :- lit1, not(lit2), lit3.
//   fact.
// Identifiers starting with an uppercase letter or '_' are variables; other
// identifiers and digit strings are constants; [a,b,...] is a list.
// '%' starts a comment running to end of line.

Term parse_term(std::string_view text);
Atom parse_atom(std::string_view text);
Clause parse_clause(std::string_view text);
std::vector<Clause> parse_clauses(std::string_view text);
/// Like parse_clause but predicate names may be uppercase (second-order variables).
Clause parse_template(std::string_view text);

}  // namespace cogwin::logic
