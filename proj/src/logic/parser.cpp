#include <cogwin/logic/parser.hpp>

#include <cctype>

namespace cogwin::logic {

ParseError::ParseError(const std::string& msg, std::size_t line, std::size_t col)
    : std::runtime_error(msg + " at " + std::to_string(line) + ":" + std::to_string(col)),
      line_(line),
      col_(col) {}

namespace {

class Reader {
public:
    explicit Reader(std::string_view src, bool variable_predicates = false)
        : src_(src), variable_predicates_(variable_predicates) {}

    bool at_end() {
        skip();
        return pos_ >= src_.size();
    }

    Term term() {
        skip();
        if (peek() == '[') {
            ++pos_;
            std::vector<Term> items;
            skip();
            if (peek() == ']') {
                ++pos_;
                return Term::list(std::move(items));
            }
            for (;;) {
                items.push_back(term());
                skip();
                if (peek() == ',') {
                    ++pos_;
                    continue;
                }
                expect(']');
                return Term::list(std::move(items));
            }
        }
        auto id = ident();
        if (std::isupper(static_cast<unsigned char>(id[0])) || id[0] == '_') return Term::variable(id);
        return Term::constant(id);
    }

    Atom atom() {
        skip();
        auto name = ident();
        if (!variable_predicates_ && !std::islower(static_cast<unsigned char>(name[0])))
            fail("predicate names must start with a lowercase letter");
        if (name == "not") {
            expect('(');
            Atom inner = atom();
            if (inner.negated) fail("nested negation");
            expect(')');
            inner.negated = true;
            return inner;
        }
        std::vector<Term> args;
        skip();
        if (peek() == '(') {
            ++pos_;
            for (;;) {
                args.push_back(term());
                skip();
                if (peek() == ',') {
                    ++pos_;
                    continue;
                }
                expect(')');
                break;
            }
        }
        return Atom(name, std::move(args));
    }

    Clause clause() {
        Clause c;
        c.head = atom();
        if (c.head.negated) fail("negated clause head");
        skip();
        if (src_.substr(pos_, 2) == ":-") {
            pos_ += 2;
            for (;;) {
                c.body.push_back(atom());
                skip();
                if (peek() == ',') {
                    ++pos_;
                    continue;
                }
                break;
            }
        }
        expect('.');
        return c;
    }

    void expect(char ch) {
        skip();
        if (peek() != ch) fail(std::string("expected '") + ch + "'");
        ++pos_;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < pos_ && i < src_.size(); ++i) {
            if (src_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(msg, line, col);
    }

private:
    char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }

    void skip() {
        while (pos_ < src_.size()) {
            char ch = src_[pos_];
            if (std::isspace(static_cast<unsigned char>(ch))) {
                ++pos_;
            } else if (ch == '%') {
                while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    std::string ident() {
        skip();
        std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
            ++pos_;
        if (start == pos_) fail("expected identifier");
        return std::string(src_.substr(start, pos_ - start));
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    bool variable_predicates_ = false;
};

}  // namespace

Term parse_term(std::string_view text) {
    Reader r(text);
    Term t = r.term();
    if (!r.at_end()) r.fail("trailing input");
    return t;
}

Atom parse_atom(std::string_view text) {
    Reader r(text);
    Atom a = r.atom();
    if (!r.at_end()) r.fail("trailing input");
    return a;
}

Clause parse_clause(std::string_view text) {
    Reader r(text);
    Clause c = r.clause();
    if (!r.at_end()) r.fail("trailing input");
    return c;
}

Clause parse_template(std::string_view text) {
    Reader r(text, true);
    Clause c = r.clause();
    if (!r.at_end()) r.fail("trailing input");
    return c;
}

std::vector<Clause> parse_clauses(std::string_view text) {
    Reader r(text);
    std::vector<Clause> out;
    while (!r.at_end()) out.push_back(r.clause());
    return out;
}

}  // namespace cogwin::logic
