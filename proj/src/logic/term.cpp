#include <cogwin/logic/term.hpp>

#include <deque>
#include <mutex>
#include <unordered_map>

namespace cogwin::logic {

namespace {

struct SymbolTable {
    std::mutex mu;
    std::deque<std::string> texts;
    std::unordered_map<std::string_view, Symbol> index;

    SymbolTable() { intern_locked(""); }

    Symbol intern_locked(std::string_view text) {
        auto it = index.find(text);
        if (it != index.end()) return it->second;
        texts.emplace_back(text);
        auto sym = static_cast<Symbol>(texts.size() - 1);
        index.emplace(texts.back(), sym);
        return sym;
    }
};

SymbolTable& table() {
    static SymbolTable t;
    return t;
}

}  // namespace

Symbol intern(std::string_view text) {
    auto& t = table();
    std::lock_guard lock(t.mu);
    return t.intern_locked(text);
}

const std::string& symbol_text(Symbol sym) {
    auto& t = table();
    std::lock_guard lock(t.mu);
    return t.texts.at(sym);
}

Term Term::variable(std::string_view name, std::uint32_t id) { return variable(intern(name), id); }

Term Term::variable(Symbol name, std::uint32_t id) {
    Term t;
    t.kind_ = Kind::Variable;
    t.sym_ = name;
    t.id_ = id;
    return t;
}

Term Term::constant(std::string_view text) { return constant(intern(text)); }

Term Term::constant(Symbol text) {
    Term t;
    t.kind_ = Kind::Constant;
    t.sym_ = text;
    return t;
}

Term Term::list(std::vector<Term> items) {
    Term t;
    t.kind_ = Kind::List;
    t.items_ = std::make_shared<const std::vector<Term>>(std::move(items));
    return t;
}

std::span<const Term> Term::items() const {
    if (!items_) return {};
    return {items_->data(), items_->size()};
}

bool Term::is_ground() const {
    switch (kind_) {
        case Kind::Variable: return false;
        case Kind::Constant: return true;
        case Kind::List:
            for (const auto& i : items())
                if (!i.is_ground()) return false;
            return true;
    }
    return true;
}

std::size_t Term::hash() const {
    std::size_t h = static_cast<std::size_t>(kind_) * 0x9e3779b97f4a7c15ULL;
    if (kind_ != Kind::List) return h ^ (std::size_t{sym_} << 20) ^ id_;
    for (const auto& i : items()) h = (h ^ i.hash()) * 0x100000001b3ULL;
    return h;
}

bool operator==(const Term& a, const Term& b) {
    if (a.kind_ != b.kind_) return false;
    switch (a.kind_) {
        case Term::Kind::Variable: return a.sym_ == b.sym_ && a.id_ == b.id_;
        case Term::Kind::Constant: return a.sym_ == b.sym_;
        case Term::Kind::List: {
            if (a.items_ == b.items_) return true;
            auto ai = a.items(), bi = b.items();
            if (ai.size() != bi.size()) return false;
            for (std::size_t i = 0; i < ai.size(); ++i)
                if (!(ai[i] == bi[i])) return false;
            return true;
        }
    }
    return false;
}

bool operator<(const Term& a, const Term& b) {
    if (a.kind_ != b.kind_) return a.kind_ < b.kind_;
    switch (a.kind_) {
        case Term::Kind::Variable:
            if (a.sym_ != b.sym_) return a.text() < b.text();
            return a.id_ < b.id_;
        case Term::Kind::Constant: return a.sym_ != b.sym_ && a.text() < b.text();
        case Term::Kind::List: {
            auto ai = a.items(), bi = b.items();
            for (std::size_t i = 0; i < ai.size() && i < bi.size(); ++i) {
                if (ai[i] < bi[i]) return true;
                if (bi[i] < ai[i]) return false;
            }
            return ai.size() < bi.size();
        }
    }
    return false;
}

std::string to_string(const Term& t) {
    switch (t.kind()) {
        case Term::Kind::Variable:
        case Term::Kind::Constant: return t.text();
        case Term::Kind::List: {
            std::string out = "[";
            bool first = true;
            for (const auto& i : t.items()) {
                if (!first) out += ',';
                first = false;
                out += to_string(i);
            }
            return out + "]";
        }
    }
    return {};
}

}  // namespace cogwin::logic
