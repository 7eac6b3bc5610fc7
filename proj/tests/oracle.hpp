#pragma once

// Test-side reference implementations, written without the library's game code.

#include <cogwin/game/state.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <string>

namespace cogwin::oracle {

// Boards as nine-character strings over 'x', 'o' and 'e'.
inline constexpr const char* kLines[8] = {"012", "345", "678", "036", "147", "258", "048", "246"};

inline bool line_win(const std::string& b, char m) {
    for (auto l : kLines)
        if (b[l[0] - '0'] == m && b[l[1] - '0'] == m && b[l[2] - '0'] == m) return true;
    return false;
}

inline char mover(const std::string& b) {
    int x = 0, o = 0;
    for (char c : b) x += c == 'x', o += c == 'o';
    return x == o ? 'x' : 'o';
}

// Score for the mover: positive = win in (10 - score) plies, 0 draw, negative = loss.
inline int negamax(const std::string& b, std::map<std::string, int>& memo) {
    if (auto it = memo.find(b); it != memo.end()) return it->second;
    char me = mover(b), them = me == 'x' ? 'o' : 'x';
    int result;
    if (line_win(b, them)) {
        result = -10;
    } else if (b.find('e') == std::string::npos) {
        result = 0;
    } else {
        int best = -100;
        for (int i = 0; i < 9; ++i) {
            if (b[i] != 'e') continue;
            std::string t = b;
            t[i] = me;
            int v = -negamax(t, memo);
            // Pull wins and losses one ply towards zero per move made.
            if (v > 0) v -= 1;
            else if (v < 0) v += 1;
            best = std::max(best, v);
        }
        result = best;
    }
    memo[b] = result;
    return result;
}

inline void enumerate(const std::string& b, std::set<std::string>& out) {
    if (!out.insert(b).second) return;
    char me = mover(b);
    if (line_win(b, 'x') || line_win(b, 'o')) return;
    for (int i = 0; i < 9; ++i) {
        if (b[i] != 'e') continue;
        std::string t = b;
        t[i] = me;
        enumerate(t, out);
    }
}

inline const std::set<std::string>& reachable() {
    static const std::set<std::string> states = [] {
        std::set<std::string> s;
        enumerate("eeeeeeeee", s);
        return s;
    }();
    return states;
}

inline bool terminal(const std::string& b) {
    return line_win(b, 'x') || line_win(b, 'o') || b.find('e') == std::string::npos;
}

// x to move wins within n own moves whatever o replies.
inline bool x_wins_within(const std::string& s, int n) {
    if (n <= 0) return false;
    for (int i = 0; i < 9; ++i) {
        if (s[i] != 'e') continue;
        std::string t = s;
        t[i] = 'x';
        if (line_win(t, 'x')) return true;
        if (terminal(t)) continue;
        bool all = true;
        for (int j = 0; j < 9 && all; ++j) {
            if (t[j] != 'e') continue;
            std::string u = t;
            u[j] = 'o';
            if (line_win(u, 'o') || terminal(u) || !x_wins_within(u, n - 1)) all = false;
        }
        if (all) return true;
    }
    return false;
}

inline int fastest(const std::string& s) {
    for (int n = 1; n <= 5; ++n)
        if (x_wins_within(s, n)) return n;
    return 0;
}

// A move keeps the fastest forced win when the opponent cannot stretch it.
inline bool keeps_fastest(const std::string& s, const std::string& t) {
    const int k = fastest(s);
    if (line_win(t, 'x')) return k == 1;
    if (terminal(t)) return false;
    for (int j = 0; j < 9; ++j) {
        if (t[j] != 'e') continue;
        std::string u = t;
        u[j] = 'o';
        if (line_win(u, 'o') || terminal(u) || !x_wins_within(u, k - 1)) return false;
    }
    return true;
}

}  // namespace cogwin::oracle
