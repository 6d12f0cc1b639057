#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "errors.hpp"

namespace wordnorm {

// Permutation of {0..degree-1}, stored as the image table img[x].
// Products compose as functions acting on the left: (a*b)(x) = a(b(x)),
// so b is applied first.  apply_word folds generator images in word order
// under this convention, which makes it a homomorphism from free words.
struct Perm {
    std::vector<int> img;

    int degree() const { return static_cast<int>(img.size()); }
    bool is_identity() const {
        for (int x = 0; x < degree(); ++x)
            if (img[static_cast<std::size_t>(x)] != x) return false;
        return true;
    }
    int operator()(int x) const { return img[static_cast<std::size_t>(x)]; }

    friend bool operator==(const Perm&, const Perm&) = default;
};

struct PermHash {
    std::size_t operator()(const Perm& p) const {
        std::size_t h = 1469598103934665603ull;
        for (int x : p.img) {
            h ^= static_cast<std::size_t>(x);
            h *= 1099511628211ull;
        }
        return h;
    }
};

inline Perm perm_identity(int degree) {
    Perm p;
    p.img.resize(static_cast<std::size_t>(degree));
    for (int x = 0; x < degree; ++x) p.img[static_cast<std::size_t>(x)] = x;
    return p;
}

inline void check_perm(const Perm& p) {
    std::vector<bool> seen(p.img.size(), false);
    for (int x : p.img) {
        if (x < 0 || x >= p.degree() || seen[static_cast<std::size_t>(x)])
            throw MalformedInputError("image table is not a bijection");
        seen[static_cast<std::size_t>(x)] = true;
    }
}

inline Perm operator*(const Perm& a, const Perm& b) {
    if (a.degree() != b.degree()) throw ContractError("permutation degree mismatch");
    Perm r;
    r.img.resize(a.img.size());
    for (std::size_t x = 0; x < a.img.size(); ++x)
        r.img[x] = a.img[static_cast<std::size_t>(b.img[x])];
    return r;
}

inline Perm perm_inverse(const Perm& p) {
    Perm r;
    r.img.resize(p.img.size());
    for (std::size_t x = 0; x < p.img.size(); ++x)
        r.img[static_cast<std::size_t>(p.img[x])] = static_cast<int>(x);
    return r;
}

// Disjoint cycles on 0-based points, least point first within a cycle,
// cycles ordered by least point; fixed points omitted; identity is "()".
inline std::string perm_str(const Perm& p) {
    std::string s;
    std::vector<bool> done(p.img.size(), false);
    for (int start = 0; start < p.degree(); ++start) {
        if (done[static_cast<std::size_t>(start)] || p(start) == start) continue;
        s += '(';
        int x = start;
        bool first = true;
        while (!done[static_cast<std::size_t>(x)]) {
            done[static_cast<std::size_t>(x)] = true;
            if (!first) s += ' ';
            s += std::to_string(x);
            first = false;
            x = p(x);
        }
        s += ')';
    }
    return s.empty() ? "()" : s;
}

// Parses cycle notation like "(0 1)(2 3)" against a fixed degree.  Point
// errors name the offending point and its column in the text.
inline Perm parse_perm(const std::string& text, int degree) {
    Perm p = perm_identity(degree);
    std::vector<bool> used(static_cast<std::size_t>(degree), false);
    std::size_t i = 0;
    const auto fail = [&](const std::string& msg) {
        throw MalformedInputError(msg + " at column " + std::to_string(i + 1) + " in '" +
                                  text + "'");
    };
    const auto skip_ws = [&] {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    };
    skip_ws();
    if (i == text.size()) fail("empty permutation");
    while (i < text.size()) {
        skip_ws();
        if (i == text.size()) break;
        if (text[i] != '(') fail("expected '('");
        ++i;
        std::vector<int> cycle;
        while (true) {
            skip_ws();
            if (i == text.size()) fail("unterminated cycle");
            if (text[i] == ')') {
                ++i;
                break;
            }
            if (text[i] == ',') {
                ++i;
                continue;
            }
            if (!std::isdigit(static_cast<unsigned char>(text[i]))) fail("expected a point");
            int pt = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                pt = pt * 10 + (text[i] - '0');
                ++i;
            }
            if (pt >= degree)
                fail("point " + std::to_string(pt) + " exceeds degree " + std::to_string(degree));
            if (used[static_cast<std::size_t>(pt)])
                fail("point " + std::to_string(pt) + " appears twice");
            used[static_cast<std::size_t>(pt)] = true;
            cycle.push_back(pt);
        }
        for (std::size_t k = 0; k < cycle.size(); ++k)
            p.img[static_cast<std::size_t>(cycle[k])] = cycle[(k + 1) % cycle.size()];
    }
    return p;
}

} // namespace wordnorm
