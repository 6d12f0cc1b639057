#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"

namespace wordnorm {

// Elements of a finitely generated free group F_rank.  Letter +i stands for
// the basis element x_{i-1}, letter -i for its inverse; letters are never 0
// and never exceed the rank in magnitude.  A ReducedWord is freely reduced:
// no adjacent pair l, -l.  All operations return new reduced words.
struct ReducedWord {
    std::vector<int> letters;
    int rank = 1;

    bool is_identity() const { return letters.empty(); }
    int length() const { return static_cast<int>(letters.size()); }

    friend bool operator==(const ReducedWord&, const ReducedWord&) = default;
};

// Canonical order: shorter first, then lexicographic on the raw letters.
inline bool word_less(const ReducedWord& a, const ReducedWord& b) {
    if (a.letters.size() != b.letters.size()) return a.letters.size() < b.letters.size();
    return std::lexicographical_compare(a.letters.begin(), a.letters.end(),
                                        b.letters.begin(), b.letters.end());
}

struct ReducedWordHash {
    std::size_t operator()(const ReducedWord& w) const {
        std::size_t h = 1469598103934665603ull;
        for (int l : w.letters) {
            h ^= static_cast<std::size_t>(static_cast<unsigned>(l));
            h *= 1099511628211ull;
        }
        return h;
    }
};

inline void check_letters(const std::vector<int>& letters, int rank) {
    if (rank < 1) throw MalformedInputError("rank must be a positive integer");
    for (int l : letters)
        if (l == 0 || std::abs(l) > rank)
            throw MalformedInputError("letter " + std::to_string(l) +
                                      " out of range for rank " + std::to_string(rank));
}

// Free reduction by a single stack pass.
inline ReducedWord reduce(const std::vector<int>& letters, int rank) {
    check_letters(letters, rank);
    std::vector<int> out;
    out.reserve(letters.size());
    for (int l : letters) {
        if (!out.empty() && out.back() == -l)
            out.pop_back();
        else
            out.push_back(l);
    }
    return ReducedWord{std::move(out), rank};
}

inline void check_same_rank(const ReducedWord& a, const ReducedWord& b) {
    if (a.rank != b.rank)
        throw ContractError("rank mismatch: " + std::to_string(a.rank) + " vs " +
                            std::to_string(b.rank));
}

inline ReducedWord product(const ReducedWord& a, const ReducedWord& b) {
    check_same_rank(a, b);
    // Only the seam can cancel; splice with a stack over the boundary.
    std::vector<int> out = a.letters;
    for (int l : b.letters) {
        if (!out.empty() && out.back() == -l)
            out.pop_back();
        else
            out.push_back(l);
    }
    return ReducedWord{std::move(out), a.rank};
}

inline ReducedWord inverse(const ReducedWord& a) {
    std::vector<int> out(a.letters.rbegin(), a.letters.rend());
    for (int& l : out) l = -l;
    return ReducedWord{std::move(out), a.rank};
}

// a^b = b^{-1} a b.
inline ReducedWord conjugate(const ReducedWord& a, const ReducedWord& b) {
    return product(product(inverse(b), a), b);
}

inline ReducedWord word_power(const ReducedWord& a, int k) {
    ReducedWord base = k < 0 ? inverse(a) : a;
    ReducedWord acc{{}, a.rank};
    for (int i = 0; i < std::abs(k); ++i) acc = product(acc, base);
    return acc;
}

// Exponent-sum image in Z^rank.
using AbelianVector = std::vector<long long>;

inline AbelianVector abelianize(const ReducedWord& w) {
    AbelianVector v(static_cast<std::size_t>(w.rank), 0);
    for (int l : w.letters) v[static_cast<std::size_t>(std::abs(l) - 1)] += l > 0 ? 1 : -1;
    return v;
}

// All reduced words of length <= n, in canonical order (BFS by length, letters
// ascending).  Cardinality is 1 + sum_{j<=n} 2r(2r-1)^{j-1}; the cap guards
// against runaway enumerations and throws before allocating past it.
inline std::vector<ReducedWord> enumerate_ball(int rank, int n, std::size_t cap = 1000000) {
    if (rank < 1) throw MalformedInputError("rank must be a positive integer");
    if (n < 0) throw MalformedInputError("ball radius must be nonnegative");
    std::vector<int> alphabet;
    for (int i = 1; i <= rank; ++i) {
        alphabet.push_back(-i);
        alphabet.push_back(i);
    }
    std::sort(alphabet.begin(), alphabet.end());
    std::vector<ReducedWord> ball{ReducedWord{{}, rank}};
    std::size_t layer_begin = 0;
    for (int len = 1; len <= n; ++len) {
        std::size_t layer_end = ball.size();
        for (std::size_t i = layer_begin; i < layer_end; ++i) {
            for (int l : alphabet) {
                if (!ball[i].letters.empty() && ball[i].letters.back() == -l) continue;
                if (ball.size() >= cap)
                    throw ResourceLimitError("ball(" + std::to_string(rank) + ", " +
                                             std::to_string(n) + ") exceeds cap " +
                                             std::to_string(cap));
                std::vector<int> ext = ball[i].letters;
                ext.push_back(l);
                ball.push_back(ReducedWord{std::move(ext), rank});
            }
        }
        layer_begin = layer_end;
    }
    return ball;
}

// Inverse-closed set of nonidentity reduced words over a fixed rank, stored in
// canonical order.  The identity is rejected rather than dropped: a zero-length
// generator would make every word norm degenerate.
struct SymmetricWordSet {
    int rank = 1;
    std::vector<ReducedWord> words;

    bool contains(const ReducedWord& w) const {
        return std::binary_search(words.begin(), words.end(), w, word_less);
    }
    // Index in canonical order, -1 when absent.
    int index_of(const ReducedWord& w) const {
        auto it = std::lower_bound(words.begin(), words.end(), w, word_less);
        if (it == words.end() || !(*it == w)) return -1;
        return static_cast<int>(it - words.begin());
    }
};

inline SymmetricWordSet symmetric_closure(const std::vector<ReducedWord>& gens, int rank) {
    std::vector<ReducedWord> all;
    for (const ReducedWord& g : gens) {
        if (g.rank != rank) throw ContractError("generator rank mismatch");
        if (g.is_identity())
            throw MalformedInputError("the identity cannot be a word-set generator");
        all.push_back(g);
        all.push_back(inverse(g));
    }
    std::sort(all.begin(), all.end(), word_less);
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return SymmetricWordSet{rank, std::move(all)};
}

// The standard basis generators x_0..x_{rank-1} and their inverses.
inline SymmetricWordSet basis_word_set(int rank) {
    std::vector<ReducedWord> gens;
    for (int i = 1; i <= rank; ++i) gens.push_back(ReducedWord{{i}, rank});
    return symmetric_closure(gens, rank);
}

// Space-separated signed letters; the identity prints as "e".
inline std::string word_str(const ReducedWord& w) {
    if (w.is_identity()) return "e";
    std::string s;
    for (std::size_t i = 0; i < w.letters.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(w.letters[i]);
    }
    return s;
}

inline ReducedWord parse_word(const std::string& text, int rank) {
    std::istringstream in(text);
    std::vector<int> letters;
    std::string tok;
    while (in >> tok) {
        if (tok == "e") continue;
        std::size_t pos = 0;
        int l = 0;
        try {
            l = std::stoi(tok, &pos);
        } catch (const std::exception&) {
            throw MalformedInputError("bad word letter '" + tok + "'");
        }
        if (pos != tok.size()) throw MalformedInputError("bad word letter '" + tok + "'");
        letters.push_back(l);
    }
    return reduce(letters, rank);
}

} // namespace wordnorm
