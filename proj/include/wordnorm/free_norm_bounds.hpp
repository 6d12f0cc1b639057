#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "finite_group.hpp"
#include "free_words.hpp"
#include "norms.hpp"

namespace wordnorm {

// Certified interval around the minimal number of conjugated generators whose
// product is w.  Nothing here claims exact values: the upper side carries a
// decomposition that re-multiplies to the representative, the lower side names
// the oracle that produced it, and exact() only fires when the two meet.
struct NormBound {
    int lower = 0;
    std::optional<int> upper;
    // Upper certificate: factors (base, conjugator), base drawn from the
    // generating set, factor value = conjugator^{-1} * base * conjugator.
    std::vector<std::pair<ReducedWord, ReducedWord>> certificate_up;
    // Relator mode only: rewrite factors (relator or its inverse, conjugator)
    // multiplied onto w from the right to reach the representative.
    std::vector<std::pair<ReducedWord, ReducedWord>> kernel_certificate;
    // The word the upper certificate multiplies out to: w itself, or in
    // relator mode w times the kernel certificate.
    std::optional<ReducedWord> representative;
    std::string certificate_low;

    bool exact() const { return upper.has_value() && lower == *upper; }
};

struct SearchBudget {
    int max_factors = 6;
    int max_conj_len = 2;
    int max_relator_factors = 2;
    int max_ab_steps = 24;
};

namespace detail {

// Reachability table for exponent-sum vectors: dist maps each vector that is
// a sum of at most `levels` step vectors to the least number of steps needed.
// complete means the frontier emptied, so dist holds the whole reachable set.
struct AbReach {
    std::map<AbelianVector, int> dist;
    bool complete = false;
};

inline AbReach ab_reach(int rank, std::vector<AbelianVector> steps, int levels) {
    std::sort(steps.begin(), steps.end());
    steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
    AbReach r;
    AbelianVector zero(static_cast<std::size_t>(rank), 0);
    r.dist.emplace(zero, 0);
    std::vector<AbelianVector> frontier{zero};
    for (int level = 1; level <= levels && !frontier.empty(); ++level) {
        std::vector<AbelianVector> next;
        for (const AbelianVector& v : frontier)
            for (const AbelianVector& s : steps) {
                AbelianVector n(v);
                for (std::size_t i = 0; i < n.size(); ++i) n[i] += s[i];
                if (r.dist.emplace(n, level).second) next.push_back(std::move(n));
            }
        frontier = std::move(next);
    }
    r.complete = frontier.empty();
    return r;
}

struct WordLess {
    bool operator()(const ReducedWord& a, const ReducedWord& b) const { return word_less(a, b); }
};

// One search factor: value = conjugator^{-1} * base * conjugator, with the
// canonically least (base, conjugator) pair that produces it.
struct ConjFactor {
    ReducedWord value;
    ReducedWord inverse_value;
    ReducedWord base;
    ReducedWord conjugator;
};

// Factors sorted by value, deduplicated keeping the first (base, conjugator)
// in generator-major, conjugator-minor canonical order.  That ordering, and
// the depth-first search walking it, makes reported certificates reproducible.
inline std::vector<ConjFactor> conjugate_vocabulary(const std::vector<ReducedWord>& bases,
                                                    int rank, int max_conj_len) {
    std::map<ReducedWord, std::pair<ReducedWord, ReducedWord>, WordLess> seen;
    const std::vector<ReducedWord> conjugators = enumerate_ball(rank, max_conj_len);
    for (const ReducedWord& s : bases)
        for (const ReducedWord& u : conjugators) {
            ReducedWord v = conjugate(s, u);
            if (v.is_identity()) continue;
            seen.emplace(std::move(v), std::make_pair(s, u));
        }
    std::vector<ConjFactor> out;
    out.reserve(seen.size());
    for (const auto& [v, pair] : seen)
        out.push_back(ConjFactor{v, inverse(v), pair.first, pair.second});
    return out;
}

struct FactorSearch {
    const std::vector<ConjFactor>& vocab;
    const std::map<AbelianVector, int>& ab_dist;
    int max_factor_len = 0;
    std::vector<int> chosen;

    // True iff `rest` is a product of exactly `remaining` vocabulary factors.
    // Passing through the identity early is never part of a minimal
    // decomposition, so that branch is cut.
    bool run(const ReducedWord& rest, int remaining) {
        if (remaining == 0) return rest.is_identity();
        if (rest.is_identity()) return false;
        if (rest.length() > remaining * max_factor_len) return false;
        auto it = ab_dist.find(abelianize(rest));
        if (it == ab_dist.end() || it->second > remaining) return false;
        for (std::size_t i = 0; i < vocab.size(); ++i) {
            chosen.push_back(static_cast<int>(i));
            if (run(product(vocab[i].inverse_value, rest), remaining - 1)) return true;
            chosen.pop_back();
        }
        return false;
    }
};

// Coset representatives reachable from w by right-multiplying at most
// max_relator_factors conjugated relators, with the rewrite path recorded.
struct Target {
    ReducedWord word;
    std::vector<std::pair<ReducedWord, ReducedWord>> kernel;
};

inline constexpr int kMaxRewriteTargets = 100000;

inline std::vector<Target> rewrite_targets(const ReducedWord& w,
                                           const std::vector<ReducedWord>& relators, int rank,
                                           int max_relator_factors, int max_conj_len) {
    std::vector<ReducedWord> bases;
    for (const ReducedWord& r : relators) {
        if (r.is_identity()) continue;
        bases.push_back(r);
        bases.push_back(inverse(r));
    }
    const std::vector<ConjFactor> vocab = conjugate_vocabulary(bases, rank, max_conj_len);
    std::map<ReducedWord, std::vector<std::pair<ReducedWord, ReducedWord>>, WordLess> seen;
    seen.emplace(w, std::vector<std::pair<ReducedWord, ReducedWord>>{});
    std::vector<ReducedWord> frontier{w};
    for (int level = 0; level < max_relator_factors && !frontier.empty(); ++level) {
        std::vector<ReducedWord> next;
        for (const ReducedWord& t : frontier)
            for (const ConjFactor& f : vocab) {
                ReducedWord n = product(t, f.value);
                if (seen.count(n)) continue;
                auto kernel = seen.at(t);
                kernel.emplace_back(f.base, f.conjugator);
                seen.emplace(n, std::move(kernel));
                next.push_back(std::move(n));
                if (seen.size() > kMaxRewriteTargets)
                    throw ResourceLimitError("rewrite target set exceeds " +
                                             std::to_string(kMaxRewriteTargets) + " words");
            }
        frontier = std::move(next);
    }
    std::vector<Target> out;
    out.reserve(seen.size());
    for (auto& [word, kernel] : seen) out.push_back(Target{word, std::move(kernel)});
    return out;
}

inline void verify_upper_certificate(const NormBound& b, const ReducedWord& w) {
    if (!b.upper || !b.representative) return;
    ReducedWord acc{{}, w.rank};
    for (const auto& [base, u] : b.certificate_up) acc = product(acc, conjugate(base, u));
    if (!(acc == *b.representative))
        throw std::logic_error("upper certificate does not multiply to its representative");
    if (static_cast<int>(b.certificate_up.size()) != *b.upper)
        throw std::logic_error("upper certificate length differs from the bound");
    ReducedWord rep = w;
    for (const auto& [rel, u] : b.kernel_certificate) rep = product(rep, conjugate(rel, u));
    if (!(rep == *b.representative))
        throw std::logic_error("kernel certificate does not rewrite w to the representative");
}

} // namespace detail

// Least factor count found within the budget: factors are conjugates s^u with
// s in the generating set and |u| <= max_conj_len.  With relators, the search
// additionally minimizes over representatives w * (bounded products of
// conjugated relators).  An exhausted budget yields an unknown upper bound,
// never an exception.  min_factors skips provably impossible depths; callers
// must only pass a sound lower bound there.
inline NormBound upper_bound(const ReducedWord& w, const SymmetricWordSet& s, int max_factors,
                             int max_conj_len, const std::vector<ReducedWord>& relators = {},
                             int max_relator_factors = 2, int min_factors = 0) {
    if (w.rank != s.rank) throw ContractError("word and generating set have different ranks");
    for (const ReducedWord& r : relators)
        if (r.rank != w.rank) throw ContractError("relator rank differs from the word rank");
    if (max_factors < 1 || max_conj_len < 0 || max_relator_factors < 0 || min_factors < 0)
        throw MalformedInputError("search budgets must be positive");

    const std::vector<detail::ConjFactor> vocab =
        detail::conjugate_vocabulary(s.words, w.rank, max_conj_len);
    int max_factor_len = 0;
    for (const detail::ConjFactor& f : vocab)
        max_factor_len = std::max(max_factor_len, f.value.length());
    std::vector<AbelianVector> steps;
    for (const ReducedWord& g : s.words) steps.push_back(abelianize(g));
    const detail::AbReach reach = detail::ab_reach(w.rank, std::move(steps), max_factors);

    std::vector<detail::Target> targets =
        relators.empty()
            ? std::vector<detail::Target>{detail::Target{w, {}}}
            : detail::rewrite_targets(w, relators, w.rank, max_relator_factors, max_conj_len);

    NormBound out;
    for (int k = min_factors; k <= max_factors; ++k)
        for (const detail::Target& t : targets) {
            detail::FactorSearch search{vocab, reach.dist, max_factor_len, {}};
            if (!search.run(t.word, k)) continue;
            out.upper = k;
            out.representative = t.word;
            out.kernel_certificate = t.kernel;
            for (int idx : search.chosen)
                out.certificate_up.emplace_back(vocab[static_cast<std::size_t>(idx)].base,
                                                vocab[static_cast<std::size_t>(idx)].conjugator);
            detail::verify_upper_certificate(out, w);
            return out;
        }
    return out;
}

// Certified lower bound: the larger of the exponent-sum bound (least number
// of generator exponent vectors summing to the target) and, per probe, the
// conjugacy-invariant word norm of the word's image.  Homomorphisms never
// increase these norms, so every probe value is a true lower bound.  The
// exponent-sum side is skipped when some relator has a nonzero exponent sum,
// since the free-lattice distance then no longer bounds the quotient norm.
inline NormBound lower_bound(const ReducedWord& w, const SymmetricWordSet& s,
                             const std::vector<QuotientSpec>& probes,
                             const std::vector<ReducedWord>& relators = {},
                             int max_ab_steps = 24) {
    if (w.rank != s.rank) throw ContractError("word and generating set have different ranks");
    if (max_ab_steps < 1) throw MalformedInputError("search budgets must be positive");
    bool ab_applicable = true;
    for (const ReducedWord& r : relators) {
        if (r.rank != w.rank) throw ContractError("relator rank differs from the word rank");
        for (long long e : abelianize(r)) ab_applicable &= e == 0;
    }

    std::vector<std::pair<int, std::string>> candidates;
    if (ab_applicable) {
        std::vector<AbelianVector> steps;
        for (const ReducedWord& g : s.words) steps.push_back(abelianize(g));
        const detail::AbReach reach = detail::ab_reach(w.rank, std::move(steps), max_ab_steps);
        auto it = reach.dist.find(abelianize(w));
        if (it != reach.dist.end()) {
            candidates.emplace_back(it->second, "abelianization");
        } else if (reach.complete) {
            throw ContractError(
                "the word lies outside the subgroup generated by the closed set");
        } else {
            // Unreachable within the budget: any decomposition needs more
            // than max_ab_steps factors.
            candidates.emplace_back(max_ab_steps + 1, "abelianization");
        }
    }

    for (std::size_t i = 0; i < probes.size(); ++i) {
        const QuotientSpec& probe = probes[i];
        if (probe.rank != w.rank) throw ContractError("probe rank differs from the word rank");
        for (const ReducedWord& r : relators)
            if (apply_word(probe, r) != 0)
                throw ContractError("probe #" + std::to_string(i) + " does not kill a relator");
        std::vector<int> image_ids;
        for (const ReducedWord& g : s.words) image_ids.push_back(apply_word(probe, g));
        NormTable nt = word_norm(probe.image, make_set(probe.image, image_ids), true, true);
        Rat v = nt.at(apply_word(probe, w));
        // Genuine distances stay below the order; only padded elements reach it.
        if (v >= Rat(probe.image->order()))
            throw ContractError("probe #" + std::to_string(i) +
                                " places the word outside the subgroup generated by the "
                                "closed set");
        candidates.emplace_back(static_cast<int>(v.numerator()), "probe#" + std::to_string(i));
    }

    NormBound out;
    for (const auto& [value, tag] : candidates) {
        if (out.certificate_low.empty() || value > out.lower) out.certificate_low = tag;
        out.lower = std::max(out.lower, value);
    }
    return out;
}

// Both sides merged; exact when they meet.  The upper search starts at the
// certified lower bound, which cannot change its result, only its cost.
inline NormBound estimate_norm(const ReducedWord& w, const SymmetricWordSet& s,
                               const SearchBudget& budget, const std::vector<QuotientSpec>& probes,
                               const std::vector<ReducedWord>& relators = {}) {
    NormBound low = lower_bound(w, s, probes, relators, budget.max_ab_steps);
    NormBound up = upper_bound(w, s, budget.max_factors, budget.max_conj_len, relators,
                               budget.max_relator_factors, low.lower);
    NormBound out = std::move(up);
    out.lower = low.lower;
    out.certificate_low = std::move(low.certificate_low);
    if (out.upper && *out.upper < out.lower)
        throw std::logic_error("certified bounds crossed");
    return out;
}

} // namespace wordnorm
