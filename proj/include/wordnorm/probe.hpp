#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "finite_group.hpp"
#include "free_norm_bounds.hpp"
#include "free_words.hpp"
#include "witness.hpp"

namespace wordnorm {

// One certified factor of a kernel word: a conjugated relator or its inverse.
struct KernelFactor {
    std::size_t relator_index = 0;
    bool inverted = false;
    ReducedWord conjugator;
};

// A word together with an explicit product of conjugated relators equal to
// it.  Membership in the normal subgroup is a consequence of the certificate,
// never of a search: deciding normal-closure membership in a free group is
// not possible in general, so inputs carry their own proof.
struct CertifiedKernelWord {
    ReducedWord word;
    std::vector<KernelFactor> factors;
};

// A word certified to have quotient norm at most 1: a conjugate of one
// generating-set element times a certified kernel word.
struct CertifiedClassWord {
    ReducedWord word;
    std::size_t s_index = 0;
    ReducedWord conjugator;
    CertifiedKernelWord tail;
};

// One separation question: does w stay outside the m-ball of the quotient
// norm, observed through finite quotients?  kernel_words and class_words are
// the sequence entries for the class-product probes.
struct ProbeProblem {
    int rank = 0;
    SymmetricWordSet s;
    std::vector<ReducedWord> relators;
    ReducedWord w;
    int m = 0;
    std::vector<CertifiedKernelWord> kernel_words;
    std::vector<CertifiedClassWord> class_words;
};

inline ReducedWord kernel_factor_value(const ProbeProblem& p, const KernelFactor& f) {
    if (f.relator_index >= p.relators.size())
        throw ContractError("kernel factor cites a missing relator");
    ReducedWord base = p.relators[f.relator_index];
    if (f.inverted) base = inverse(base);
    return conjugate(base, f.conjugator);
}

inline void check_problem(const ProbeProblem& p) {
    if (p.rank < 1) throw ContractError("probe problem needs a positive rank");
    if (p.s.rank != p.rank || p.w.rank != p.rank)
        throw ContractError("probe problem mixes ranks");
    for (const ReducedWord& r : p.relators)
        if (r.rank != p.rank) throw ContractError("probe problem mixes ranks");
    const auto factors_value = [&](const std::vector<KernelFactor>& factors) {
        ReducedWord acc{{}, p.rank};
        for (const KernelFactor& f : factors) acc = product(acc, kernel_factor_value(p, f));
        return acc;
    };
    for (const CertifiedKernelWord& k : p.kernel_words)
        if (!(factors_value(k.factors) == k.word))
            throw ContractError("kernel certificate does not multiply to its word");
    for (const CertifiedClassWord& c : p.class_words) {
        if (c.s_index >= p.s.words.size())
            throw ContractError("class certificate cites a missing generator");
        if (!(factors_value(c.tail.factors) == c.tail.word))
            throw ContractError("class certificate tail does not multiply to its word");
        if (!(product(conjugate(p.s.words[c.s_index], c.conjugator), c.tail.word) == c.word))
            throw ContractError("class certificate does not multiply to its word");
    }
}

enum class SepVerdict { separated, contained, inconclusive };

inline std::string verdict_str(SepVerdict v) {
    switch (v) {
    case SepVerdict::separated: return "separated";
    case SepVerdict::contained: return "contained";
    default: return "inconclusive";
    }
}

enum class ProbeKind { rf_separation, closure_product, lef_separation };

inline std::string probe_kind_str(ProbeKind k) {
    switch (k) {
    case ProbeKind::rf_separation: return "rf-separation";
    case ProbeKind::closure_product: return "closure-product";
    default: return "lef-separation";
    }
}

// Outcome of one probe against one quotient, carrying everything needed to
// recompute it bit for bit: the quotient spec, the sorted ids of the checked
// set, and the image of w.
struct SeparationCertificate {
    QuotientSpec spec;
    ProbeKind kind = ProbeKind::rf_separation;
    std::string checked_set;
    SepVerdict verdict = SepVerdict::inconclusive;
    std::string reason;
    std::vector<int> set_ids;
    int w_image = -1;
    std::optional<bool> dagger_excluded;
    std::optional<bool> containment_consistent;
    std::optional<bool> partial_iso;
    std::optional<bool> ball_separated;
};

// Neither outcome of the containment axis settles the question in the source
// group: a finite image can shrink distinct sets together.
inline constexpr const char* kContainmentCaveat =
    "containment axis probes a necessary condition in the image only";

inline constexpr const char* kExhaustionCaveat =
    "a finite catalog certifies separations only; exhaustion does not certify non-closedness";

namespace detail {

inline ElementSet union_of_generator_classes(const QuotientSpec& spec, const SymmetricWordSet& s) {
    ElementSet c1(spec.image);
    c1.add(0);
    for (const ReducedWord& g : s.words) {
        for (int id : conjugacy_class(spec.image, apply_word(spec, g)).ids()) c1.add(id);
        if (c1.full()) break;
    }
    return c1;
}

inline ElementSet power_set(const ElementSet& base, int m) {
    ElementSet acc(base.group);
    acc.add(0);
    for (int i = 0; i < m && !acc.full(); ++i) acc = set_product(acc, base);
    return acc;
}

inline bool subset_of(const ElementSet& a, const ElementSet& b) {
    for (int id : a.ids())
        if (!b.contains(id)) return false;
    return true;
}

} // namespace detail

// Image of the norm ball of radius m times the relator normal subgroup: the
// unit ball maps onto {1} union the conjugacy classes of the generator
// images, so the whole set is computable exactly in the finite image.
inline ElementSet ball_image(const QuotientSpec& spec, const SymmetricWordSet& s,
                             const std::vector<ReducedWord>& relators, int m) {
    if (spec.rank != s.rank) throw ContractError("spec rank differs from the generating set");
    if (m < 0) throw MalformedInputError("ball exponent must be nonnegative");
    ElementSet ball = detail::power_set(detail::union_of_generator_classes(spec, s), m);
    std::vector<int> relator_ids;
    for (const ReducedWord& r : relators) {
        if (r.rank != s.rank) throw ContractError("relator rank differs from the generating set");
        relator_ids.push_back(apply_word(spec, r));
    }
    return set_product(ball, normal_closure(spec.image, relator_ids));
}

// Does w map outside the image of the m-ball?  Only quotients that kill every
// relator count; anything else is inconclusive, not evidence.
inline SeparationCertificate separation_check_rf(const ProbeProblem& p, const QuotientSpec& spec) {
    check_problem(p);
    SeparationCertificate cert;
    cert.spec = spec;
    cert.kind = ProbeKind::rf_separation;
    cert.checked_set = "ball-image m=" + std::to_string(p.m);
    for (const ReducedWord& r : p.relators)
        if (apply_word(spec, r) != 0) {
            cert.verdict = SepVerdict::inconclusive;
            cert.reason = "spec does not kill relator " + word_str(r);
            return cert;
        }
    cert.set_ids = ball_image(spec, p.s, p.relators, p.m).ids();
    cert.w_image = apply_word(spec, p.w);
    const bool inside =
        std::binary_search(cert.set_ids.begin(), cert.set_ids.end(), cert.w_image);
    cert.verdict = inside ? SepVerdict::contained : SepVerdict::separated;
    return cert;
}

// Class-product probe.  The checked set is the ordered product of the
// conjugacy classes of the certified class words and kernel words (empty
// product = {1}); the verdict reports whether w's image lies in it.  Two side
// observations ride along: whether w also avoids the wider set
// (unit classes)^m times the kernel-word classes, and whether the product set
// stays inside the m-ball image, the latter with its caveat attached.
inline SeparationCertificate closure_product_check(const ProbeProblem& p,
                                                   const QuotientSpec& spec) {
    check_problem(p);
    if (spec.rank != p.rank) throw ContractError("spec rank differs from the problem");
    SeparationCertificate cert;
    cert.spec = spec;
    cert.kind = ProbeKind::closure_product;
    cert.checked_set = "class-product k=" + std::to_string(p.class_words.size()) +
                       " l=" + std::to_string(p.kernel_words.size());

    ElementSet prod(spec.image);
    prod.add(0);
    for (const CertifiedClassWord& c : p.class_words)
        prod = set_product(prod, conjugacy_class(spec.image, apply_word(spec, c.word)));
    ElementSet kernel_part(spec.image);
    kernel_part.add(0);
    for (const CertifiedKernelWord& k : p.kernel_words)
        kernel_part = set_product(kernel_part, conjugacy_class(spec.image, apply_word(spec, k.word)));
    prod = set_product(prod, kernel_part);

    cert.set_ids = prod.ids();
    cert.w_image = apply_word(spec, p.w);
    cert.verdict =
        prod.contains(cert.w_image) ? SepVerdict::contained : SepVerdict::separated;

    ElementSet wide = set_product(
        detail::power_set(detail::union_of_generator_classes(spec, p.s), p.m), kernel_part);
    cert.dagger_excluded = !wide.contains(cert.w_image);
    cert.containment_consistent =
        detail::subset_of(prod, ball_image(spec, p.s, p.relators, p.m));
    cert.reason = std::string(*cert.containment_consistent ? "axis2=consistent"
                                                           : "axis2=violated-in-image") +
                  "; " + kContainmentCaveat;
    return cert;
}

// Separation together with a partial-isomorphism clause on a window D of
// coset representatives (pairwise distinct modulo the relators, which is the
// caller's certificate): the induced map must be injective on D and agree
// with products that land back in D.
inline SeparationCertificate lef_separation_check(const ProbeProblem& p,
                                                  const std::vector<ReducedWord>& d,
                                                  const QuotientSpec& spec) {
    SeparationCertificate cert = separation_check_rf(p, spec);
    cert.kind = ProbeKind::lef_separation;
    if (cert.verdict == SepVerdict::inconclusive) return cert;
    cert.ball_separated = cert.verdict == SepVerdict::separated;

    bool iso = true;
    std::vector<int> images;
    for (const ReducedWord& v : d) {
        if (v.rank != p.rank) throw ContractError("window word rank differs from the problem");
        images.push_back(apply_word(spec, v));
    }
    for (std::size_t i = 0; i < d.size() && iso; ++i)
        for (std::size_t j = i + 1; j < d.size() && iso; ++j)
            if (images[i] == images[j]) iso = false;
    for (std::size_t i = 0; i < d.size() && iso; ++i)
        for (std::size_t j = 0; j < d.size() && iso; ++j) {
            ReducedWord prod_word = product(d[i], d[j]);
            for (std::size_t t = 0; t < d.size() && iso; ++t)
                if (d[t] == prod_word &&
                    spec.image->mul(images[i], images[j]) != images[t])
                    iso = false;
        }
    cert.partial_iso = iso;
    if (!iso) cert.reason = "partial-isomorphism clause failed";
    cert.verdict = (iso && *cert.ball_separated) ? SepVerdict::separated : SepVerdict::contained;
    return cert;
}

// Recompute a certificate from its own spec and compare bit for bit.
inline bool verify_certificate(const ProbeProblem& p, const SeparationCertificate& cert,
                               const std::vector<ReducedWord>& d = {}) {
    SeparationCertificate fresh;
    switch (cert.kind) {
    case ProbeKind::rf_separation: fresh = separation_check_rf(p, cert.spec); break;
    case ProbeKind::closure_product: fresh = closure_product_check(p, cert.spec); break;
    case ProbeKind::lef_separation: fresh = lef_separation_check(p, d, cert.spec); break;
    }
    return fresh.verdict == cert.verdict && fresh.set_ids == cert.set_ids &&
           fresh.w_image == cert.w_image && fresh.checked_set == cert.checked_set &&
           fresh.dagger_excluded == cert.dagger_excluded &&
           fresh.containment_consistent == cert.containment_consistent &&
           fresh.partial_iso == cert.partial_iso &&
           fresh.ball_separated == cert.ball_separated;
}

// Internal consistency of a batch: a separated verdict must place w outside
// its own set, a contained one inside, and certificates observing identical
// data (same probe, same spec, same computed set and image) must agree on the
// verdict.
inline bool certificates_consistent(const std::vector<SeparationCertificate>& certs) {
    auto fingerprint = [](const SeparationCertificate& c) {
        std::string fp = probe_kind_str(c.kind) + "|" + c.checked_set + "|";
        for (const Perm& g : c.spec.images) fp += perm_str(g) + " ";
        fp += "|w=" + std::to_string(c.w_image) + "|set=";
        for (int id : c.set_ids) fp += std::to_string(id) + ",";
        const auto opt = [](const std::optional<bool>& o) {
            return !o ? std::string("-") : std::string(*o ? "1" : "0");
        };
        return fp + "|" + opt(c.dagger_excluded) + opt(c.containment_consistent) +
               opt(c.partial_iso) + opt(c.ball_separated);
    };
    for (const SeparationCertificate& c : certs) {
        if (c.verdict == SepVerdict::inconclusive) continue;
        const bool inside = std::binary_search(c.set_ids.begin(), c.set_ids.end(), c.w_image);
        const bool claims_inside = c.kind == ProbeKind::lef_separation
                                       ? !(c.ball_separated.value_or(false))
                                       : c.verdict == SepVerdict::contained;
        if (inside != claims_inside) return false;
    }
    for (std::size_t i = 0; i < certs.size(); ++i)
        for (std::size_t j = i + 1; j < certs.size(); ++j)
            if (fingerprint(certs[i]) == fingerprint(certs[j]) &&
                certs[i].verdict != certs[j].verdict)
                return false;
    return true;
}

enum class ProbeGoal { rf_separation, lef_separation, product_membership_no, lef_witness };

inline std::string goal_str(ProbeGoal g) {
    switch (g) {
    case ProbeGoal::rf_separation: return "rf-separation";
    case ProbeGoal::lef_separation: return "lef-separation";
    case ProbeGoal::product_membership_no: return "product-membership-no";
    default: return "lef-witness";
    }
}

// First catalog entry reaching the goal, with the per-spec verdict trail up
// to and including it; on exhaustion the trail covers the whole catalog and
// the caveat states what exhaustion does not prove.
struct SearchOutcome {
    std::optional<SeparationCertificate> certificate;
    std::optional<LefWitness> witness;
    int success_index = -1;
    std::vector<std::string> attempts;
    std::string caveat;

    bool succeeded() const { return success_index >= 0; }
};

inline SearchOutcome quotient_search(const ProbeProblem& p,
                                     const std::vector<QuotientSpec>& catalog, ProbeGoal goal,
                                     const std::vector<ReducedWord>& d = {},
                                     const ThresholdSet& q = ThresholdSet{{Rat(0)}},
                                     const SearchBudget& budget = {}) {
    check_problem(p);
    SearchOutcome out;
    for (std::size_t i = 0; i < catalog.size(); ++i) {
        const QuotientSpec& spec = catalog[i];
        const std::string head =
            "spec#" + std::to_string(i) + " order=" + std::to_string(spec.image->order()) + ": ";
        bool success = false;
        if (goal == ProbeGoal::lef_witness) {
            bool kills = true;
            for (const ReducedWord& r : p.relators)
                if (apply_word(spec, r) != 0) kills = false;
            if (!kills) {
                out.attempts.push_back(head + "skipped, does not kill the relators");
            } else {
                LefWitness lw = build_lef_witness(p.relators, p.s, d, q, spec, budget);
                out.attempts.push_back(head + verdict_str(lw.report.verdict));
                if (lw.report.passed()) {
                    out.witness = std::move(lw);
                    success = true;
                }
            }
        } else {
            SeparationCertificate cert;
            if (goal == ProbeGoal::rf_separation) cert = separation_check_rf(p, spec);
            else if (goal == ProbeGoal::lef_separation) cert = lef_separation_check(p, d, spec);
            else cert = closure_product_check(p, spec);
            out.attempts.push_back(head + verdict_str(cert.verdict) +
                                   (cert.reason.empty() ? "" : " (" + cert.reason + ")"));
            if (cert.verdict == SepVerdict::separated) {
                out.certificate = std::move(cert);
                success = true;
            }
        }
        if (success) {
            out.success_index = static_cast<int>(i);
            return out;
        }
    }
    out.caveat = kExhaustionCaveat;
    return out;
}

// Every homomorphism from the rank-generator free group into any of the given
// groups that kills the relators, enumerated lexicographically over
// generator-image tuples, target groups in input order.
inline std::vector<QuotientSpec> hom_catalog(int rank, const std::vector<GroupPtr>& targets,
                                             const std::vector<ReducedWord>& relators,
                                             std::size_t cap = 100000) {
    if (rank < 1) throw ContractError("catalog needs a positive rank");
    std::vector<QuotientSpec> out;
    std::size_t scanned = 0;
    for (const GroupPtr& g : targets) {
        std::vector<int> tuple(static_cast<std::size_t>(rank), 0);
        while (true) {
            if (++scanned > cap)
                throw ResourceLimitError("homomorphism catalog exceeds " + std::to_string(cap) +
                                         " candidate tuples");
            std::vector<Perm> images;
            for (int id : tuple) images.push_back(g->element(id));
            QuotientSpec spec = make_spec(images);
            bool kills = true;
            for (const ReducedWord& r : relators) {
                if (r.rank != rank) throw ContractError("relator rank differs from the catalog");
                if (apply_word(spec, r) != 0) kills = false;
            }
            if (kills) out.push_back(std::move(spec));
            int pos = rank - 1;
            while (pos >= 0 && tuple[pos] == g->order() - 1) tuple[pos--] = 0;
            if (pos < 0) break;
            ++tuple[pos];
        }
    }
    return out;
}

} // namespace wordnorm
