#pragma once

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "finite_group.hpp"
#include "free_norm_bounds.hpp"
#include "free_words.hpp"
#include "norms.hpp"
#include "report.hpp"

namespace wordnorm {

// Finite piece of a map into a finite target group.  The domain is either a
// list of reduced words (free or relator-defined sources; entries must be
// pairwise distinct words, and distinctness modulo relators is the caller's
// certificate) or a list of element ids of a finite source group.  Exactly
// one flavor may be nonempty.  source_norms, when supplied, runs parallel to
// the domain; absent values make norm clauses inconclusive, never guessed.
struct PartialMap {
    std::vector<ReducedWord> word_domain;
    GroupPtr source_group;
    std::vector<int> id_domain;
    GroupPtr target;
    std::vector<int> images;
    std::vector<std::optional<Rat>> source_norms;

    bool uses_words() const { return id_domain.empty(); }
    std::size_t size() const { return uses_words() ? word_domain.size() : id_domain.size(); }
};

// Finite set of comparison thresholds; 0 must be a member.
struct ThresholdSet {
    std::vector<Rat> values;
};

inline ThresholdSet make_thresholds(std::vector<Rat> values) {
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    if (values.empty() || values.front() != Rat(0))
        throw MalformedInputError(values.empty() || values.front() > Rat(0)
                                      ? "threshold set must contain 0"
                                      : "thresholds must be nonnegative");
    return ThresholdSet{std::move(values)};
}

enum class ApproxMode { metric, gr };

namespace detail {

inline void check_partial_map(const PartialMap& m) {
    if (!m.target) throw ContractError("partial map has no target group");
    if (!m.word_domain.empty() && !m.id_domain.empty())
        throw ContractError("partial map mixes word and id domains");
    if (m.images.size() != m.size())
        throw ContractError("partial map images do not match its domain");
    if (!m.source_norms.empty() && m.source_norms.size() != m.size())
        throw ContractError("partial map norms do not match its domain");
    for (int img : m.images)
        if (img < 0 || img >= m.target->order())
            throw ContractError("partial map image id out of range");
    if (m.uses_words()) {
        std::unordered_set<ReducedWord, ReducedWordHash> seen;
        for (const ReducedWord& w : m.word_domain) {
            if (!m.word_domain.empty() && w.rank != m.word_domain.front().rank)
                throw ContractError("partial map domain words have mixed ranks");
            if (!seen.insert(w).second)
                throw ContractError("partial map domain repeats an entry");
        }
    } else {
        if (!m.source_group) throw ContractError("id domain needs a source group");
        std::unordered_set<int> seen;
        for (int id : m.id_domain) {
            if (id < 0 || id >= m.source_group->order())
                throw ContractError("partial map domain id out of range");
            if (!seen.insert(id).second)
                throw ContractError("partial map domain repeats an entry");
        }
    }
}

inline std::string domain_label(const PartialMap& m, std::size_t i) {
    return m.uses_words() ? word_str(m.word_domain[i]) : "g=" + std::to_string(m.id_domain[i]);
}

inline std::optional<std::size_t> identity_index(const PartialMap& m) {
    for (std::size_t i = 0; i < m.size(); ++i)
        if (m.uses_words() ? m.word_domain[i].is_identity() : m.id_domain[i] == 0) return i;
    return std::nullopt;
}

inline std::optional<Rat> source_norm(const PartialMap& m, std::size_t i) {
    return m.source_norms.empty() ? std::nullopt : m.source_norms[i];
}

// All index triples (g, h, gh) whose literal product lands back in the domain.
struct Triple {
    std::size_t g, h, gh;
};

inline std::vector<Triple> domain_triples(const PartialMap& m) {
    std::vector<Triple> out;
    if (m.uses_words()) {
        std::unordered_map<ReducedWord, std::size_t, ReducedWordHash> index;
        for (std::size_t i = 0; i < m.word_domain.size(); ++i) index.emplace(m.word_domain[i], i);
        for (std::size_t i = 0; i < m.word_domain.size(); ++i)
            for (std::size_t j = 0; j < m.word_domain.size(); ++j) {
                auto it = index.find(product(m.word_domain[i], m.word_domain[j]));
                if (it != index.end()) out.push_back({i, j, it->second});
            }
    } else {
        std::unordered_map<int, std::size_t> index;
        for (std::size_t i = 0; i < m.id_domain.size(); ++i) index.emplace(m.id_domain[i], i);
        for (std::size_t i = 0; i < m.id_domain.size(); ++i)
            for (std::size_t j = 0; j < m.id_domain.size(); ++j) {
                auto it = index.find(m.source_group->mul(m.id_domain[i], m.id_domain[j]));
                if (it != index.end()) out.push_back({i, j, it->second});
            }
    }
    return out;
}

inline int rat_cmp(const Rat& a, const Rat& b) { return a < b ? -1 : (b < a ? 1 : 0); }

inline void report_injectivity(const PartialMap& m, WitnessReport& rep) {
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j)
            if (m.images[i] == m.images[j])
                rep.violate("injectivity",
                            "(" + domain_label(m, i) + "," + domain_label(m, j) + ")",
                            "images collide at id " + std::to_string(m.images[i]));
}

inline void report_multiplicativity(const PartialMap& m, WitnessReport& rep) {
    const FiniteGroup& c = *m.target;
    for (const Triple& t : domain_triples(m)) {
        int composed = c.mul(m.images[t.g], m.images[t.h]);
        if (composed != m.images[t.gh])
            rep.violate("multiplicativity",
                        "(g,h)=(" + domain_label(m, t.g) + "," + domain_label(m, t.h) + ")",
                        "ids " + std::to_string(composed) + " vs " +
                            std::to_string(m.images[t.gh]));
    }
}

// Threshold trichotomy of Def-style almost-homomorphisms: the source norm and
// the image norm must fall on the same side of every threshold.  When both
// norms are integer-valued and the thresholds cover every source value, this
// reduces to plain equality of norms; that shortcut is taken unless the
// caller forces the full comparison.
inline void report_thresholds(const PartialMap& m, const ThresholdSet& q, const NormTable& lc,
                              WitnessReport& rep, bool force_full) {
    bool equality_path = !force_full;
    for (const Rat& v : lc.values) equality_path &= is_integer(v);
    for (std::size_t i = 0; i < m.size() && equality_path; ++i)
        if (auto v = source_norm(m, i)) {
            equality_path &= is_integer(*v);
            equality_path &=
                std::find(q.values.begin(), q.values.end(), *v) != q.values.end();
        }
    rep.echo("threshold-path", equality_path ? "equality" : "full");

    for (std::size_t i = 0; i < m.size(); ++i) {
        auto v = source_norm(m, i);
        if (!v) {
            rep.violate("norm-data", domain_label(m, i), "no source norm", true);
            continue;
        }
        const Rat& image_norm = lc.at(m.images[i]);
        if (equality_path) {
            if (*v != image_norm)
                rep.violate("norm-match", domain_label(m, i),
                            rat_str(*v) + " vs " + rat_str(image_norm));
            continue;
        }
        for (const Rat& threshold : q.values)
            if (rat_cmp(*v, threshold) != rat_cmp(image_norm, threshold))
                rep.violate("threshold", domain_label(m, i) + " q=" + rat_str(threshold),
                            rat_str(*v) + " vs " + rat_str(image_norm));
    }
}

inline std::string thresholds_str(const ThresholdSet& q) {
    std::string out;
    for (const Rat& v : q.values) out += (out.empty() ? "" : " ") + rat_str(v);
    return out;
}

} // namespace detail

// Conditions for a finite approximation window: near-multiplicativity and
// near-identity below epsilon, plus either matching norms within epsilon
// (metric mode) or image norms above r off the identity (gr mode).  All
// inequalities are strict and exact, so boundary cases fail deterministically.
// A non-injective map is a broken input, not a failing witness: it throws.
inline WitnessReport check_mws_witness(const PartialMap& m, const Rat& eps, const NormTable& lc,
                                       ApproxMode mode, const Rat& r = Rat(0)) {
    detail::check_partial_map(m);
    check_table(lc);
    if (lc.group != m.target) throw ContractError("norm table is not over the target group");
    if (eps <= Rat(0)) throw MalformedInputError("epsilon must be positive");
    {
        std::vector<int> imgs = m.images;
        std::sort(imgs.begin(), imgs.end());
        if (std::adjacent_find(imgs.begin(), imgs.end()) != imgs.end())
            throw ContractError("map is not injective on its domain");
    }

    WitnessReport rep;
    rep.echo("mode", mode == ApproxMode::metric ? "metric" : "gr");
    rep.echo("epsilon", rat_str(eps));
    if (mode == ApproxMode::gr) rep.echo("r", rat_str(r));
    rep.echo("target-order", std::to_string(m.target->order()));
    rep.echo("domain-size", std::to_string(m.size()));

    const FiniteGroup& c = *m.target;
    for (const detail::Triple& t : detail::domain_triples(m)) {
        int defect_el = c.mul(c.mul(c.inv(m.images[t.gh]), m.images[t.g]), m.images[t.h]);
        const Rat& defect = lc.at(defect_el);
        if (!(defect < eps))
            rep.violate("multiplicativity",
                        "(g,h)=(" + detail::domain_label(m, t.g) + "," +
                            detail::domain_label(m, t.h) + ")",
                        rat_str(defect));
    }
    if (auto id = detail::identity_index(m)) {
        const Rat& v = lc.at(m.images[*id]);
        if (!(v < eps)) rep.violate("identity-image", detail::domain_label(m, *id), rat_str(v));
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
        const Rat& image_norm = lc.at(m.images[i]);
        if (mode == ApproxMode::metric) {
            auto v = detail::source_norm(m, i);
            if (!v) {
                rep.violate("norm-data", detail::domain_label(m, i), "no source norm", true);
                continue;
            }
            Rat diff = *v - image_norm;
            if (diff < Rat(0)) diff = -diff;
            if (!(diff < eps))
                rep.violate("norm-match", detail::domain_label(m, i), rat_str(diff));
        } else {
            bool nonidentity =
                m.uses_words() ? !m.word_domain[i].is_identity() : m.id_domain[i] != 0;
            if (nonidentity && !(image_norm > r))
                rep.violate("norm-separation", detail::domain_label(m, i), rat_str(image_norm));
        }
    }
    rep.finalize();
    return rep;
}

// One row of a metric-homomorphism check: a labelled source element with its
// norm, and the id of its image in the target table's group.
struct MetricHomEntry {
    std::string label;
    Rat source_norm;
    int image = 0;
};

// Image norms must never exceed source norms; the isometric flavor demands
// equality and verifies injectivity on the checked rows rather than assuming
// it.  Callers certify that distinct rows describe distinct source elements.
inline WitnessReport check_metric_hom(const std::vector<MetricHomEntry>& checked,
                                      const NormTable& lc, bool isometric) {
    check_table(lc);
    WitnessReport rep;
    rep.echo("flavor", isometric ? "isometric" : "metric");
    rep.echo("checked", std::to_string(checked.size()));
    for (const MetricHomEntry& e : checked) {
        if (e.image < 0 || e.image >= lc.group->order())
            throw ContractError("image id out of range");
        const Rat& v = lc.at(e.image);
        if (isometric) {
            if (v != e.source_norm)
                rep.violate("norm-equality", e.label,
                            rat_str(e.source_norm) + " vs " + rat_str(v));
        } else if (v > e.source_norm) {
            rep.violate("norm-inequality", e.label,
                        rat_str(v) + " > " + rat_str(e.source_norm));
        }
    }
    if (isometric)
        for (std::size_t i = 0; i < checked.size(); ++i)
            for (std::size_t j = i + 1; j < checked.size(); ++j)
                if (checked[i].image == checked[j].image)
                    rep.violate("injectivity",
                                "(" + checked[i].label + "," + checked[j].label + ")",
                                "images collide at id " + std::to_string(checked[i].image));
    rep.finalize();
    return rep;
}

// Almost-homomorphism conditions: injectivity on the domain (a reported
// condition here, unlike the witness checks above), exact multiplicativity on
// every triple inside the domain, and the threshold trichotomy against Q.
inline WitnessReport check_almost_hom(const PartialMap& m, const ThresholdSet& q,
                                      const NormTable& lc, bool force_full_thresholds = false) {
    detail::check_partial_map(m);
    check_table(lc);
    if (lc.group != m.target) throw ContractError("norm table is not over the target group");

    WitnessReport rep;
    rep.echo("thresholds", detail::thresholds_str(q));
    rep.echo("target-order", std::to_string(m.target->order()));
    rep.echo("domain-size", std::to_string(m.size()));
    detail::report_injectivity(m, rep);
    detail::report_multiplicativity(m, rep);
    detail::report_thresholds(m, q, lc, rep, force_full_thresholds);
    rep.finalize();
    return rep;
}

// Local-embedding witness.  Base conditions are the almost-homomorphism ones;
// weak_inequality swaps the threshold clause for the one-sided bound
// image norm <= source norm.  With hom_required the map must agree with the
// homomorphism induced by the supplied generator images (which must kill the
// relators and land in the same target group), and image norms must not
// exceed source norms; that combination is the residual-finiteness flavor.
inline WitnessReport check_lef_witness(const PartialMap& m, const ThresholdSet& q,
                                       const NormTable& lc, bool hom_required,
                                       bool weak_inequality,
                                       const std::optional<QuotientSpec>& spec = std::nullopt,
                                       const std::vector<ReducedWord>& relators = {}) {
    detail::check_partial_map(m);
    check_table(lc);
    if (lc.group != m.target) throw ContractError("norm table is not over the target group");

    WitnessReport rep;
    rep.echo("hom-required", hom_required ? "yes" : "no");
    rep.echo("norm-clause", weak_inequality ? "weak-inequality" : "thresholds");
    rep.echo("target-order", std::to_string(m.target->order()));
    rep.echo("domain-size", std::to_string(m.size()));
    detail::report_injectivity(m, rep);
    detail::report_multiplicativity(m, rep);

    if (hom_required) {
        if (!spec) throw ContractError("homomorphism check needs generator images");
        if (!m.uses_words()) throw ContractError("homomorphism check needs a word domain");
        if (spec->image != m.target)
            throw ContractError("generator images live in a different group than the target");
        for (const ReducedWord& r : relators)
            if (apply_word(*spec, r) != 0)
                throw ContractError("generator images do not kill a relator");
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (apply_word(*spec, m.word_domain[i]) != m.images[i])
                rep.violate("hom-extension", detail::domain_label(m, i),
                            "image differs from the induced homomorphism");
            auto v = detail::source_norm(m, i);
            if (!v) {
                rep.violate("norm-data", detail::domain_label(m, i), "no source norm", true);
            } else if (lc.at(m.images[i]) > *v) {
                rep.violate("metric-hom", detail::domain_label(m, i),
                            rat_str(lc.at(m.images[i])) + " > " + rat_str(*v));
            }
        }
    }

    if (weak_inequality) {
        for (std::size_t i = 0; i < m.size(); ++i) {
            auto v = detail::source_norm(m, i);
            if (!v)
                rep.violate("norm-data", detail::domain_label(m, i), "no source norm", true);
            else if (lc.at(m.images[i]) > *v)
                rep.violate("weak-inequality", detail::domain_label(m, i),
                            rat_str(lc.at(m.images[i])) + " > " + rat_str(*v));
        }
    } else {
        rep.echo("thresholds", detail::thresholds_str(q));
        detail::report_thresholds(m, q, lc, rep, false);
    }
    rep.finalize();
    return rep;
}

// Witness constructed from a quotient: the invariant word norm on the image
// generated by the images of S (padded where those do not generate), the
// induced map on D with certified-exact source norms where the bound search
// closes, and the residual-finiteness-flavor verdict for (D, Q).
struct LefWitness {
    NormTable norm;
    PartialMap map;
    WitnessReport report;
};

inline LefWitness build_lef_witness(const std::vector<ReducedWord>& relators,
                                    const SymmetricWordSet& s, const std::vector<ReducedWord>& d,
                                    const ThresholdSet& q, const QuotientSpec& spec,
                                    const SearchBudget& budget = {}) {
    if (spec.rank != s.rank) throw ContractError("spec rank differs from the generating set");
    for (const ReducedWord& r : relators) {
        if (r.rank != s.rank) throw ContractError("relator rank differs from the generating set");
        if (apply_word(spec, r) != 0)
            throw ContractError("spec does not kill relator " + word_str(r));
    }
    for (const ReducedWord& w : d)
        if (w.rank != s.rank) throw ContractError("domain word rank differs from the set");

    std::vector<int> gen_ids;
    for (const ReducedWord& g : s.words) gen_ids.push_back(apply_word(spec, g));
    NormTable lc = word_norm(spec.image, make_set(spec.image, gen_ids), true, true);

    PartialMap m;
    m.word_domain = d;
    m.target = spec.image;
    for (const ReducedWord& w : d) {
        m.images.push_back(apply_word(spec, w));
        NormBound b = estimate_norm(w, s, budget, {spec}, relators);
        m.source_norms.push_back(b.exact() ? std::optional<Rat>(Rat(b.lower)) : std::nullopt);
    }
    WitnessReport rep = check_lef_witness(m, q, lc, true, false, spec, relators);
    return LefWitness{std::move(lc), std::move(m), std::move(rep)};
}

// Stability probe for maps from a free group: extend the basis images to the
// homomorphism psi (multiplicative by construction) and compare caller-
// certified exact norms of D against the target norm at psi.  The pass bound
// is 3*k*eps with k the radius of the smallest letter-length ball holding D;
// a zero defect passes at any eps, including eps = 0.
inline WitnessReport stability_extend(const std::vector<int>& basis_images,
                                      const std::vector<ReducedWord>& d,
                                      const std::vector<std::optional<Rat>>& source_norms,
                                      const NormTable& lc, const Rat& eps) {
    check_table(lc);
    if (eps < Rat(0)) throw MalformedInputError("epsilon must be nonnegative");
    if (!source_norms.empty() && source_norms.size() != d.size())
        throw ContractError("source norms do not match the domain");
    for (int id : basis_images)
        if (id < 0 || id >= lc.group->order()) throw ContractError("basis image id out of range");
    const int rank = static_cast<int>(basis_images.size());
    int k = 0;
    for (const ReducedWord& w : d) {
        if (w.rank != rank) throw ContractError("domain word rank differs from the basis");
        k = std::max(k, w.length());
    }
    const Rat bound = Rat(3 * k) * eps;

    WitnessReport rep;
    rep.echo("ball-radius", std::to_string(k));
    rep.echo("epsilon", rat_str(eps));
    rep.echo("bound", rat_str(bound));

    const FiniteGroup& c = *lc.group;
    const auto psi = [&](const ReducedWord& w) {
        int acc = 0;
        for (int letter : w.letters) {
            int g = basis_images[static_cast<std::size_t>(std::abs(letter) - 1)];
            acc = c.mul(acc, letter > 0 ? g : c.inv(g));
        }
        return acc;
    };

    Rat max_defect(0);
    for (std::size_t i = 0; i < d.size(); ++i) {
        const int image = psi(d[i]);
        const std::optional<Rat> v = source_norms.empty() ? std::nullopt : source_norms[i];
        if (!v) {
            rep.violate("norm-data", word_str(d[i]), "no source norm", true);
            continue;
        }
        Rat defect = *v - lc.at(image);
        if (defect < Rat(0)) defect = -defect;
        max_defect = std::max(max_defect, defect);
        if (defect > Rat(0) && defect >= bound)
            rep.violate("stability-bound", word_str(d[i]),
                        rat_str(defect) + " vs bound " + rat_str(bound));
    }
    rep.echo("max-defect", rat_str(max_defect));
    rep.finalize();
    return rep;
}

} // namespace wordnorm
