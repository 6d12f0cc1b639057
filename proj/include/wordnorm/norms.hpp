#pragma once

#include <limits>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "errors.hpp"
#include "finite_group.hpp"
#include "rational.hpp"
#include "report.hpp"

namespace wordnorm {

// Value range descriptor for a norm: all of Q>=0, the integers in it, or a
// bounded interval [0, c].
struct ValueDomain {
    enum class Kind { nonneg_rationals, nonneg_integers, bounded } kind = Kind::nonneg_rationals;
    Rat bound = Rat(0);

    static ValueDomain rationals() { return {Kind::nonneg_rationals, Rat(0)}; }
    static ValueDomain integers() { return {Kind::nonneg_integers, Rat(0)}; }
    static ValueDomain interval(Rat c) { return {Kind::bounded, c}; }

    bool contains(const Rat& v) const {
        if (v < Rat(0)) return false;
        if (kind == Kind::nonneg_integers) return is_integer(v);
        if (kind == Kind::bounded) return v <= bound;
        return true;
    }
    std::string str() const {
        switch (kind) {
            case Kind::nonneg_integers: return "integers";
            case Kind::bounded: return "interval 0 " + rat_str(bound);
            default: return "rationals";
        }
    }
};

// Total assignment of exact rational lengths to a finite group's elements,
// indexed by element id.  Plain data: nothing here guarantees the axioms;
// validate_norm reports on them.
struct NormTable {
    GroupPtr group;
    std::vector<Rat> values;
    ValueDomain domain = ValueDomain::rationals();

    const Rat& at(int id) const { return values[static_cast<std::size_t>(id)]; }
};

struct WeightedGenSet {
    GroupPtr group;
    std::vector<std::pair<int, Rat>> entries;   // (element id, positive weight)
};

inline void check_table(const NormTable& t) {
    if (!t.group || t.values.size() != static_cast<std::size_t>(t.group->order()))
        throw ContractError("norm table does not cover the group");
}

// Axiom audit.  Reports, never throws, on failed axioms: (i) identity at 0,
// (ii) symmetry under inverse, (iii) triangle inequality, plus positivity off
// the identity when require_norm and conjugation invariance when
// require_invariant.  Domain membership is always checked.
inline WitnessReport validate_norm(const NormTable& t, bool require_norm,
                                   bool require_invariant) {
    check_table(t);
    const FiniteGroup& g = *t.group;
    WitnessReport rep;
    rep.echo("order", std::to_string(g.order()));
    rep.echo("require_norm", require_norm ? "yes" : "no");
    rep.echo("require_invariant", require_invariant ? "yes" : "no");
    rep.echo("domain", t.domain.str());

    if (t.at(0) != Rat(0)) rep.violate("identity-value", "g=0", rat_str(t.at(0)));
    for (int x = 0; x < g.order(); ++x) {
        if (!t.domain.contains(t.at(x)))
            rep.violate("domain", "g=" + std::to_string(x), rat_str(t.at(x)));
        if (t.at(x) < Rat(0))
            rep.violate("nonnegative", "g=" + std::to_string(x), rat_str(t.at(x)));
        if (t.at(g.inv(x)) != t.at(x))
            rep.violate("inverse-symmetry", "g=" + std::to_string(x),
                        rat_str(t.at(x)) + " vs " + rat_str(t.at(g.inv(x))));
        if (require_norm && x != 0 && t.at(x) == Rat(0))
            rep.violate("positivity", "g=" + std::to_string(x), "0");
    }
    for (int x = 0; x < g.order(); ++x)
        for (int y = 0; y < g.order(); ++y) {
            if (t.at(g.mul(x, y)) > t.at(x) + t.at(y))
                rep.violate("triangle",
                            "(g,h)=(" + std::to_string(x) + "," + std::to_string(y) + ")",
                            rat_str(t.at(g.mul(x, y))) + " > " + rat_str(t.at(x) + t.at(y)));
            if (require_invariant && t.at(g.conj(x, y)) != t.at(x))
                rep.violate("conjugation-invariance",
                            "(g,h)=(" + std::to_string(x) + "," + std::to_string(y) + ")",
                            rat_str(t.at(g.conj(x, y))) + " vs " + rat_str(t.at(x)));
        }
    rep.finalize();
    return rep;
}

inline bool is_invariant_table(const NormTable& t) {
    check_table(t);
    const FiniteGroup& g = *t.group;
    for (int x = 0; x < g.order(); ++x)
        for (int s : g.generator_ids())
            if (t.at(g.conj(x, s)) != t.at(x)) return false;
    return true;
}

// Symmetrized (and optionally conjugation-closed) generating set; the
// identity is ignored, it adds nothing to a product length.
inline ElementSet closed_gen_set(const ElementSet& s, bool conjugacy_invariant) {
    ElementSet closed(s.group);
    for (int x : s.ids()) {
        if (x == 0) continue;
        closed.add(x);
        closed.add(s.group->inv(x));
    }
    if (conjugacy_invariant)
        for (int x : closed.ids())
            for (int c : conjugacy_class(s.group, x).ids()) closed.add(c);
    return closed;
}

namespace detail {

// Elements outside <gens> get the padding value m-hat when pad is set: large
// enough to exceed every inside distance, so the axioms survive, mirroring
// the quotient trick of assigning unreachable elements one uniform length.
inline NormTable finish_gen_norm(const GroupPtr& group, std::vector<std::optional<Rat>> dist,
                                 bool pad, bool integral, const Rat& max_finite) {
    NormTable t;
    t.group = group;
    t.domain = integral ? ValueDomain::integers() : ValueDomain::rationals();
    bool missing = false;
    for (const auto& d : dist) missing |= !d.has_value();
    Rat pad_value = std::max(Rat(group->order() + 1), max_finite);
    if (missing && !pad)
        throw ContractError("generators do not generate the group; enable padding or extend "
                            "the generating set");
    t.values.reserve(dist.size());
    for (const auto& d : dist) t.values.push_back(d.value_or(pad_value));
    return t;
}

} // namespace detail

// Minimal product length over the symmetrized (optionally class-closed) set:
// BFS on the Cayley graph.  Exact; every value is a nonnegative integer.
inline NormTable word_norm(const GroupPtr& group, const ElementSet& s, bool conjugacy_invariant,
                           bool pad = false) {
    if (s.group != group) throw ContractError("generating set lives over a different group");
    const ElementSet gens = closed_gen_set(s, conjugacy_invariant);
    std::vector<std::optional<Rat>> dist(static_cast<std::size_t>(group->order()));
    dist[0] = Rat(0);
    std::queue<int> bfs;
    bfs.push(0);
    Rat max_finite(0);
    const std::vector<int> gen_ids = gens.ids();
    while (!bfs.empty()) {
        int x = bfs.front();
        bfs.pop();
        for (int g : gen_ids) {
            int n = group->mul(x, g);
            if (dist[static_cast<std::size_t>(n)]) continue;
            dist[static_cast<std::size_t>(n)] = *dist[static_cast<std::size_t>(x)] + Rat(1);
            max_finite = std::max(max_finite, *dist[static_cast<std::size_t>(n)]);
            bfs.push(n);
        }
    }
    return detail::finish_gen_norm(group, std::move(dist), pad, true, max_finite);
}

// Weighted variant: Dijkstra with exact rational edge weights; inverse pairs
// share a weight and duplicated elements keep their minimum weight.
inline NormTable weighted_word_norm(const GroupPtr& group, const WeightedGenSet& gens,
                                    bool conjugacy_invariant, bool pad = false) {
    if (gens.group != group) throw ContractError("generating set lives over a different group");
    std::vector<std::optional<Rat>> weight(static_cast<std::size_t>(group->order()));
    const auto offer = [&](int id, const Rat& w) {
        auto& slot = weight[static_cast<std::size_t>(id)];
        if (!slot || *slot > w) slot = w;
    };
    for (const auto& [id, w] : gens.entries) {
        if (id < 0 || id >= group->order())
            throw MalformedInputError("weighted generator id out of range");
        if (w <= Rat(0)) throw MalformedInputError("generator weights must be positive");
        if (id == 0) continue;
        offer(id, w);
        offer(group->inv(id), w);
        if (conjugacy_invariant)
            for (int c : conjugacy_class(group, id).ids()) {
                offer(c, w);
                offer(group->inv(c), w);
            }
    }
    std::vector<std::pair<int, Rat>> edges;
    for (int id = 0; id < group->order(); ++id)
        if (weight[static_cast<std::size_t>(id)])
            edges.emplace_back(id, *weight[static_cast<std::size_t>(id)]);

    std::vector<std::optional<Rat>> dist(static_cast<std::size_t>(group->order()));
    using Entry = std::pair<Rat, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    dist[0] = Rat(0);
    heap.emplace(Rat(0), 0);
    Rat max_finite(0);
    bool integral = true;
    while (!heap.empty()) {
        auto [d, x] = heap.top();
        heap.pop();
        if (dist[static_cast<std::size_t>(x)] && *dist[static_cast<std::size_t>(x)] < d) continue;
        for (const auto& [g, w] : edges) {
            int n = group->mul(x, g);
            Rat nd = d + w;
            auto& slot = dist[static_cast<std::size_t>(n)];
            if (!slot || *slot > nd) {
                slot = nd;
                heap.emplace(nd, n);
            }
        }
    }
    for (const auto& d : dist)
        if (d) {
            max_finite = std::max(max_finite, *d);
            integral &= is_integer(*d);
        }
    return detail::finish_gen_norm(group, std::move(dist), pad, integral, max_finite);
}

// Norm restricted to a subgroup, re-enumerated as a group in its own right.
// to_parent maps new ids back to the ambient group.
struct RestrictedNorm {
    GroupPtr subgroup;
    std::vector<int> to_parent;
    NormTable table;
};

inline RestrictedNorm restrict_norm(const NormTable& t, const ElementSet& h) {
    check_table(t);
    if (h.group != t.group) throw ContractError("subgroup lives over a different group");
    if (!is_subgroup(h)) throw ContractError("restriction target is not a subgroup");
    std::vector<Perm> gens;
    for (int id : h.ids())
        if (id != 0) gens.push_back(t.group->element(id));
    if (gens.empty()) gens.push_back(perm_identity(t.group->degree()));
    GroupPtr sub = enumerate_group(std::move(gens));
    RestrictedNorm out{sub, {}, {}};
    out.to_parent.reserve(static_cast<std::size_t>(sub->order()));
    out.table.group = sub;
    out.table.domain = t.domain;
    for (int id = 0; id < sub->order(); ++id) {
        int parent = t.group->index_of(sub->element(id));
        out.to_parent.push_back(parent);
        out.table.values.push_back(t.at(parent));
    }
    return out;
}

// Quotient norm on G/N: each coset takes the infimum (here: minimum) of the
// parent values over its members.
struct QuotientNorm {
    CosetGroup cosets;
    NormTable table;
};

inline QuotientNorm quotient_norm(const NormTable& t, const ElementSet& n) {
    check_table(t);
    CosetGroup q = coset_group(t.group, n);
    NormTable table;
    table.group = q.quotient;
    table.domain = t.domain;
    table.values.assign(static_cast<std::size_t>(q.quotient->order()), Rat(-1));
    for (int e = 0; e < t.group->order(); ++e) {
        Rat& slot = table.values[static_cast<std::size_t>(q.to_quotient[static_cast<std::size_t>(e)])];
        if (slot < Rat(0) || t.at(e) < slot) slot = t.at(e);
    }
    return QuotientNorm{std::move(q), std::move(table)};
}

inline bool is_prime(long long p) {
    if (p < 2) return false;
    for (long long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Norm value of w against a descending chain of kernels, given through the
// quotient maps chain[0], chain[1], ...: 1/p^s for the first (1-indexed)
// level whose quotient does not kill w, 0 when every listed level does.
// A 0 on a nonidentity word only says the chain is too shallow to see it.
struct ChainNormResult {
    Rat value;
    int first_violated_level;   // 0 when w lies in every listed kernel
};

inline ChainNormResult chain_norm(const std::vector<QuotientSpec>& chain, long long p,
                                  const ReducedWord& w) {
    if (chain.empty()) throw MalformedInputError("chain must list at least one quotient");
    if (!is_prime(p)) throw MalformedInputError(std::to_string(p) + " is not prime");
    for (const QuotientSpec& spec : chain)
        if (spec.rank != w.rank) throw ContractError("chain spec rank differs from word rank");
    for (std::size_t s = 0; s + 1 < chain.size(); ++s)
        if (!kernel_contained(chain[s + 1], chain[s]))
            throw ContractError("chain is not descending at level " + std::to_string(s + 2));
    for (std::size_t s = 0; s < chain.size(); ++s) {
        if (apply_word(chain[s], w) != 0) {
            long long den = 1;
            for (std::size_t i = 0; i <= s; ++i) {
                if (den > std::numeric_limits<long long>::max() / p)
                    throw ResourceLimitError("1/p^s underflows the rational range");
                den *= p;
            }
            return {Rat(1, den), static_cast<int>(s + 1)};
        }
    }
    return {Rat(0), 0};
}

// Round a valid norm up to integer values: integers stay, everything else
// moves to floor + 1.  Subadditivity, symmetry, positivity and (when present)
// invariance all survive; the output is re-validated as a hard postcondition.
inline NormTable round_norm(const NormTable& t) {
    const bool invariant = is_invariant_table(t);
    WitnessReport pre = validate_norm(t, true, invariant);
    if (!pre.passed())
        throw ContractError("round_norm requires a valid norm; validation reported " +
                            std::string(verdict_str(pre.verdict)));
    NormTable out;
    out.group = t.group;
    out.domain = ValueDomain::integers();
    out.values.reserve(t.values.size());
    for (const Rat& v : t.values)
        out.values.push_back(is_integer(v) ? v : Rat(rat_floor(v) + 1));
    WitnessReport post = validate_norm(out, true, invariant);
    if (!post.passed()) throw std::logic_error("rounded norm failed revalidation");
    return out;
}

// Ball around g: elements within distance r of g under d(h,g) = t(h g^{-1}).
inline ElementSet ball(const NormTable& t, const Rat& r, int center = 0, bool strict = false) {
    check_table(t);
    ElementSet out(t.group);
    const int cinv = t.group->inv(center);
    for (int h = 0; h < t.group->order(); ++h) {
        const Rat& d = t.at(t.group->mul(h, cinv));
        if (strict ? d < r : d <= r) out.add(h);
    }
    return out;
}

// Does t arise as the word norm of its own unit ball?  Integer-valued tables
// only; the ball with the identity removed must generate, and regenerating
// the word norm from it must reproduce t exactly.
inline bool is_word_norm(const NormTable& t) {
    check_table(t);
    for (const Rat& v : t.values)
        if (!is_integer(v) || v < Rat(0))
            throw ContractError("is_word_norm needs a nonnegative integer-valued table");
    std::vector<int> unit;
    for (int id = 1; id < t.group->order(); ++id)
        if (t.at(id) <= Rat(1)) unit.push_back(id);
    if (t.group->order() > 1 && unit.empty()) return false;
    if (!subgroup_closure(t.group, unit).full()) return false;
    NormTable regen = word_norm(t.group, make_set(t.group, unit), false);
    return regen.values == t.values;
}

} // namespace wordnorm
