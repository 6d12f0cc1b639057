#pragma once

#include <memory>
#include <queue>
#include <string>
#include <unordered_map>
#include <vector>

#include "errors.hpp"
#include "free_words.hpp"
#include "perm.hpp"

namespace wordnorm {

inline constexpr std::size_t kDefaultOrderCap = 100000;

// A concrete finite permutation group, fully enumerated.  Element ids are a
// bijection onto 0..order-1 in BFS discovery order (right-multiplying by the
// generators in their given order), so id 0 is always the identity and ids
// are reproducible from the generator list alone.
class FiniteGroup {
  public:
    FiniteGroup(std::vector<Perm> gens, std::size_t cap) : gens_(std::move(gens)) {
        if (gens_.empty()) throw MalformedInputError("a group needs at least one generator");
        degree_ = gens_[0].degree();
        for (const Perm& g : gens_) {
            if (g.degree() != degree_) throw MalformedInputError("generator degree mismatch");
            check_perm(g);
        }
        Perm e = perm_identity(degree_);
        elems_.push_back(e);
        index_.emplace(e, 0);
        for (std::size_t at = 0; at < elems_.size(); ++at) {
            for (const Perm& g : gens_) {
                Perm n = elems_[at] * g;
                if (index_.contains(n)) continue;
                if (elems_.size() >= cap)
                    throw ResourceLimitError("group order exceeds cap " + std::to_string(cap) +
                                             "; raise the cap to enumerate");
                index_.emplace(n, static_cast<int>(elems_.size()));
                elems_.push_back(std::move(n));
            }
        }
        inv_.assign(elems_.size(), -1);
    }

    int degree() const { return degree_; }
    int order() const { return static_cast<int>(elems_.size()); }
    const std::vector<Perm>& generators() const { return gens_; }
    const Perm& element(int id) const { return elems_[static_cast<std::size_t>(id)]; }

    int index_of(const Perm& p) const {
        auto it = index_.find(p);
        if (it == index_.end())
            throw ContractError("permutation " + perm_str(p) + " is not a group element");
        return it->second;
    }
    bool contains(const Perm& p) const { return index_.contains(p); }

    int mul(int a, int b) const {
        return index_of(element(a) * element(b));
    }
    int inv(int a) const {
        int& memo = inv_[static_cast<std::size_t>(a)];
        if (memo < 0) memo = index_of(perm_inverse(element(a)));
        return memo;
    }
    int conj(int g, int h) const {  // g^h = h^{-1} g h
        return mul(mul(inv(h), g), h);
    }
    std::vector<int> generator_ids() const {
        std::vector<int> ids;
        ids.reserve(gens_.size());
        for (const Perm& g : gens_) ids.push_back(index_of(g));
        return ids;
    }

  private:
    int degree_ = 0;
    std::vector<Perm> gens_;
    std::vector<Perm> elems_;
    std::unordered_map<Perm, int, PermHash> index_;
    mutable std::vector<int> inv_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

inline GroupPtr enumerate_group(std::vector<Perm> gens, std::size_t cap = kDefaultOrderCap) {
    return std::make_shared<FiniteGroup>(std::move(gens), cap);
}

// Subset of one group's elements, bitset over ids.  Membership iteration is
// always in ascending id order, so every derived result is deterministic.
struct ElementSet {
    GroupPtr group;
    std::vector<bool> bits;
    int count = 0;

    explicit ElementSet(GroupPtr g)
        : group(std::move(g)), bits(static_cast<std::size_t>(group->order()), false) {}

    bool contains(int id) const { return bits[static_cast<std::size_t>(id)]; }
    void add(int id) {
        if (!bits[static_cast<std::size_t>(id)]) {
            bits[static_cast<std::size_t>(id)] = true;
            ++count;
        }
    }
    std::vector<int> ids() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(count));
        for (std::size_t i = 0; i < bits.size(); ++i)
            if (bits[i]) out.push_back(static_cast<int>(i));
        return out;
    }
    bool full() const { return count == group->order(); }

    friend bool operator==(const ElementSet& a, const ElementSet& b) {
        return a.group == b.group && a.bits == b.bits;
    }
};

inline void check_same_group(const ElementSet& a, const ElementSet& b) {
    if (a.group != b.group) throw ContractError("element sets live over different groups");
}

inline ElementSet make_set(GroupPtr g, const std::vector<int>& ids) {
    ElementSet s(std::move(g));
    for (int id : ids) {
        if (id < 0 || id >= s.group->order())
            throw MalformedInputError("element id " + std::to_string(id) + " out of range");
        s.add(id);
    }
    return s;
}

// {a*b : a in A, b in B}; stops early once the whole group is reached.
inline ElementSet set_product(const ElementSet& a, const ElementSet& b) {
    check_same_group(a, b);
    ElementSet r(a.group);
    for (int x : a.ids()) {
        for (int y : b.ids()) {
            r.add(a.group->mul(x, y));
            if (r.full()) return r;
        }
    }
    return r;
}

// Orbit of g under conjugation; conjugating by generators suffices to close.
inline ElementSet conjugacy_class(const GroupPtr& group, int g) {
    ElementSet cls(group);
    cls.add(g);
    std::vector<int> work{g};
    const std::vector<int> gen_ids = group->generator_ids();
    while (!work.empty()) {
        int x = work.back();
        work.pop_back();
        for (int s : gen_ids) {
            int c = group->conj(x, s);
            if (!cls.contains(c)) {
                cls.add(c);
                work.push_back(c);
            }
        }
    }
    return cls;
}

// Subgroup generated by the given ids (closure under product; inverses come
// free in a finite group).
inline ElementSet subgroup_closure(const GroupPtr& group, const std::vector<int>& gen_ids) {
    ElementSet h(group);
    h.add(0);
    std::vector<int> work{0};
    while (!work.empty()) {
        int x = work.back();
        work.pop_back();
        for (int s : gen_ids) {
            int n = group->mul(x, s);
            if (!h.contains(n)) {
                h.add(n);
                work.push_back(n);
            }
        }
    }
    return h;
}

inline bool is_subgroup(const ElementSet& h) {
    if (!h.contains(0)) return false;
    const std::vector<int> ids = h.ids();
    for (int a : ids) {
        if (!h.contains(h.group->inv(a))) return false;
        for (int b : ids)
            if (!h.contains(h.group->mul(a, b))) return false;
    }
    return true;
}

inline bool is_normal(const ElementSet& h) {
    if (!is_subgroup(h)) return false;
    const std::vector<int> gen_ids = h.group->generator_ids();
    for (int a : h.ids())
        for (int s : gen_ids)
            if (!h.contains(h.group->conj(a, s))) return false;
    return true;
}

// Smallest normal subgroup containing the seeds: alternately close under
// products and conjugate the generating list by the group's generators.
inline ElementSet normal_closure(const GroupPtr& group, const std::vector<int>& seeds) {
    std::vector<int> gens;
    for (int s : seeds)
        if (s != 0) gens.push_back(s);
    ElementSet h = subgroup_closure(group, gens);
    const std::vector<int> group_gens = group->generator_ids();
    bool grew = true;
    while (grew) {
        grew = false;
        for (std::size_t i = 0; i < gens.size(); ++i) {
            for (int s : group_gens) {
                int c = group->conj(gens[i], s);
                if (!h.contains(c)) {
                    gens.push_back(c);
                    h = subgroup_closure(group, gens);
                    grew = true;
                }
            }
        }
    }
    return h;
}

// Generator images for the free basis x_0..x_{rank-1}; the image group is the
// subgroup they generate, so the induced map onto it is surjective by
// construction.
struct QuotientSpec {
    int rank = 0;
    std::vector<Perm> images;
    GroupPtr image;
};

inline QuotientSpec make_spec(std::vector<Perm> images, std::size_t cap = kDefaultOrderCap) {
    if (images.empty()) throw MalformedInputError("a quotient spec needs at least one image");
    QuotientSpec spec;
    spec.rank = static_cast<int>(images.size());
    spec.image = enumerate_group(images, cap);
    spec.images = std::move(images);
    return spec;
}

inline Perm apply_word_perm(const QuotientSpec& spec, const ReducedWord& w) {
    if (w.rank != spec.rank)
        throw ContractError("word rank " + std::to_string(w.rank) +
                            " does not match spec rank " + std::to_string(spec.rank));
    Perm acc = perm_identity(spec.image->degree());
    for (int l : w.letters) {
        const Perm& g = spec.images[static_cast<std::size_t>(std::abs(l) - 1)];
        acc = acc * (l > 0 ? g : perm_inverse(g));
    }
    return acc;
}

inline int apply_word(const QuotientSpec& spec, const ReducedWord& w) {
    return spec.image->index_of(apply_word_perm(spec, w));
}

// ker(a) <= ker(b) as subgroups of the rank-r free group, decided by the
// graph criterion: the subgroup of image(a) x image(b) generated by the
// paired generator images contains a pair (1, h) with h != 1 exactly when
// some word dies under a but survives b.
inline bool kernel_contained(const QuotientSpec& a, const QuotientSpec& b,
                             std::size_t cap = kDefaultOrderCap) {
    if (a.rank != b.rank) throw ContractError("spec ranks differ");
    const int da = a.image->degree();
    const int db = b.image->degree();
    std::vector<Perm> pair_gens;
    for (int i = 0; i < a.rank; ++i) {
        Perm p = perm_identity(da + db);
        const Perm& ga = a.images[static_cast<std::size_t>(i)];
        const Perm& gb = b.images[static_cast<std::size_t>(i)];
        for (int x = 0; x < da; ++x) p.img[static_cast<std::size_t>(x)] = ga(x);
        for (int x = 0; x < db; ++x) p.img[static_cast<std::size_t>(da + x)] = da + gb(x);
        pair_gens.push_back(std::move(p));
    }
    GroupPtr graph = enumerate_group(pair_gens, cap);
    for (int id = 0; id < graph->order(); ++id) {
        const Perm& p = graph->element(id);
        bool first_trivial = true;
        for (int x = 0; x < da && first_trivial; ++x)
            if (p(x) != x) first_trivial = false;
        if (!first_trivial) continue;
        for (int x = 0; x < db; ++x)
            if (p(da + x) != da + x) return false;
    }
    return true;
}

// G/N realized concretely through the regular action of G on left cosets gN;
// to_quotient is the projection homomorphism by element id.  Coset 0 is N.
struct CosetGroup {
    GroupPtr parent;
    ElementSet kernel;
    GroupPtr quotient;
    std::vector<int> to_quotient;   // parent id -> quotient id
    std::vector<int> coset_rep;     // coset index -> least parent id in the coset
};

inline CosetGroup coset_group(const GroupPtr& group, const ElementSet& n) {
    if (n.group != group) throw ContractError("subgroup lives over a different group");
    if (!is_normal(n)) throw ContractError("set is not a normal subgroup");
    const int order = group->order();
    std::vector<int> coset_of(static_cast<std::size_t>(order), -1);
    std::vector<int> reps;
    const std::vector<int> n_ids = n.ids();
    for (int e = 0; e < order; ++e) {
        if (coset_of[static_cast<std::size_t>(e)] >= 0) continue;
        int c = static_cast<int>(reps.size());
        reps.push_back(e);
        for (int k : n_ids) coset_of[static_cast<std::size_t>(group->mul(e, k))] = c;
    }
    const int ncos = static_cast<int>(reps.size());
    const auto action = [&](int g) {
        Perm p;
        p.img.resize(static_cast<std::size_t>(ncos));
        for (int c = 0; c < ncos; ++c)
            p.img[static_cast<std::size_t>(c)] =
                coset_of[static_cast<std::size_t>(group->mul(g, reps[static_cast<std::size_t>(c)]))];
        return p;
    };
    std::vector<Perm> qgens;
    for (int g : group->generator_ids()) qgens.push_back(action(g));
    GroupPtr q = enumerate_group(qgens);
    if (q->order() != ncos)
        throw ContractError("quotient action is not regular; subgroup was not normal");
    std::vector<int> proj(static_cast<std::size_t>(order));
    for (int e = 0; e < order; ++e) proj[static_cast<std::size_t>(e)] = q->index_of(action(e));
    return CosetGroup{group, n, std::move(q), std::move(proj), std::move(reps)};
}

} // namespace wordnorm
