#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <vector>

#include "support/corpus.hpp"
#include "wordnorm/probe.hpp"

using namespace wordnorm;
using namespace corpus;

namespace {

ReducedWord w_(std::vector<int> letters, int rank = 1) { return reduce(letters, rank); }

const ReducedWord kComm = w_({1, 2, -1, -2}, 2);

ProbeProblem line_problem(ReducedWord w, int m) {
    ProbeProblem p;
    p.rank = 1;
    p.s = basis_word_set(1);
    p.w = std::move(w);
    p.m = m;
    return p;
}

ProbeProblem lattice_problem(ReducedWord w, int m) {
    ProbeProblem p;
    p.rank = 2;
    p.s = basis_word_set(2);
    p.relators = {kComm};
    p.w = std::move(w);
    p.m = m;
    return p;
}

CertifiedClassWord class_of_generator(const SymmetricWordSet& s, const ReducedWord& g,
                                      ReducedWord conjugator) {
    CertifiedClassWord c;
    c.word = conjugate(g, conjugator);
    c.s_index = static_cast<std::size_t>(s.index_of(g));
    c.conjugator = std::move(conjugator);
    c.tail.word = ReducedWord{{}, s.rank};
    return c;
}

QuotientSpec s3_spec() { return make_spec({parse_perm("(0 1)", 3), parse_perm("(0 2)", 3)}); }

std::vector<QuotientSpec> cycle_catalog(int lo, int hi) {
    std::vector<QuotientSpec> out;
    for (int n = lo; n <= hi; ++n) out.push_back(make_spec({full_cycle(n)}));
    return out;
}

std::vector<QuotientSpec> torus_catalog(int lo, int hi) {
    std::vector<QuotientSpec> out;
    for (int n = lo; n <= hi; ++n) out.push_back(cyclic_power_spec(n, 2));
    return out;
}

std::vector<ReducedWord> lattice_window(int radius) {
    std::vector<ReducedWord> out;
    for (int a = -radius; a <= radius; ++a)
        for (int b = -radius; b <= radius; ++b)
            if (std::abs(a) + std::abs(b) <= radius)
                out.push_back(product(word_power(w_({1}, 2), a), word_power(w_({2}, 2), b)));
    return out;
}

} // namespace

TEST_CASE("problem certificates multiply out or throw") {
    ProbeProblem p = lattice_problem(w_({1, 1, 1}, 2), 2);

    CertifiedKernelWord conj_comm;
    conj_comm.factors = {{0, false, w_({1}, 2)}};
    conj_comm.word = conjugate(kComm, w_({1}, 2));
    p.kernel_words = {conj_comm};

    CertifiedKernelWord cancel;
    cancel.factors = {{0, false, w_({}, 2)}, {0, true, w_({}, 2)}};
    cancel.word = ReducedWord{{}, 2};
    p.kernel_words.push_back(cancel);

    p.class_words = {class_of_generator(p.s, w_({1}, 2), w_({2}, 2))};
    REQUIRE_NOTHROW(check_problem(p));

    SECTION("tampered kernel word") {
        p.kernel_words[0].word = kComm;
        REQUIRE_THROWS_AS(check_problem(p), ContractError);
    }
    SECTION("kernel factor cites a missing relator") {
        p.kernel_words[0].factors[0].relator_index = 5;
        REQUIRE_THROWS_AS(check_problem(p), ContractError);
    }
    SECTION("tampered class word") {
        p.class_words[0].word = w_({1}, 2);
        REQUIRE_THROWS_AS(check_problem(p), ContractError);
    }
    SECTION("class word cites a missing generator") {
        p.class_words[0].s_index = 99;
        REQUIRE_THROWS_AS(check_problem(p), ContractError);
    }
    SECTION("tampered class tail") {
        p.class_words[0].tail.word = kComm;
        REQUIRE_THROWS_AS(check_problem(p), ContractError);
    }
    SECTION("mixed ranks") {
        p.w = w_({1});
        REQUIRE_THROWS_AS(check_problem(p), ContractError);
    }
}

TEST_CASE("ball images grow with the exponent and absorb the kernel") {
    auto nine = make_spec({full_cycle(9)});
    auto s1 = basis_word_set(1);

    auto b3 = ball_image(nine, s1, {}, 3);
    REQUIRE(b3.ids() == std::vector<int>{0, 1, 2, 3, 6, 7, 8});

    REQUIRE(ball_image(nine, s1, {}, 0).ids() == std::vector<int>{0});
    REQUIRE(ball_image(nine, s1, {}, 8).count == 9);
    for (int m = 0; m < 5; ++m) {
        auto small = ball_image(nine, s1, {}, m);
        auto big = ball_image(nine, s1, {}, m + 1);
        for (int id : small.ids()) REQUIRE(big.contains(id));
    }

    // A killed relator contributes nothing; a surviving one floods the image
    // with its normal closure.
    auto two = make_spec({parse_perm("(0 1)", 2)});
    REQUIRE(ball_image(two, s1, {w_({1, 1})}, 0).ids() == std::vector<int>{0});
    REQUIRE(ball_image(nine, s1, {w_({1, 1})}, 0).count == 9);

    REQUIRE_THROWS_AS(ball_image(nine, basis_word_set(2), {}, 1), ContractError);
    REQUIRE_THROWS_AS(ball_image(nine, s1, {}, -1), MalformedInputError);
}

TEST_CASE("separation probes answer from the computed set") {
    auto nine = make_spec({full_cycle(9)});

    auto p5 = line_problem(w_({1, 1, 1, 1, 1}), 3);
    auto sep = separation_check_rf(p5, nine);
    REQUIRE(sep.verdict == SepVerdict::separated);
    REQUIRE(sep.w_image == 5);
    REQUIRE(sep.set_ids.size() == 7);
    REQUIRE(verify_certificate(p5, sep));

    auto p2 = line_problem(w_({1, 1}), 3);
    auto in = separation_check_rf(p2, nine);
    REQUIRE(in.verdict == SepVerdict::contained);
    REQUIRE(verify_certificate(p2, in));

    auto torsion = line_problem(w_({1, 1, 1, 1, 1}), 3);
    torsion.relators = {w_({1, 1, 1})};
    auto unusable = separation_check_rf(torsion, nine);
    REQUIRE(unusable.verdict == SepVerdict::inconclusive);
    REQUIRE(unusable.reason.find("does not kill") != std::string::npos);

    SECTION("tampering breaks replay") {
        auto bad = sep;
        bad.verdict = SepVerdict::contained;
        REQUIRE_FALSE(verify_certificate(p5, bad));
        bad = sep;
        bad.set_ids.push_back(5);
        REQUIRE_FALSE(verify_certificate(p5, bad));
    }

    // A separated w at exponent m admits no decomposition into at most m
    // conjugate factors, while a contained one may.
    REQUIRE_FALSE(upper_bound(p5.w, p5.s, 3, 1).upper.has_value());
    REQUIRE(upper_bound(p2.w, p2.s, 3, 1).upper == 2);
}

TEST_CASE("class products evaluate exactly in the symmetric group") {
    auto spec = s3_spec();
    auto s2 = basis_word_set(2);

    ProbeProblem p;
    p.rank = 2;
    p.s = s2;
    p.w = kComm;
    p.m = 2;
    p.class_words = {class_of_generator(s2, w_({1}, 2), w_({}, 2)),
                     class_of_generator(s2, w_({2}, 2), w_({}, 2))};

    // Two transposition classes multiply to the identity and both 3-cycles;
    // the commutator lands there.
    auto member = closure_product_check(p, spec);
    REQUIRE(member.verdict == SepVerdict::contained);
    REQUIRE(member.set_ids.size() == 3);
    REQUIRE(member.dagger_excluded == false);
    REQUIRE(member.containment_consistent == true);
    REQUIRE(member.reason.find("axis2=consistent") != std::string::npos);
    REQUIRE(verify_certificate(p, member));

    // No transposition is a product of two transpositions.
    p.w = w_({1}, 2);
    auto excluded = closure_product_check(p, spec);
    REQUIRE(excluded.verdict == SepVerdict::separated);
    REQUIRE_FALSE(std::binary_search(excluded.set_ids.begin(), excluded.set_ids.end(),
                                     excluded.w_image));
    REQUIRE(verify_certificate(p, excluded));

    // The empty product is the identity alone.
    ProbeProblem empty;
    empty.rank = 2;
    empty.s = s2;
    empty.w = w_({}, 2);
    empty.m = 0;
    REQUIRE(closure_product_check(empty, spec).verdict == SepVerdict::contained);
    empty.w = w_({1}, 2);
    REQUIRE(closure_product_check(empty, spec).verdict == SepVerdict::separated);

    // The class product can hold w while the m-fold unit-ball product misses
    // it: the two observations are distinct.
    ProbeProblem narrow;
    narrow.rank = 2;
    narrow.s = s2;
    narrow.w = w_({1}, 2);
    narrow.m = 0;
    narrow.class_words = {class_of_generator(s2, w_({1}, 2), w_({}, 2))};
    auto split = closure_product_check(narrow, spec);
    REQUIRE(split.verdict == SepVerdict::contained);
    REQUIRE(split.dagger_excluded == true);
    REQUIRE(split.containment_consistent == false);
    REQUIRE(split.reason.find("axis2=violated-in-image") != std::string::npos);
}

TEST_CASE("windowed separation needs injectivity and exclusion together") {
    auto p = lattice_problem(w_({1, 1, 1}, 2), 2);
    const std::vector<ReducedWord> d = {w_({1}, 2), w_({2}, 2), w_({1, 2}, 2), w_({1, 1}, 2)};

    auto seven = cyclic_power_spec(7, 2);
    auto sep = lef_separation_check(p, d, seven);
    REQUIRE(sep.verdict == SepVerdict::separated);
    REQUIRE(sep.partial_iso == true);
    REQUIRE(sep.ball_separated == true);
    REQUIRE(sep.set_ids.size() == 13);
    REQUIRE(verify_certificate(p, sep, d));

    // Mod 2 the window folds: x0 and x0^3 collide.
    const std::vector<ReducedWord> folded = {w_({1}, 2), w_({1, 1, 1}, 2)};
    auto collapsed = lef_separation_check(p, folded, cyclic_power_spec(2, 2));
    REQUIRE(collapsed.partial_iso == false);
    REQUIRE(collapsed.verdict != SepVerdict::separated);
    REQUIRE(collapsed.reason.find("partial-isomorphism") != std::string::npos);

    // w inside the ball can never separate.
    auto inside = lattice_problem(w_({1}, 2), 2);
    auto held = lef_separation_check(inside, d, seven);
    REQUIRE(held.verdict == SepVerdict::contained);
    REQUIRE(held.partial_iso == true);
    REQUIRE(held.ball_separated == false);

    auto torsion = lattice_problem(w_({1, 1, 1}, 2), 2);
    torsion.relators.push_back(w_({1, 1}, 2));
    REQUIRE(lef_separation_check(torsion, d, seven).verdict == SepVerdict::inconclusive);
}

TEST_CASE("catalog scans stop at the first success") {
    auto p5 = line_problem(w_({1, 1, 1, 1, 1}), 3);

    auto run = quotient_search(p5, cycle_catalog(2, 12), ProbeGoal::rf_separation);
    REQUIRE(run.succeeded());
    REQUIRE(run.success_index == 7);
    REQUIRE(run.certificate->spec.image->order() == 9);
    REQUIRE(run.attempts.size() == 8);
    REQUIRE(run.attempts.front() == "spec#0 order=2: contained");
    REQUIRE(run.attempts.back().find("separated") != std::string::npos);
    REQUIRE(run.caveat.empty());

    auto empty = quotient_search(p5, {}, ProbeGoal::rf_separation);
    REQUIRE_FALSE(empty.succeeded());
    REQUIRE(empty.caveat == kExhaustionCaveat);

    std::vector<QuotientSpec> twice = {make_spec({full_cycle(9)}), make_spec({full_cycle(9)})};
    REQUIRE(quotient_search(p5, twice, ProbeGoal::rf_separation).success_index == 0);

    // Under the containment goal the whole catalog may be exhausted.
    auto p2 = line_problem(w_({1, 1}), 3);
    auto spent = quotient_search(p2, cycle_catalog(2, 6), ProbeGoal::rf_separation);
    REQUIRE_FALSE(spent.succeeded());
    REQUIRE(spent.attempts.size() == 5);
    REQUIRE(spent.caveat == kExhaustionCaveat);
}

TEST_CASE("witness goal drives the builder across the catalog") {
    auto p = lattice_problem(w_({1}, 2), 0);
    const auto d = lattice_window(2);
    auto q = make_thresholds({Rat(0), Rat(1), Rat(2), Rat(3)});

    auto run = quotient_search(p, torus_catalog(2, 12), ProbeGoal::lef_witness, d, q);
    REQUIRE(run.succeeded());
    REQUIRE(run.success_index == 3);
    REQUIRE(run.witness->report.passed());
    REQUIRE(run.witness->map.target->order() == 25);
    for (int i = 0; i < 3; ++i)
        REQUIRE(run.attempts[static_cast<std::size_t>(i)].find("fail") != std::string::npos);

    // Specs that do not kill the relators are skipped, not counted as failures.
    std::vector<QuotientSpec> mixed = {s3_spec(), cyclic_power_spec(5, 2)};
    auto skipped = quotient_search(p, mixed, ProbeGoal::lef_witness, d, q);
    REQUIRE(skipped.success_index == 1);
    REQUIRE(skipped.attempts.front().find("skipped") != std::string::npos);

    // The other goals ride the same scanner.
    ProbeProblem classes;
    classes.rank = 2;
    classes.s = basis_word_set(2);
    classes.w = w_({1}, 2);
    classes.m = 2;
    classes.class_words = {class_of_generator(classes.s, w_({1}, 2), w_({}, 2)),
                           class_of_generator(classes.s, w_({2}, 2), w_({}, 2))};
    auto no_member =
        quotient_search(classes, {s3_spec()}, ProbeGoal::product_membership_no);
    REQUIRE(no_member.succeeded());
    REQUIRE(no_member.certificate->kind == ProbeKind::closure_product);

    auto lef = quotient_search(lattice_problem(w_({1, 1, 1}, 2), 2), torus_catalog(2, 8),
                               ProbeGoal::lef_separation, d);
    REQUIRE(lef.succeeded());
    REQUIRE(lef.certificate->partial_iso == true);
}

TEST_CASE("homomorphism catalogs enumerate deterministically") {
    auto all = hom_catalog(1, {cyclic(2), cyclic(3)}, {});
    REQUIRE(all.size() == 5);

    auto killing = hom_catalog(1, {cyclic(2), cyclic(3)}, {w_({1, 1})});
    REQUIRE(killing.size() == 3);
    REQUIRE(killing[0].image->order() == 1);
    REQUIRE(killing[1].image->order() == 2);
    REQUIRE(killing[2].image->order() == 1);

    auto square = hom_catalog(2, {cyclic(2)}, {});
    REQUIRE(square.size() == 4);
    REQUIRE(square.front().image->order() == 1);
    REQUIRE(apply_word(square[1], w_({1}, 2)) == 0);
    REQUIRE(apply_word(square[1], w_({2}, 2)) != 0);
    REQUIRE(apply_word(square.back(), w_({1, -2}, 2)) == 0);

    REQUIRE_THROWS_AS(hom_catalog(2, {cyclic(3)}, {}, 3), ResourceLimitError);
}

TEST_CASE("certificate batches stay consistent") {
    auto nine = make_spec({full_cycle(9)});
    auto p5 = line_problem(w_({1, 1, 1, 1, 1}), 3);
    auto p2 = line_problem(w_({1, 1}), 3);

    std::vector<SeparationCertificate> batch = {
        separation_check_rf(p5, nine),
        separation_check_rf(p5, nine),
        separation_check_rf(p2, nine),
        separation_check_rf(p5, make_spec({full_cycle(7)})),
    };
    REQUIRE(certificates_consistent(batch));

    SECTION("a flipped verdict is caught by the membership audit") {
        batch[1].verdict = SepVerdict::contained;
        REQUIRE_FALSE(certificates_consistent(batch));
    }
    SECTION("identical observations cannot disagree") {
        batch[1].verdict = SepVerdict::contained;
        batch[1].set_ids.push_back(5);
        std::sort(batch[1].set_ids.begin(), batch[1].set_ids.end());
        batch.push_back(batch[1]);
        batch.back().verdict = SepVerdict::separated;
        REQUIRE_FALSE(certificates_consistent(batch));
    }
}
