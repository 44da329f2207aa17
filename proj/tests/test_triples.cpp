#include "cohiggs/random.hpp"
#include "cohiggs/triples.hpp"

#include <gtest/gtest.h>

using namespace cohiggs;

namespace {

BinForm f(const char* s) { return parse_form(s); }
BinForm f(const char* s, int d) { return parse_form(s, d); }

// O(d1) -> O(d2) with both fields zero.
Triple line_triple(int d1, int d2, const BinForm& map, int k = 0) {
    const SplittingType e1({d1}), e2({d2});
    return make_triple(k, e1, zero_field(e1, k), e2, zero_field(e2, k), FormMatrix::checked({d2}, {d1}, {map}));
}

FormMatrix constant2(long a, long b, long c, long d) {
    return FormMatrix::checked({0, 0}, {0, 0},
                               {BinForm::constant(Rat(a)), BinForm::constant(Rat(b)), BinForm::constant(Rat(c)),
                                BinForm::constant(Rat(d))});
}

}  // namespace

TEST(ValidateTriple, Examples) {
    EXPECT_TRUE(validate_triple(line_triple(0, 2, f("x0*x1"))));
    const SplittingType e({0, 0});
    const auto c = FormMatrix::scalar({0, 0}, BinForm::constant(Rat(3)));
    EXPECT_TRUE(validate_triple(make_triple(0, e, c, e, c, constant2(1, 2, 3, 4))));
    const auto jordan = constant2(0, 1, 0, 0);
    EXPECT_FALSE(validate_triple(make_triple(0, e, jordan, e, constant2(1, 0, 0, 2), constant2(1, 2, 3, 5))));
    Triple bad = line_triple(0, 1, f("x0"));
    bad.p2.k = 1;
    try {
        validate_triple(bad);
        FAIL();
    } catch (const Error& err) {
        EXPECT_STREQ(err.what(), "twist mismatch");
    }
}

TEST(NuAlpha, Examples) {
    EXPECT_EQ(nu_alpha(0, 0, 1, 1, Rat(2)), Rat(1));
    const auto w = alpha_window(0, 1, 2, 2);
    EXPECT_EQ(w.alpha_m, Rat(1));
    EXPECT_EQ(*w.alpha_M, Rat(4));
    EXPECT_FALSE(alpha_window(0, 2, 2, 2).alpha_M.has_value());
}

TEST(Dual, LineExample) {
    const auto d = dual_triple(line_triple(0, 1, f("x0")));
    EXPECT_EQ(d.p1.E, SplittingType({-1}));
    EXPECT_EQ(d.p2.E, SplittingType({0}));
    EXPECT_EQ(d.f.at(0, 0), f("x0"));
    EXPECT_TRUE(validate_triple(d));
}

TEST(Dual, InvolutionOnRandomTriple) {
    Rng rng(2);
    const SplittingType e1({1, 0}), e2({2, 1});
    for (int trial = 0; trial < 10; ++trial) {
        const auto t = make_triple(0, e1, zero_field(e1, 0), e2, zero_field(e2, 0), random_map(e2.summands(), e1.summands(), rng));
        const auto dd = dual_triple(dual_triple(t));
        EXPECT_EQ(dd.p1.E, t.p1.E);
        EXPECT_EQ(dd.p2.E, t.p2.E);
        EXPECT_EQ(dd.f, t.f);
        EXPECT_EQ(dd.p1.phi, t.p1.phi);
    }
}

TEST(Shift, Examples) {
    const SplittingType e({0, 0});
    const auto c = FormMatrix::scalar({0, 0}, BinForm::constant(Rat(2)));
    const auto t = make_triple(0, e, c, e, c, constant2(1, 0, 0, 1));
    const auto s = shift_family(t, Rat(2));
    EXPECT_TRUE(s.p1.phi.is_zero());
    EXPECT_TRUE(validate_triple(s));
    try {
        shift_family(line_triple(0, 1, f("x0"), 1), Rat(1));
        FAIL();
    } catch (const Error& err) {
        EXPECT_STREQ(err.what(), "identity twist mismatch");
    }
}

TEST(Subtriples, ZeroMapIncludesFactors) {
    const auto t = line_triple(1, 0, f("0", -1));
    bool has1 = false, has2 = false;
    for (const auto& s : enumerate_subtriples(t)) {
        has1 = has1 || (s.s1.rank == 1 && s.s2.rank == 0);
        has2 = has2 || (s.s1.rank == 0 && s.s2.rank == 1);
    }
    EXPECT_TRUE(has1);
    EXPECT_TRUE(has2);
}

TEST(Subtriples, InjectiveLineMap) {
    const auto t = line_triple(0, 1, f("x0"));
    const auto subs = enumerate_subtriples(t);
    // zero, (0, E2), (E1, E2); the saturated image of E1 is E2 itself
    ASSERT_EQ(subs.size(), 3u);
    for (const auto& s : subs) EXPECT_FALSE(s.s1.rank == 1 && s.s2.rank == 0);
}

TEST(Subtriples, NilpotentFactorKernelOnly) {
    const SplittingType e({0, 0});
    const auto phi = constant2(0, 1, 0, 0);
    const auto t = make_triple(0, e, phi, e, phi, FormMatrix::identity({0, 0}));
    for (const auto& s : enumerate_subtriples(t)) {
        if (s.s1.rank == 1) EXPECT_TRUE(same_subbundle(s.s1, coordinate_subbundle(e, {0})));
    }
}

TEST(Subtriples, RankThreeRejected) {
    const SplittingType e({0, 0, 0});
    const auto t = make_triple(0, e, zero_field(e, 0), e, zero_field(e, 0), FormMatrix::identity({0, 0, 0}));
    try {
        enumerate_subtriples(t);
        FAIL();
    } catch (const Error& err) {
        EXPECT_STREQ(err.what(), "desk-scale bound exceeded");
    }
}

TEST(DecideNuAlpha, ZeroMapAtWindowStart) {
    const auto t = line_triple(0, 1, f("0", 1));
    EXPECT_EQ(decide_nu_alpha(t, Rat(1)).status, Status::StrictlySemistable);
    EXPECT_EQ(decide_nu_alpha(t, Rat(2)).status, Status::NotSemistable);
}

TEST(DecideNuAlpha, BelowWindowIsUnstable) {
    const auto t = line_triple(0, 2, f("x0^2"));
    EXPECT_EQ(decide_nu_alpha(t, Rat(1)).status, Status::NotSemistable);
    EXPECT_EQ(decide_nu_alpha(t, Rat(2)).status, Status::StrictlySemistable);
    EXPECT_EQ(decide_nu_alpha(t, Rat(3)).status, Status::Stable);
}

TEST(DecideNuAlpha, InjectiveRankTwoWithStableFactor) {
    // f = identity between E = O(0)^2 with a stable field (anti-diagonal, k = 1)
    const SplittingType e({0, 0});
    const auto phi = FormMatrix::checked({1, 1}, {0, 0}, {f("0", 1), f("x0"), f("x1"), f("0", 1)});
    const SplittingType e2({1, 1});
    const auto t = make_triple(1, e, phi, e2, phi.twisted(1), f("x0") * FormMatrix::identity({0, 0}));
    ASSERT_TRUE(validate_triple(t));
    const auto w = alpha_window(t);
    EXPECT_EQ(decide_nu_alpha(t, w.alpha_m + 1).status, Status::Stable);
}

TEST(DecideNuAlpha, KernelRule) {
    // f has kernel O(0) inside O(0) + O(-1) -> O(0)
    const SplittingType e1({0, -1}), e2({0});
    const auto fm = FormMatrix::checked({0}, {0, -1}, {f("0", 0), f("x0")});
    const auto t = make_triple(0, e1, zero_field(e1, 0), e2, zero_field(e2, 0), fm);
    ASSERT_TRUE(validate_triple(t));
    for (int a = 0; a <= 6; ++a) {
        const Rat alpha = make_rat(a, 2);
        // kernel of degree 0 and rank 1 as the subtriple (ker, 0)
        const Rat lhs = Rat(0) + alpha;
        if (lhs > nu_alpha(t, alpha)) EXPECT_EQ(decide_nu_alpha(t, alpha).status, Status::NotSemistable);
    }
}

TEST(DecideNuAlpha, DualityAndShift) {
    Rng rng(19);
    const SplittingType e1({0}), e2({1, 0});
    for (int trial = 0; trial < 10; ++trial) {
        const auto c = BinForm::constant(Rat(random_int(rng, -2, 2)));
        const auto t = make_triple(0, e1, FormMatrix::scalar({0}, c), e2, FormMatrix::scalar({1, 0}, c),
                                   random_map(e2.summands(), e1.summands(), rng));
        for (int a = 0; a <= 8; ++a) {
            const Rat alpha = make_rat(a, 2);
            const auto s = decide_nu_alpha(t, alpha).status;
            EXPECT_EQ(decide_nu_alpha(dual_triple(t), alpha).status, s);
            EXPECT_EQ(decide_nu_alpha(shift_family(t, Rat(3)), alpha).status, s);
        }
    }
}

TEST(HN, TwoStepChain) {
    const auto t = line_triple(1, 0, f("0", -1));
    const auto chain = hn_filtration(t, Rat(0));
    ASSERT_EQ(chain.steps.size(), 2u);
    EXPECT_EQ(chain.steps[0].nu, Rat(1));
    EXPECT_EQ(chain.steps[1].nu, Rat(0));
    EXPECT_EQ(chain.steps[0].piece.r1(), 1);
    EXPECT_EQ(chain.steps[0].piece.r2(), 0);
}

TEST(HN, SemistableGivesOneStep) {
    const auto chain = hn_filtration(line_triple(0, 2, f("x0^2")), Rat(3));
    ASSERT_EQ(chain.steps.size(), 1u);
    EXPECT_EQ(chain.steps[0].nu, Rat(5, 2));
}

TEST(HN, InvariantsOnRandomTriples) {
    Rng rng(77);
    const std::vector<std::pair<SplittingType, SplittingType>> shapes = {
        {SplittingType({1, 0}), SplittingType({1})}, {SplittingType({0}), SplittingType({2, 0})},
        {SplittingType({1, -1}), SplittingType({0, 0})}};
    for (const auto& [e1, e2] : shapes) {
        for (int trial = 0; trial < 4; ++trial) {
            const auto t = make_triple(0, e1, zero_field(e1, 0), e2, zero_field(e2, 0),
                                       random_map(e2.summands(), e1.summands(), rng));
            const Rat alpha = make_rat(static_cast<long>(random_int(rng, 0, 6)), 2);
            const auto chain = hn_filtration(t, alpha);
            int r1 = 0, r2 = 0, d1 = 0, d2 = 0;
            for (std::size_t i = 0; i < chain.steps.size(); ++i) {
                const auto& s = chain.steps[i];
                if (i > 0) EXPECT_LT(s.nu, chain.steps[i - 1].nu);
                EXPECT_TRUE(is_semistable(decide_nu_alpha(s.piece, alpha).status));
                r1 += s.piece.r1();
                r2 += s.piece.r2();
                d1 += s.piece.d1();
                d2 += s.piece.d2();
            }
            EXPECT_EQ(r1, t.r1());
            EXPECT_EQ(r2, t.r2());
            EXPECT_EQ(d1 + d2, t.d1() + t.d2());
        }
    }
}

TEST(Intertwiner, JordanAgainstIdentity) {
    const std::vector<std::vector<Rat>> j = {{Rat(0), Rat(1)}, {Rat(0), Rat(0)}};
    const auto s = intertwiner_solve(j, FormMatrix::identity({0, 0}));
    ASSERT_TRUE(s.consistent);
    EXPECT_EQ(s.particular, j);
    EXPECT_TRUE(s.null_basis.empty());
    const auto c = commutant(j, {0, 0});
    EXPECT_EQ(c.null_basis.size(), 2u);  // span{I, A1}
}

TEST(Intertwiner, ZeroSourceMatrix) {
    const std::vector<std::vector<Rat>> z = {{Rat(0), Rat(0)}, {Rat(0), Rat(0)}};
    const auto m = FormMatrix::checked({1, 1}, {0, 0}, {f("x0"), f("x1"), f("x0"), f("x1")});
    const auto s = intertwiner_solve(z, m);
    ASSERT_TRUE(s.consistent);
    // A2 M = 0 with M of rank 1: rows of A2 are multiples of (1, -1)
    EXPECT_EQ(s.null_basis.size(), 2u);
    for (const auto& b : s.null_basis) {
        EXPECT_EQ(b[0][0], -b[0][1]);
        EXPECT_EQ(b[1][0], -b[1][1]);
    }
}

TEST(Intertwiner, JordanWithDistinctTwistsHasNoSolution) {
    const std::vector<std::vector<Rat>> j = {{Rat(0), Rat(1)}, {Rat(0), Rat(0)}};
    const auto m = FormMatrix::checked({1, 0}, {0, 0}, {f("x0"), f("x1"), f("2", 0), f("3", 0)});
    EXPECT_FALSE(intertwiner_solve(j, m).consistent);
}
