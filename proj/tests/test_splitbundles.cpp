#include "cohiggs/random.hpp"
#include "cohiggs/splitting.hpp"

#include <gtest/gtest.h>

using namespace cohiggs;

namespace {

BinForm f(const char* s) { return parse_form(s); }

FormMatrix column(const std::vector<int>& rows, int c, std::vector<BinForm> entries) {
    return FormMatrix::checked(rows, {c}, std::move(entries));
}

}  // namespace

TEST(SplittingTypeBasics, OrderAndRankEnforced) {
    EXPECT_THROW(SplittingType({0, 1}), Error);
    EXPECT_THROW(SplittingType(std::vector<int>{}), Error);
    const SplittingType e({2, 0, -1});
    EXPECT_EQ(e.rank(), 3);
    EXPECT_EQ(e.degree(), 1);
    EXPECT_FALSE(e.is_balanced());
    EXPECT_TRUE(SplittingType({1, 1}).is_balanced());
    EXPECT_EQ(e.dual(), SplittingType({1, 0, -2}));
    EXPECT_EQ(e.twisted(2), SplittingType({4, 2, 1}));
}

TEST(Slope, Examples) {
    EXPECT_EQ(slope(SplittingType({2, 0})), Rat(1));
    EXPECT_EQ(slope(SplittingType({0, -1})), Rat(-1, 2));
    EXPECT_EQ(slope(SplittingType({1, 0, 0, -1})), Rat(0));
}

TEST(Slope, TwistShiftsByT) {
    const SplittingType e({3, 1, 1, -2});
    for (int t = -4; t <= 4; ++t) EXPECT_EQ(slope(e.twisted(t)), slope(e) + t);
}

TEST(HomLedger, Examples) {
    const SplittingType e({0, -1});
    EXPECT_EQ(hom_degree_ledger(e, e.twisted(1)), (std::vector<std::vector<int>>{{1, 2}, {0, 1}}));
    EXPECT_EQ(hom_degree_ledger(SplittingType({0}), SplittingType({-1})), (std::vector<std::vector<int>>{{-1}}));
    EXPECT_EQ(hom_degree_ledger(SplittingType({0, 0}), SplittingType({0, 0})),
              (std::vector<std::vector<int>>{{0, 0}, {0, 0}}));
}

TEST(BundleMapValidation, RejectsMismatch) {
    const SplittingType e({1, 0});
    EXPECT_THROW(BundleMap(e, e, FormMatrix::identity({0, 0})), Error);
    EXPECT_NO_THROW(BundleMap(e, e, FormMatrix::identity({1, 0})));
}

TEST(Saturation, RemovesCommonFactor) {
    const auto w = saturate_line_image(column({2, 2}, 0, {f("x1^2"), f("x0*x1")}));
    EXPECT_TRUE(w.saturated);
    EXPECT_EQ(w.degree, 1);
    EXPECT_EQ(w.inclusion.col_degrees(), std::vector<int>{1});
    EXPECT_EQ(to_rational_form(w.inclusion.at(0, 0)), f("x1"));
    EXPECT_EQ(to_rational_form(w.inclusion.at(1, 0)), f("x0"));
}

TEST(Saturation, CoprimeAndConstant) {
    const auto a = saturate_line_image(column({1, 1}, 0, {f("x0"), f("x1")}));
    EXPECT_TRUE(a.saturated);
    EXPECT_EQ(a.degree, 0);
    const auto b = saturate_line_image(column({0, 0}, 0, {parse_form("3", 0), parse_form("0", 0)}));
    EXPECT_EQ(b.degree, 0);
    EXPECT_TRUE(b.saturated);
    EXPECT_TRUE(contains(b, coordinate_subbundle(SplittingType({0, 0}), {0})));
}

TEST(Saturation, ZeroMapThrows) {
    try {
        saturate_line_image(FormMatrix::zero({1, 1}, {0}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_STREQ(e.what(), "no image");
    }
}

TEST(Saturation, IdempotentAndNeverDecreasesDegree) {
    Rng rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        const int c = static_cast<int>(random_int(rng, -2, 1));
        const auto m = random_map({2, 1, 0}, {c}, rng);
        if (m.is_zero()) continue;
        const auto w = saturate_line_image(m);
        EXPECT_GE(w.degree, c);
        EXPECT_TRUE(w.saturated);
        const auto again = saturate_line_image(w.inclusion);
        EXPECT_EQ(again.degree, w.degree);
        EXPECT_TRUE(same_subbundle(w, again));
    }
}

TEST(MakeSubbundle, NonSaturatedDegreeUsesMinors) {
    const auto w = make_subbundle(column({2, 2}, 0, {f("x1^2"), f("x0*x1")}));
    EXPECT_FALSE(w.saturated);
    EXPECT_EQ(w.degree, 1);
}

TEST(Containment, CoordinateBlocks) {
    const SplittingType e({2, 1, 0});
    const auto top = leading_block(e, 2);
    EXPECT_TRUE(contains(top, leading_block(e, 1)));
    EXPECT_FALSE(contains(leading_block(e, 1), top));
    EXPECT_TRUE(contains(full_subbundle(e), top));
    EXPECT_TRUE(contains(top, zero_subbundle(e)));
    EXPECT_FALSE(contains(top, coordinate_subbundle(e, {2})));
}

TEST(Quotient, Examples) {
    EXPECT_EQ(quotient_splitting_type(SplittingType({1, 0}), coordinate_subbundle(SplittingType({1, 0}), {1})),
              SplittingType({1}));
    const auto s = saturate_line_image(column({2, 2}, 1, {f("x1"), f("x0")}));
    EXPECT_EQ(quotient_splitting_type(SplittingType({2, 2}), s), SplittingType({3}));
    const auto diag = saturate_line_image(column({0, 0}, 0, {parse_form("1", 0), parse_form("1", 0)}));
    EXPECT_EQ(quotient_splitting_type(SplittingType({0, 0}), diag), SplittingType({0}));
}

TEST(Quotient, NonSaturatedThrows) {
    const auto w = make_subbundle(column({2, 2}, 0, {f("x1^2"), f("x0*x1")}));
    try {
        quotient_splitting_type(SplittingType({2, 2}), w);
        FAIL();
    } catch (const Error& e) {
        EXPECT_STREQ(e.what(), "saturate first");
    }
}

TEST(Quotient, RankTwoQuotients) {
    const SplittingType e({1, 0, -1});
    EXPECT_EQ(quotient_splitting_type(e, coordinate_subbundle(e, {1})), SplittingType({1, -1}));
    // O(-1) -> O(1)+O(0)+O(-1) via (x0^2, x1, 1): quotient has degree 1 and rank 2
    const auto s = saturate_line_image(FormMatrix::checked({1, 0, -1}, {-1}, {f("x0^2"), f("x1"), parse_form("1", 0)}));
    const auto q = quotient_splitting_type(e, s);
    EXPECT_EQ(q.rank(), 2);
    EXPECT_EQ(q.degree(), 1);
}

TEST(Quotient, DegreeConservationOnRandomWitnesses) {
    Rng rng(23);
    const SplittingType e({2, 1, -1});
    for (int trial = 0; trial < 40; ++trial) {
        const auto m = random_map(e.summands(), {static_cast<int>(random_int(rng, -3, 0))}, rng);
        if (m.is_zero()) continue;
        const auto s = saturate_line_image(m);
        const auto q = quotient_splitting_type(e, s);
        EXPECT_EQ(q.rank(), 2);
        EXPECT_EQ(q.degree() + s.degree, e.degree());
        // a quotient of E cannot have summands below the minimum of E
        EXPECT_GE(q.summands().back(), e.summands().back());
    }
}

TEST(H0, Examples) {
    EXPECT_EQ(h0_twist(SplittingType({-1}), 0), 0);
    EXPECT_EQ(h0_twist(SplittingType({1, 0, 0, -1}), 1), 8);
    EXPECT_EQ(h0_twist(SplittingType({1, 0}, 2), 1), 9);
}
