#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "twoadic/dyadic.hpp"
#include "twoadic/random.hpp"

using namespace twoadic;

namespace {

DyadicRational random_dyadic(Rng& rng, int max_exp = 6) {
    return DyadicRational{rng.integer(-100000, 100000), static_cast<int>(rng.integer(-max_exp, max_exp))};
}

}  // namespace

TEST(DyadicRational, CanonicalForm) {
    const DyadicRational a{12, 3};  // 12/8 = 3/2
    EXPECT_EQ(a.numerator(), 3);
    EXPECT_EQ(a.exponent(), 1);
    const DyadicRational z{0, 7};
    EXPECT_EQ(z.numerator(), 0);
    EXPECT_EQ(z.exponent(), 0);
    EXPECT_EQ(DyadicRational(8).exponent(), -3);
}

TEST(DyadicRational, ArithmeticIsExact) {
    Rng rng(11);
    for (int i = 0; i < 2000; ++i) {
        const auto x = random_dyadic(rng), y = random_dyadic(rng);
        EXPECT_EQ((x + y) - y, x);
        EXPECT_EQ(x * y, y * x);
        EXPECT_EQ((x + y).to_double(), x.to_double() + y.to_double());  // both exact at this size
        EXPECT_EQ(x - x, DyadicRational{});
    }
    EXPECT_EQ(DyadicRational(1, 1) + DyadicRational(1, 1), DyadicRational(1));
    EXPECT_EQ(DyadicRational(3, 2) * DyadicRational(4), DyadicRational(3));
}

TEST(DyadicRational, OverflowThrows) {
    const DyadicRational big{(std::int64_t{1} << 62) + 1};
    EXPECT_THROW((void)(big * big), std::overflow_error);
}

TEST(Valuation, Examples) {
    EXPECT_EQ(valuation(DyadicRational(12)).value(), 2);
    EXPECT_TRUE(valuation(DyadicRational(0)).is_infinite());
    EXPECT_EQ(valuation(DyadicRational(5, 3)).value(), -3);
}

TEST(Norm2, Examples) {
    EXPECT_EQ(norm2(DyadicRational(12)), 0.25);
    EXPECT_EQ(norm2(DyadicRational(0)), 0.0);
    EXPECT_EQ(norm2(DyadicRational(5, 3)), 8.0);
}

TEST(Dist2, Examples) {
    EXPECT_EQ(dist2(DyadicRational(1), DyadicRational(3)), 0.5);
    EXPECT_EQ(dist2(DyadicRational(7, 2), DyadicRational(7, 2)), 0.0);
    EXPECT_EQ(dist2(DyadicRational(0), DyadicRational(1, 2)), 4.0);
}

TEST(Dist2, UltrametricInequality) {
    Rng rng(3);
    for (int i = 0; i < 5000; ++i) {
        const auto x = random_dyadic(rng), y = random_dyadic(rng), z = random_dyadic(rng);
        EXPECT_LE(dist2(x, z), std::max(dist2(x, y), dist2(y, z)));
    }
}

TEST(BallMeasure, Examples) {
    EXPECT_EQ(ball_measure(Cell::unit_ball()), 1.0);
    EXPECT_EQ(ball_measure(Cell{2, 3}), 0.25);
    EXPECT_EQ(ball_measure(Cell{-2, 0}), 4.0);
    EXPECT_EQ(ball_measure_exact(Cell{2, 3}), DyadicRational(1, 2));
}

TEST(BallMeasure, AdditivityIsExact) {
    for (int n = -4; n <= 10; ++n) {
        const DyadicRational a{5, 3};
        const Cell parent{n, a};
        const Cell left{n + 1, a};
        const Cell right{n + 1, a + DyadicRational(1, -n)};
        EXPECT_EQ(ball_measure_exact(parent), ball_measure_exact(left) + ball_measure_exact(right));
        EXPECT_EQ(left.relation_to(right), Cell::Relation::Disjoint);
        EXPECT_EQ(parent.relation_to(left), Cell::Relation::Contains);
    }
}

TEST(Cell, TrichotomyExhaustiveToLevel8) {
    std::vector<Cell> cells;
    for (int n = 0; n <= 8; ++n)
        for (std::int64_t a = 0; a < (std::int64_t{1} << n); ++a) cells.emplace_back(n, DyadicRational(a));
    for (const auto& c : cells)
        for (const auto& d : cells) {
            const auto rel = c.relation_to(d);
            // nested or disjoint, decided independently by containment of anchors
            const bool c_in_d = d.contains(c.residue()) && c.level() >= d.level();
            const bool d_in_c = c.contains(d.residue()) && d.level() >= c.level();
            if (c_in_d && d_in_c) EXPECT_EQ(rel, Cell::Relation::Equal);
            else if (d_in_c) EXPECT_EQ(rel, Cell::Relation::Contains);
            else if (c_in_d) EXPECT_EQ(rel, Cell::Relation::ContainedIn);
            else EXPECT_EQ(rel, Cell::Relation::Disjoint);
        }
}

TEST(Cell, ResidueIsReduced) {
    const Cell c{2, DyadicRational(7)};
    EXPECT_EQ(c.residue(), DyadicRational(3));
    EXPECT_TRUE(c.contains(DyadicRational(-1)));
    EXPECT_FALSE(c.contains(DyadicRational(1)));
}

TEST(SplittingGeneration, Examples) {
    EXPECT_EQ(splitting_generation(1, 3, 2), 1);
    EXPECT_EQ(splitting_generation(0, 1, 1), 0);
    EXPECT_EQ(splitting_generation(2, 6, 3), 2);
    EXPECT_THROW(splitting_generation(5, 5, 3), PreconditionError);
    EXPECT_THROW(splitting_generation(1, 9, 3), PreconditionError);  // equal modulo 8
}

TEST(Character, Examples) {
    const auto c1 = character(DyadicRational(1), DyadicRational(1, 1)).value();
    EXPECT_EQ(c1, std::complex<double>(-1.0, 0.0));
    const auto c2 = character(DyadicRational(37, 5), DyadicRational(0)).value();
    EXPECT_EQ(c2, std::complex<double>(1.0, 0.0));
    const auto c3 = character(DyadicRational(3), DyadicRational(1, 2)).value();
    EXPECT_EQ(c3, std::complex<double>(0.0, -1.0));
}

TEST(Character, UnitModulusAndBilinearity) {
    Rng rng(5);
    for (int i = 0; i < 3000; ++i) {
        const auto x = random_dyadic(rng, 20), y = random_dyadic(rng, 20), l = random_dyadic(rng, 20);
        const auto cx = character(x, l), cy = character(y, l), cxy = character(x + y, l);
        EXPECT_NEAR(std::abs(cxy.value()), 1.0, 1e-15);
        EXPECT_LT(std::abs(cxy.value() - cx.value() * cy.value()), 1e-14);
        EXPECT_EQ(cxy.phase(), (cx * cy).phase());
    }
}

TEST(Character, LargeArgumentsKeepPrecision) {
    // x λ = (2^50 + 1)/2 ≡ 1/2 modulo 1
    const DyadicRational x{(std::int64_t{1} << 50) + 1};
    EXPECT_EQ(character(x, DyadicRational(1, 1)).value(), std::complex<double>(-1.0, 0.0));
}
