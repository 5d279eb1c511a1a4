#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "twoadic/random.hpp"
#include "twoadic/ventilation.hpp"

using namespace twoadic;

namespace {

StepFunction positive_step_function(Rng& rng, int n) {
    StepFunction u(0, n);
    for (std::size_t a = 0; a < u.size(); ++a) u[a] = rng.uniform(0.0, 1.0);
    return u;
}

}  // namespace

TEST(Zeta, Examples) {
    EXPECT_DOUBLE_EQ(zeta_local(1.0), 2.0);
    EXPECT_NEAR(zeta_local(60.0), 1.0, 1e-15);
    EXPECT_DOUBLE_EQ(RieszParams::from_alpha(1.5).zeta, 4.0);
    EXPECT_NEAR(zeta_local(-1.0), -1.0, 1e-15);
    try {
        zeta_local(0.0);
        FAIL();
    } catch (const PreconditionError& e) {
        EXPECT_NE(std::string(e.what()).find("pole of zeta"), std::string::npos);
    }
    EXPECT_THROW(RieszParams::from_alpha(2.0), PreconditionError);
    EXPECT_THROW(RieszParams::from_alpha(1.0), PreconditionError);
}

TEST(Zeta, BetaOfAlpha) {
    for (double a : {1.1, 1.3, 1.5, 1.63, 1.9}) {
        const auto P = RieszParams::from_alpha(a);
        EXPECT_NEAR(std::exp2(-P.beta), a / 2.0, 1e-15);
        EXPECT_NEAR(P.zeta / 2.0, 1.0 / (2.0 - a), 1e-13);
    }
}

TEST(RieszKernel, ValuesAndErrors) {
    const auto P = RieszParams::from_beta(1.0);  // ζ = 2, kernel ≡ 1
    EXPECT_DOUBLE_EQ(riesz_kernel_value(P, DyadicRational(3)), 1.0);
    EXPECT_DOUBLE_EQ(riesz_kernel_value(P, DyadicRational(8)), 1.0);
    const auto Q = RieszParams::from_beta(0.5);
    EXPECT_NEAR(riesz_kernel_value(Q, DyadicRational(4)), 2.0 / Q.zeta * std::pow(0.25, -0.5), 1e-15);
    try {
        riesz_kernel_value(P, DyadicRational(0));
        FAIL();
    } catch (const PreconditionError& e) {
        EXPECT_NE(std::string(e.what()).find("kernel singularity"), std::string::npos);
    }
    try {
        riesz_kernel_value(RieszParams::from_beta(-0.5), DyadicRational(1));
        FAIL();
    } catch (const PreconditionError& e) {
        EXPECT_NE(std::string(e.what()).find("principal value not implemented in real space"), std::string::npos);
    }
}

TEST(RieszKernel, BallIntegralMatchesSphereSeries) {
    for (double beta : {0.2, 0.5, 0.9, 1.4}) {
        const auto P = RieszParams::from_beta(beta);
        for (int n = 0; n <= 8; ++n) {
            double s = 0.0;
            for (int m = n; m < n + 400; ++m) s += 2.0 / P.zeta * std::exp2(-m - 1) * std::exp2(-m * (beta - 1.0));
            EXPECT_NEAR(riesz_kernel_ball_integral(P, n), s, 1e-12);
        }
    }
}

TEST(RieszConvolve, MatchesNaiveSum) {
    Rng rng(41);
    for (double beta : {0.25, 0.7, 1.2})
        for (int n = 0; n <= 7; ++n) {
            const auto P = RieszParams::from_beta(beta);
            const StepFunction u = random_complex_step_function(rng, 0, n);
            const auto g = [&](int m) { return riesz_kernel_value(P, DyadicRational(1, -m)); };
            const StepFunction slow = oracle::naive_radial_convolution(u, g, riesz_kernel_ball_integral(P, n));
            EXPECT_LE(oracle::max_abs_diff(riesz_convolve(u, P), slow), 1e-12);
        }
}

TEST(RieszConvolve, SpectrumIsKernelCoefficient) {
    Rng rng(42);
    for (double beta : {0.3, 0.7, 0.9}) {
        const auto P = RieszParams::from_beta(beta);
        const StepFunction u = random_complex_step_function(rng, 0, 9);
        const Spectrum in = fourier_series(u), out = fourier_series(riesz_convolve(u, P));
        for (std::size_t m = 0; m < in.size(); ++m)
            EXPECT_LE(std::abs(out[m] - riesz_kernel_coefficient(P, in.level(m)) * in[m]), 1e-12);
    }
}

TEST(RieszConvolve, RejectsNonPositiveBeta) {
    EXPECT_THROW(riesz_convolve(StepFunction(0, 3), RieszParams::from_beta(-0.3)), PreconditionError);
}

TEST(RieszMultiplier, Reproduction) {
    Rng rng(43);
    const Spectrum s = fourier_series(random_complex_step_function(rng, 0, 10));
    for (int i = -6; i <= 6; ++i)
        for (int j = -6; j <= 6; ++j) {
            const auto r = reproduction_check(0.1 * i, 0.1 * j, s);
            EXPECT_LE(r.max_rel_error, 1e-14) << i << " " << j;
            EXPECT_LE(r.max_abs_error, 1e-14 * std::exp2(1.2 * 10) * 2.0);
        }
    EXPECT_EQ(reproduction_check(0.4, 0.0, s).max_abs_error, 0.0);
    const Spectrum back = riesz_multiplier_apply(riesz_multiplier_apply(s, 0.7), -0.7);
    for (std::size_t m = 0; m < s.size(); ++m) EXPECT_LE(std::abs(back[m] - s[m]), 1e-13);
}

TEST(RadialMultiplier, HaarMatchesFft) {
    Rng rng(44);
    for (int n = 0; n <= 12; ++n) {
        std::vector<double> mult(static_cast<std::size_t>(n) + 1);
        for (auto& v : mult) v = rng.uniform(-2.0, 2.0);
        const StepFunction f = random_complex_step_function(rng, 0, n);
        EXPECT_LE(oracle::max_abs_diff(apply_radial_multiplier(f, mult), apply_radial_multiplier_fft(f, mult)), 1e-12)
            << n;
    }
    EXPECT_THROW(apply_radial_multiplier(StepFunction(0, 3), std::vector<double>{1.0}), PreconditionError);
}

TEST(NdApply, ConstantFlux) {
    const StepFunction one = StepFunction::constant(1.0, 0, 5);
    const StepFunction p15 = nd_apply(one, 1.5), p163 = nd_apply(one, 1.63);
    for (const auto& v : p15.values()) EXPECT_NEAR(v.real(), 2.0, 1e-14);
    for (const auto& v : p163.values()) EXPECT_NEAR(v.real(), 1.0 / 0.37, 1e-13);
    EXPECT_NEAR(p163[0].real(), 2.7027027027027, 1e-12);
    const StepFunction u = dn_apply(StepFunction::constant(2.0, 0, 4), 1.5);
    for (const auto& v : u.values()) EXPECT_NEAR(v.real(), 1.0, 1e-14);
}

TEST(NdApply, AllRoutesAgree) {
    Rng rng(45);
    for (double a : {1.2, 1.5, 1.63, 1.9})
        for (int n = 0; n <= 9; ++n) {
            const StepFunction u = random_step_function(rng, n);
            const StepFunction haar = nd_apply(u, a);
            EXPECT_LE(oracle::max_abs_diff(nd_apply(u, a, MultiplierRoute::Fft), haar), 1e-11);
            EXPECT_LE(oracle::max_abs_diff(nd_sphere_sum(u, a), haar), 1e-11);

            const auto g = [&](int m) { return std::pow(a, m); };
            const double home = std::pow(a / 2.0, n) / (2.0 - a);
            EXPECT_LE(oracle::max_abs_diff(oracle::naive_radial_convolution(u, g, home), haar), 1e-11);

            StepFunction tree = nd_finite_tree(u, ResistanceProfile::geometric(a));
            const double tail = geometric_subtree_tail(a, n);
            for (std::size_t k = 0; k < tree.size(); ++k) tree[k] += tail * u[k];
            EXPECT_LE(oracle::max_abs_diff(tree, haar), 1e-11) << a << " " << n;
        }
}

TEST(NdApply, SymbolValues) {
    const auto P = RieszParams::from_alpha(1.5);
    EXPECT_NEAR(nd_symbol(P, 0), 2.0, 1e-14);
    for (int q = 1; q <= 10; ++q)
        EXPECT_NEAR(nd_symbol(P, q), P.zeta / zeta_local(1.0 - P.beta) * std::exp2(-q * P.beta), 1e-13);
}

TEST(NdApply, FluxIsConserved) {
    Rng rng(46);
    for (double a : {1.3, 1.63}) {
        const StepFunction u = random_step_function(rng, 10);
        const StepFunction p = nd_apply(u, a);
        EXPECT_NEAR(integral(u).real(), (2.0 - a) * integral(p).real(), 1e-12);
    }
}

TEST(NdApply, PositiveFluxGivesPositivePressure) {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        Rng rng(seed);
        const double a = rng.uniform(1.05, 1.95);
        const StepFunction p = nd_apply(positive_step_function(rng, static_cast<int>(rng.integer(0, 9))), a);
        for (const auto& v : p.values()) EXPECT_GT(v.real(), 0.0) << seed;
    }
}

TEST(NdApply, SelfAdjoint) {
    Rng rng(47);
    const StepFunction u = random_complex_step_function(rng, 0, 8), v = random_complex_step_function(rng, 0, 8);
    EXPECT_LT(std::abs(inner_product(nd_apply(u, 1.4), v) - inner_product(u, nd_apply(v, 1.4))), 1e-12);
}

TEST(DnApply, InvertsNd) {
    Rng rng(48);
    for (double a : {1.1, 1.5, 1.9})
        for (int n = 0; n <= 12; n += 3) {
            const StepFunction u = random_complex_step_function(rng, 0, n);
            EXPECT_LE(oracle::max_abs_diff(dn_apply(nd_apply(u, a), a), u), 1e-12);
            EXPECT_LE(oracle::max_abs_diff(nd_apply(dn_apply(u, a), a), u), 1e-12);
            EXPECT_LE(oracle::max_abs_diff(dn_apply(u, a, MultiplierRoute::Fft), dn_apply(u, a)), 1e-11);
        }
}

TEST(DnFiniteTree, InvertsFiniteNd) {
    Rng rng(49);
    const auto R = ResistanceProfile::geometric(1.63);
    for (int n = 1; n <= 8; ++n) {
        const StepFunction u = random_step_function(rng, n);
        for (auto method : {SolverMethod::Dense, SolverMethod::Fast})
            EXPECT_LE(oracle::max_abs_diff(dn_finite_tree(nd_finite_tree(u, R), R, method), u), 1e-9) << n;
    }
}

TEST(NdFiniteTree, RejectsComplexFlux) {
    StepFunction u(0, 2);
    u[1] = Complex{0.0, 1.0};
    EXPECT_THROW(nd_finite_tree(u, ResistanceProfile::geometric(1.5)), PreconditionError);
}

TEST(ContinuityReport, BoundsHold) {
    Rng rng(50);
    std::vector<StepFunction> ensemble;
    for (int i = 0; i < 30; ++i) ensemble.push_back(random_complex_step_function(rng, 0, static_cast<int>(rng.integer(0, 10))));
    for (double a : {1.2, 1.5, 1.63, 1.9}) {
        const auto r = nd_continuity_report(a, 30, ensemble);
        EXPECT_TRUE(r.bounded);
        EXPECT_NEAR(r.symbol_sup, r.symbol_bound, 1e-12 * r.symbol_bound);  // attained at λ = 0
        EXPECT_NEAR(r.riesz_sup, r.riesz_bound, 1e-12);
        EXPECT_LE(r.sample_ratio_max, r.symbol_sup * (1 + 1e-12));
        EXPECT_NEAR(r.constant_flux_ratio, r.symbol_bound, 1e-12 * r.symbol_bound);
        EXPECT_NEAR(r.global_resistance, 1.0 / (2.0 - a), 1e-12);
        EXPECT_NEAR(r.unit_root_resistance, zeta_local(r.beta), 1e-12);
    }
}

TEST(NdApply, QuadraticFormPositive) {
    Rng rng(51);
    for (int trial = 0; trial < 100; ++trial) {
        const double a = rng.uniform(1.05, 1.95);
        const StepFunction u = random_complex_step_function(rng, 0, static_cast<int>(rng.integer(0, 9)));
        const Complex q = inner_product(nd_apply(u, a), u);
        EXPECT_GT(q.real(), 0.0);
        EXPECT_LT(std::abs(q.imag()), 1e-12);
    }
}
