#pragma once

// Slow, direct implementations used as ground truth. None of them calls the
// fast paths they check: sums run over all cell pairs, distances come from
// the 2-adic valuation of the residue difference.

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "twoadic/step_function.hpp"

namespace oracle {

using twoadic::Complex;
using twoadic::StepFunction;

/// |a - b|₂ for distinct residues modulo 2ⁿ.
inline double residue_distance(std::uint64_t a, std::uint64_t b) {
    return std::exp2(-static_cast<double>(std::countr_zero(a ^ b)));
}

/// e^{2iπ t / 2ⁿ} with t reduced modulo 2ⁿ first.
inline Complex root_of_unity(std::uint64_t t, int n) {
    const std::uint64_t r = n == 0 ? 0 : t & ((std::uint64_t{1} << n) - 1);
    const double phase = 2.0 * std::numbers::pi * std::ldexp(static_cast<double>(r), -n);
    return {std::cos(phase), std::sin(phase)};
}

/// 𝓕(f)(m/2ⁿ) = 2^{-n} Σ_a f(a) e^{-2iπ am/2ⁿ}, the O(4ⁿ) double sum.
inline std::vector<Complex> naive_fourier_series(const StepFunction& f) {
    const int n = f.resolution();
    const std::uint64_t N = f.size();
    std::vector<Complex> out(N);
    for (std::uint64_t m = 0; m < N; ++m) {
        Complex s{};
        for (std::uint64_t a = 0; a < N; ++a) s += f[a] * root_of_unity(N - ((a * m) & (N - 1)), n);
        out[m] = s * std::ldexp(1.0, -n);
    }
    return out;
}

/// Σ_{a≠b} |f(a)-f(b)|² |a-b|₂^{-(1+2s)} 4^{-n}.
inline double naive_double_integral_sq(const StepFunction& f, double s) {
    const int n = f.resolution();
    double total = 0.0;
    for (std::uint64_t a = 0; a < f.size(); ++a)
        for (std::uint64_t b = 0; b < f.size(); ++b) {
            if (a == b) continue;
            total += std::norm(f[a] - f[b]) * std::pow(residue_distance(a, b), -(1.0 + 2.0 * s));
        }
    return total * std::ldexp(1.0, -2 * n);
}

/// θ(λ) for |λ|₂ = 2^q by cell quadrature of |1-e^{2iπhλ}|² |h|₂^{-1-2s} at the given resolution
/// (exact once resolution ≥ q: the integrand is constant on cells and vanishes near h = 0).
inline double theta_quadrature(int q, std::int64_t j, double s, int resolution) {
    double total = 0.0;
    const std::uint64_t N = std::uint64_t{1} << resolution;
    for (std::uint64_t h = 1; h < N; ++h) {
        // hλ = h·j/2^q modulo 1
        const Complex e = root_of_unity(h * static_cast<std::uint64_t>(j), q);
        total += std::norm(Complex{1.0} - e) * std::pow(residue_distance(h, 0), -(1.0 + 2.0 * s));
    }
    return total * std::ldexp(1.0, -resolution);
}

/// Σ_b g(|a-b|₂)u(b)2^{-n} + home·u(a) with g given on distances 2^{-m}.
template <class Kernel>
StepFunction naive_radial_convolution(const StepFunction& u, Kernel g, double home) {
    const int n = u.resolution();
    StepFunction out(0, n);
    for (std::uint64_t a = 0; a < u.size(); ++a) {
        Complex s = home * u[a];
        for (std::uint64_t b = 0; b < u.size(); ++b)
            if (b != a) s += g(std::countr_zero(a ^ b)) * u[b] * std::ldexp(1.0, -n);
        out[a] = s;
    }
    return out;
}

/// Leaf-pressure matrix of a depth-N tree from path sharing: A_ab = Σ_{m ≤ split(a,b)} r_m
/// along the common path, A_aa = Σ_{m ≤ N} r_m along the whole path.
template <class Resistance>
std::vector<std::vector<double>> path_sharing_matrix(int depth, Resistance r) {
    const std::uint64_t L = std::uint64_t{1} << depth;
    std::vector<std::vector<double>> A(L, std::vector<double>(L, 0.0));
    for (std::uint64_t a = 0; a < L; ++a)
        for (std::uint64_t b = 0; b < L; ++b) {
            const int shared = a == b ? depth : std::countr_zero(a ^ b);
            double s = 0.0;
            for (int m = 0; m <= shared; ++m) s += r(m, a & ((std::uint64_t{1} << m) - 1));
            A[a][b] = s;
        }
    return A;
}

inline std::vector<double> mat_vec(const std::vector<std::vector<double>>& A, const std::vector<double>& x) {
    std::vector<double> y(A.size(), 0.0);
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) y[i] += A[i][j] * x[j];
    return y;
}

inline double max_abs_diff(const StepFunction& a, const StepFunction& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double max_abs(const StepFunction& a) {
    double m = 0.0;
    for (const auto& v : a.values()) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace oracle
