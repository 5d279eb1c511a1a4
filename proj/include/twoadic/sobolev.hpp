#pragma once

// Sobolev norms on Z₂: the Fourier-series norm (canonical), the double-integral
// norm and the Aˢ approximation norm, plus equivalence diagnostics.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "twoadic/errors.hpp"
#include "twoadic/fourier.hpp"
#include "twoadic/step_function.hpp"

namespace twoadic {

struct SobolevIndex {
    double s = 0.0;

    SobolevIndex() = default;
    constexpr SobolevIndex(double value) : s(value) {}  // NOLINT(google-explicit-constructor)
    operator double() const { return s; }               // NOLINT(google-explicit-constructor)
};

namespace detail {

inline void require_finite(SobolevIndex s, const char* what) {
    if (!std::isfinite(s.s)) throw PreconditionError(std::string(what) + ": Sobolev index must be finite");
}
inline void require_positive(SobolevIndex s, const char* what) {
    require_finite(s, what);
    if (!(s.s > 0.0)) throw PreconditionError(std::string(what) + ": requires s > 0");
}

}  // namespace detail

/// (1 + |λ|₂)^{2s} for |λ|₂ = 2^q, with q = 0 standing for λ = 0 (|0|₂ := 1).
inline double hs_weight(int q, SobolevIndex s) { return std::pow(1.0 + std::ldexp(1.0, q), 2.0 * s.s); }

/// (Σ_λ (1+|λ|₂)^{2s} |𝓕(f)(λ)|²)^{1/2}. Any real s; negative s gives the dual norm.
inline double hs_norm(const Spectrum& spec, SobolevIndex s) {
    detail::require_finite(s, "hs_norm");
    const int n = spec.resolution();
    std::vector<double> weight(static_cast<std::size_t>(n) + 1);
    for (int q = 0; q <= n; ++q) weight[q] = hs_weight(q, s);
    double acc = 0.0;
    for (std::size_t m = 0; m < spec.size(); ++m) acc += weight[spec.level(m)] * std::norm(spec[m]);
    return std::sqrt(acc);
}

inline double hs_norm(const StepFunction& f, SobolevIndex s) { return hs_norm(fourier_series(f), s); }

/// ∫_{Z₂}∫_{Z₂} |f(x)-f(y)|² / |x-y|₂^{1+2s} dμ dμ for a step function on Z₂.
///
/// Pairs are grouped by the generation m at which their paths split: inside a
/// level-m cell, every leaf of one child meets every leaf of the other at
/// distance 2^{-m}. Subtree sums of f and |f|² make the total O(2ⁿ).
inline double double_integral_seminorm_sq(const StepFunction& f, SobolevIndex s) {
    detail::require_positive(s, "double_integral_seminorm");
    if (f.support_level() != 0) throw PreconditionError("double_integral_seminorm: function must live on Z2");
    const int n = f.resolution();
    std::vector<Complex> sum(f.values().begin(), f.values().end());
    std::vector<double> sq(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) sq[i] = std::norm(f[i]);
    double total = 0.0;
    for (int m = n - 1; m >= 0; --m) {
        const std::size_t half = std::size_t{1} << m;
        const double leaves = std::ldexp(1.0, n - m - 1);  // leaves under each child
        double level_sum = 0.0;
        for (std::size_t j = 0; j < half; ++j) {
            const Complex s0 = sum[j], s1 = sum[j + half];
            const double q0 = sq[j], q1 = sq[j + half];
            level_sum += leaves * (q0 + q1) - 2.0 * (s0 * std::conj(s1)).real();
            sum[j] = s0 + s1;
            sq[j] = q0 + q1;
        }
        // ordered pairs count twice; each pair of leaf cells has weight 4^{-n}
        total += 2.0 * level_sum * std::ldexp(1.0, -2 * n) * std::pow(2.0, m * (1.0 + 2.0 * s.s));
    }
    return std::max(total, 0.0);
}

/// ‖f‖_{L²} + (double-integral seminorm).
inline double hs_norm_integral(const StepFunction& f, SobolevIndex s) {
    return lp_norm(f, 2.0) + std::sqrt(double_integral_seminorm_sq(f, s));
}

/// θ(λ) = ∫_{Z₂} |1 - e^{2iπhλ}|² / |h|₂^{1+2s} dμ(h), summed sphere by sphere.
inline double theta_weight(const Frequency& lambda, SobolevIndex s) {
    detail::require_positive(s, "theta_weight");
    const int q = lambda.k;
    if (q == 0) return 0.0;  // hλ ∈ Z₂ for every h
    // On |h|₂ = 2^{-m}: ∫ |1-e^{2iπhλ}|² = 2μ(sphere) - 2·Re ∫ e^{2iπhλ}, and rescaling
    // y = hλ turns the last integral into 2^{-q} times the sphere integral at 2^{q-m}.
    double theta = 0.0;
    for (int m = 0; m < q; ++m) {
        const double measure = std::ldexp(1.0, -m - 1);
        const double oscillation = std::ldexp(sphere_integral(q - m), -q);
        theta += std::pow(2.0, m * (1.0 + 2.0 * s.s)) * 2.0 * (measure - oscillation);
    }
    // Spheres m ≥ q: hλ ∈ Z₂, the oscillation equals the measure and the whole tail vanishes.
    return theta;
}

/// Constants with c_lower·|λ|₂^{2s} ≤ θ(λ) ≤ c_upper·|λ|₂^{2s} for all |λ|₂ ≥ 2.
struct ThetaBounds {
    double lower;
    double upper;
};
inline ThetaBounds theta_bounds(SobolevIndex s) {
    detail::require_positive(s, "theta_bounds");
    // θ/|λ|^{2s} = (1 - 4^{-qs})/(4^s - 1) + 4^{-s}, increasing in q ≥ 1.
    const double f = std::pow(4.0, s.s);
    return {2.0 / f, 1.0 / (f - 1.0) + 1.0 / f};
}

/// (Σ_λ θ(λ) |𝓕(f)(λ)|²), the Fourier side of the double integral.
inline double theta_seminorm_sq(const Spectrum& spec, SobolevIndex s) {
    std::vector<double> theta(static_cast<std::size_t>(spec.resolution()) + 1, 0.0);
    for (int q = 1; q <= spec.resolution(); ++q) theta[q] = theta_weight(Frequency{q, 1}, s);
    double acc = 0.0;
    for (std::size_t m = 0; m < spec.size(); ++m) acc += theta[spec.level(m)] * std::norm(spec[m]);
    return acc;
}

/// ‖P₀f‖ + (Σ_{m≥0} 4^{ms} ‖f - P_m f‖²)^{1/2}; the sum stops at the resolution.
inline double as_norm(const StepFunction& f, SobolevIndex s) {
    detail::require_positive(s, "as_norm");
    if (f.support_level() != 0) throw PreconditionError("as_norm: function must live on Z2");
    const int n = f.resolution();
    std::vector<StepFunction> coarse;  // coarse[m] = P_m f
    coarse.reserve(static_cast<std::size_t>(n) + 1);
    StepFunction g = f;
    for (int m = n; m >= 0; --m) {
        coarse.push_back(g);
        if (m > 0) g = coarsen_once(g);
    }
    std::reverse(coarse.begin(), coarse.end());
    double acc = 0.0;
    for (int m = 0; m < n; ++m) {
        const double detail_norm = lp_norm(f - coarse[m], 2.0);
        acc += std::pow(4.0, m * s.s) * detail_norm * detail_norm;
    }
    return std::abs(coarse[0][0]) + std::sqrt(acc);
}

/// Σ_{|λ|₂ > 2^m} |𝓕(f)(λ)|², which equals ‖f - P_m f‖²_{L²}.
inline double high_frequency_energy(const Spectrum& spec, int m) {
    double acc = 0.0;
    for (std::size_t i = 0; i < spec.size(); ++i)
        if (spec.level(i) > m) acc += std::norm(spec[i]);
    return acc;
}

struct RatioRange {
    double min = std::numeric_limits<double>::infinity();
    double max = -std::numeric_limits<double>::infinity();
    void add(double r) {
        min = std::min(min, r);
        max = std::max(max, r);
    }
    double spread() const { return max / min; }
};

struct ResolutionRatios {
    int resolution = 0;
    std::size_t samples = 0;
    RatioRange hs_over_as;
    RatioRange hs_over_integral;
};

struct EquivalenceReport {
    double s = 0.0;
    RatioRange hs_over_as;
    RatioRange hs_over_integral;
    std::vector<ResolutionRatios> per_resolution;
};

/// Ratios hs_norm/as_norm and hs_norm/hs_norm_integral over an ensemble, grouped by resolution.
inline EquivalenceReport norm_equivalence_report(std::span<const StepFunction> ensemble, SobolevIndex s) {
    detail::require_positive(s, "norm_equivalence_report");
    EquivalenceReport report;
    report.s = s.s;
    for (const auto& f : ensemble) {
        const double hs = hs_norm(f, s);
        const double as = as_norm(f, s);
        const double hi = hs_norm_integral(f, s);
        if (!(as > 0.0) || !(hi > 0.0)) continue;  // the zero function carries no ratio
        auto it = std::find_if(report.per_resolution.begin(), report.per_resolution.end(),
                               [&](const ResolutionRatios& r) { return r.resolution == f.resolution(); });
        if (it == report.per_resolution.end()) {
            report.per_resolution.push_back({f.resolution(), 0, {}, {}});
            it = std::prev(report.per_resolution.end());
        }
        ++it->samples;
        it->hs_over_as.add(hs / as);
        it->hs_over_integral.add(hs / hi);
        report.hs_over_as.add(hs / as);
        report.hs_over_integral.add(hs / hi);
    }
    std::sort(report.per_resolution.begin(), report.per_resolution.end(),
              [](const auto& a, const auto& b) { return a.resolution < b.resolution; });
    return report;
}

}  // namespace twoadic
