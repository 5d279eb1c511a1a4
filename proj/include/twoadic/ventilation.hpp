#pragma once

// Riesz kernels and multipliers on Z₂, and the ventilation operators of the
// geometric tree: Neumann-Dirichlet (flux density → end pressure) and its
// inverse Dirichlet-Neumann (end pressure → flux density).
//
// Every operator here is radial: it depends on λ only through |λ|₂ = 2^q.
// Such multipliers act diagonally on the Haar decomposition
//     u = P₀u + Σ_q (P_q u - P_{q-1} u),
// because 𝓕(P_q u) is 𝓕(u) cut to |λ|₂ ≤ 2^q. apply_radial_multiplier uses
// that in O(2ⁿ); the FFT route is kept alongside and must agree with it.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "twoadic/dyadic.hpp"
#include "twoadic/errors.hpp"
#include "twoadic/fourier.hpp"
#include "twoadic/sobolev.hpp"
#include "twoadic/step_function.hpp"
#include "twoadic/tree.hpp"

namespace twoadic {

/// ζ(β) = 1/(1 - 2^{-β}), the local zeta function.
inline double zeta_local(double beta) {
    if (beta == 0.0) throw PreconditionError("zeta_local: pole of zeta at beta = 0");
    return 1.0 / (1.0 - std::exp2(-beta));
}

struct RieszParams {
    double beta;
    double zeta;

    static RieszParams from_beta(double beta) { return {beta, zeta_local(beta)}; }
    /// β = 1 - log₂α for the geometric tree with ratio α ∈ (1, 2).
    static RieszParams from_alpha(double alpha) {
        if (!(alpha > 1.0 && alpha < 2.0)) throw PreconditionError("ventilation: alpha must lie in (1, 2)");
        return from_beta(1.0 - std::log2(alpha));
    }
};

/// k̃^β(x) = (2/ζ(β)) |x|₂^{β-1} on Z₂ \ {0}.
inline double riesz_kernel_value(const RieszParams& P, const DyadicRational& x) {
    if (x.is_zero()) throw PreconditionError("riesz_kernel_value: kernel singularity at x = 0");
    if (!(P.beta > 0.0)) throw PreconditionError("riesz_kernel_value: principal value not implemented in real space");
    return 2.0 / P.zeta * std::pow(norm2(x), P.beta - 1.0);
}

/// ∫_{2ⁿZ₂} k̃^β dμ = (2/ζ(β))·Σ_{m≥n} 2^{-m-1} 2^{-m(β-1)} = 2^{-nβ}.
inline double riesz_kernel_ball_integral(const RieszParams& P, int n) { return std::exp2(-n * P.beta); }

/// The Fourier coefficient of k̃^β itself at |λ|₂ = 2^q: 1 at λ = 0 and
/// (2 - 2^β)·2^{-qβ} = (2/ζ(1-β))|λ|₂^{-β} otherwise.
inline double riesz_kernel_coefficient(const RieszParams& P, int q) {
    if (q == 0) return 1.0;
    return (2.0 - std::exp2(P.beta)) * std::exp2(-q * P.beta);
}

/// The Riesz multiplier |λ|₂^{-β} (|0|₂ := 1) at |λ|₂ = 2^q.
inline double riesz_symbol(double beta, int q) { return std::exp2(-q * beta); }

/// 𝓡̃^β realized spectrally: each coefficient times |λ|₂^{-β}. Any sign of β.
inline Spectrum riesz_multiplier_apply(const Spectrum& s, double beta) {
    Spectrum out = s;
    for (std::size_t m = 0; m < out.size(); ++m) out[m] *= riesz_symbol(beta, out.level(m));
    return out;
}

/// f ↦ 𝓕⁻¹(m(|λ|₂)·𝓕f) on Z₂ in O(2ⁿ) through the Haar decomposition; multiplier[q] is the value at |λ|₂ = 2^q.
inline StepFunction apply_radial_multiplier(const StepFunction& f, std::span<const double> multiplier) {
    if (f.support_level() != 0) throw PreconditionError("radial multiplier: function must live on Z2");
    const int n = f.resolution();
    if (multiplier.size() < static_cast<std::size_t>(n) + 1)
        throw PreconditionError("radial multiplier: need one value per frequency level");
    const auto in = f.values();
    StepFunction out(0, n);
    if (n == 0) {
        out[0] = multiplier[0] * in[0];
        return out;
    }
    // m(f) = m_n f + Σ_{q<n} (m_q - m_{q+1}) P_q f. The pyramid stores P_q f at offset 2^q.
    std::vector<Complex> pyramid(std::size_t{1} << n);
    const std::size_t top = std::size_t{1} << (n - 1);
    for (std::size_t j = 0; j < top; ++j) pyramid[top + j] = 0.5 * (in[j] + in[j + top]);
    for (int q = n - 2; q >= 0; --q) {
        const std::size_t half = std::size_t{1} << q;
        for (std::size_t j = 0; j < half; ++j)
            pyramid[half + j] = 0.5 * (pyramid[2 * half + j] + pyramid[2 * half + j + half]);
    }
    // Overwrite each level with the accumulated coarse part, from the root down.
    pyramid[1] *= multiplier[0] - multiplier[1];
    for (int q = 1; q < n; ++q) {
        const std::size_t width = std::size_t{1} << q;
        const double w = multiplier[q] - multiplier[q + 1];
        for (std::size_t j = 0; j < width; ++j) pyramid[width + j] = pyramid[width / 2 + (j & (width / 2 - 1))] + w * pyramid[width + j];
    }
    const double mn = multiplier[n];
    for (std::size_t i = 0; i < in.size(); ++i) out[i] = pyramid[top + (i & (top - 1))] + mn * in[i];
    return out;
}

/// Same operator through forward and inverse fast Fourier transforms.
inline StepFunction apply_radial_multiplier_fft(const StepFunction& f, std::span<const double> multiplier) {
    Spectrum s = fourier_series(f);
    if (multiplier.size() < static_cast<std::size_t>(s.resolution()) + 1)
        throw PreconditionError("radial multiplier: need one value per frequency level");
    for (std::size_t m = 0; m < s.size(); ++m) s[m] *= multiplier[s.level(m)];
    return inverse_series(s);
}

/// Exact real-space (g⋆u)(a) for a radial kernel: g = kernel_on_sphere[m] on |x|₂ = 2^{-m}
/// for m < n, and home_cell_integral = ∫_{2ⁿZ₂} g. Sphere integrals come from subtree sums.
inline StepFunction radial_convolution(const StepFunction& u, std::span<const double> kernel_on_sphere,
                                       double home_cell_integral) {
    if (u.support_level() != 0) throw PreconditionError("radial convolution: function must live on Z2");
    const int n = u.resolution();
    if (kernel_on_sphere.size() < static_cast<std::size_t>(n))
        throw PreconditionError("radial convolution: need one kernel value per sphere");
    std::vector<std::vector<Complex>> subtree(static_cast<std::size_t>(n) + 1);  // Σ of u over level-m cells
    subtree[n].assign(u.values().begin(), u.values().end());
    for (int m = n - 1; m >= 0; --m) {
        const std::size_t half = std::size_t{1} << m;
        subtree[m].resize(half);
        for (std::size_t j = 0; j < half; ++j) subtree[m][j] = subtree[m + 1][j] + subtree[m + 1][j + half];
    }
    const double cell = u.cell_measure();
    StepFunction out(0, n);
    for (std::size_t a = 0; a < out.size(); ++a) {
        Complex acc = home_cell_integral * u[a];
        for (int m = 0; m < n; ++m) {
            const std::size_t inner = a & ((std::size_t{2} << m) - 1);
            const std::size_t outer = a & ((std::size_t{1} << m) - 1);
            acc += kernel_on_sphere[m] * (subtree[m][outer] - subtree[m + 1][inner]) * cell;
        }
        out[a] = acc;
    }
    return out;
}

/// k̃^β ⋆ u computed in real space (β > 0).
inline StepFunction riesz_convolve(const StepFunction& u, const RieszParams& P) {
    if (!(P.beta > 0.0)) throw PreconditionError("riesz_convolve: principal value not implemented in real space");
    std::vector<double> kernel(static_cast<std::size_t>(u.resolution()));
    for (int m = 0; m < u.resolution(); ++m) kernel[m] = 2.0 / P.zeta * std::exp2(-m * (P.beta - 1.0));
    return radial_convolution(u, kernel, riesz_kernel_ball_integral(P, u.resolution()));
}

// ---------------------------------------------------------------------------
// Ventilation of the geometric tree (r₀ = 1, rₙ = α^{n-1}(α-1), Rₙ = αⁿ)

/// Neumann-Dirichlet symbol at |λ|₂ = 2^q. The end pressure is
/// p = ∫ u(x)|x-a|₂^{β-1} dμ(x) = (ζ(β)/2)·(k̃^β ⋆ u), so the symbol is (ζ(β)/2) times
/// the kernel coefficient: 1/(2-α) at λ = 0 and (ζ(β)/ζ(1-β))|λ|₂^{-β} otherwise.
inline double nd_symbol(const RieszParams& P, int q) { return 0.5 * P.zeta * riesz_kernel_coefficient(P, q); }

inline std::vector<double> nd_symbols(const RieszParams& P, int resolution) {
    std::vector<double> m(static_cast<std::size_t>(resolution) + 1);
    for (int q = 0; q <= resolution; ++q) m[q] = nd_symbol(P, q);
    return m;
}

enum class MultiplierRoute { Haar, Fft };

/// Pressure at the ends produced by the flux density u (positive toward the root).
inline StepFunction nd_apply(const StepFunction& u, double alpha, MultiplierRoute route = MultiplierRoute::Haar) {
    const auto P = RieszParams::from_alpha(alpha);
    if (u.support_level() != 0) throw PreconditionError("nd_apply: flux density must live on Z2");
    const auto m = nd_symbols(P, u.resolution());
    return route == MultiplierRoute::Haar ? apply_radial_multiplier(u, m) : apply_radial_multiplier_fft(u, m);
}

/// Flux density driven by the end pressure p; the inverse of nd_apply.
inline StepFunction dn_apply(const StepFunction& p, double alpha, MultiplierRoute route = MultiplierRoute::Haar) {
    const auto P = RieszParams::from_alpha(alpha);
    if (p.support_level() != 0) throw PreconditionError("dn_apply: pressure must live on Z2");
    auto m = nd_symbols(P, p.resolution());
    for (auto& v : m) v = 1.0 / v;
    return route == MultiplierRoute::Haar ? apply_radial_multiplier(p, m) : apply_radial_multiplier_fft(p, m);
}

/// p(a) = Σ_{m<n} αᵐ ∫_{|x-a|₂=2^{-m}} u dμ + u(a)·Σ_{m≥n} αᵐ 2^{-m-1}, in real space.
inline StepFunction nd_sphere_sum(const StepFunction& u, double alpha) {
    if (!(alpha > 1.0 && alpha < 2.0)) throw PreconditionError("nd_sphere_sum: alpha must lie in (1, 2)");
    const int n = u.resolution();
    std::vector<double> cumulated(static_cast<std::size_t>(std::max(n, 0)));
    for (int m = 0; m < n; ++m) cumulated[m] = std::pow(alpha, m);
    const double tail = std::pow(alpha / 2.0, n) / (2.0 - alpha);  // geometric series, summed exactly
    return radial_convolution(u, cumulated, tail);
}

/// Finite-tree ND: leaf pressures of a depth-n resistor network fed with leaf fluxes
/// 2^{-n}u(a). With an explicit profile this is the only available route.
inline StepFunction nd_finite_tree(const StepFunction& u, const ResistanceProfile& R) {
    if (u.support_level() != 0) throw PreconditionError("nd_finite_tree: flux density must live on Z2");
    const int n = u.resolution();
    std::vector<double> q(u.size());
    for (std::size_t a = 0; a < u.size(); ++a) {
        if (u[a].imag() != 0.0) throw PreconditionError("nd_finite_tree: flux must be real");
        q[a] = std::ldexp(u[a].real(), -n);
    }
    const TreeField p = flux_to_pressure_finite(R, q, n);
    return StepFunction::from_real(0, n, p.level(n));
}

/// Pressure added below generation n of the infinite geometric tree when the flux
/// density is constant on every level-n cell: u(a)·2^{-n} Σ_{m>n} r_m 2^{-(m-n)}.
inline double geometric_subtree_tail(double alpha, int n) {
    // Σ_{m>n} α^{m-1}(α-1) 2^{-m} = ((α-1)/α)·(α/2)^{n+1}/(1-α/2)
    return (alpha - 1.0) / alpha * std::pow(alpha / 2.0, n + 1) / (1.0 - alpha / 2.0);
}

/// Finite-tree DN: leaf fluxes of the depth-n resistor network, returned as a density.
inline StepFunction dn_finite_tree(const StepFunction& p, const ResistanceProfile& R,
                                   SolverMethod method = SolverMethod::Fast) {
    if (p.support_level() != 0) throw PreconditionError("dn_finite_tree: pressure must live on Z2");
    const int n = p.resolution();
    std::vector<double> leaf(p.size());
    for (std::size_t a = 0; a < p.size(); ++a) {
        if (p[a].imag() != 0.0) throw PreconditionError("dn_finite_tree: pressure must be real");
        leaf[a] = p[a].real();
    }
    const auto q = pressure_to_flux_finite(R, leaf, n, method);
    StepFunction u(0, n);
    for (std::size_t a = 0; a < q.size(); ++a) u[a] = std::ldexp(q[a], n);
    return u;
}

// ---------------------------------------------------------------------------
// Reports

struct ReproductionReport {
    double beta = 0.0;
    double beta_prime = 0.0;
    double max_abs_error = 0.0;  // over the coefficients of the test spectrum
    double max_rel_error = 0.0;  // |composed - direct| / |direct| over the nonzero coefficients
};

/// 𝓡̃^β 𝓡̃^{β'} against 𝓡̃^{β+β'} on the given spectrum.
inline ReproductionReport reproduction_check(double beta, double beta_prime, const Spectrum& s) {
    const Spectrum composed = riesz_multiplier_apply(riesz_multiplier_apply(s, beta_prime), beta);
    const Spectrum direct = riesz_multiplier_apply(s, beta + beta_prime);
    ReproductionReport r{beta, beta_prime, 0.0, 0.0};
    for (std::size_t m = 0; m < s.size(); ++m) {
        const double err = std::abs(composed[m] - direct[m]);
        r.max_abs_error = std::max(r.max_abs_error, err);
        if (direct[m] != Complex{}) r.max_rel_error = std::max(r.max_rel_error, err / std::abs(direct[m]));
    }
    return r;
}

struct ContinuityReport {
    double alpha = 0.0;
    double beta = 0.0;
    double s = 0.0;                 // β/2
    double symbol_sup = 0.0;        // sup_q (1+2^q)^{2s} m(q): the Hˢ ← H^{-s} operator norm
    double symbol_bound = 0.0;      // 2^β ζ(β)/2
    double riesz_sup = 0.0;         // sup_q (1+2^q)^{2s} 2^{-qβ}
    double riesz_bound = 0.0;       // 2^β
    double sample_ratio_max = 0.0;  // max ‖ND u‖_{Hˢ} / ‖u‖_{H^{-s}} over the ensemble
    double constant_flux_ratio = 0.0;  // the ratio for u ≡ 1: (ζ(β)/2)·2^β
    double global_resistance = 0.0;    // ζ(β)/2 = 1/(2-α), the ND symbol at λ = 0
    double unit_root_resistance = 0.0;  // Σ (α/2)ⁿ = ζ(β), the same tree with rₙ = αⁿ
    bool bounded = false;
};

/// Operator-norm estimate of ND: H^{-s} → Hˢ with s = β/2, over frequency levels 0..max_level.
inline ContinuityReport nd_continuity_report(double alpha, int max_level, std::span<const StepFunction> ensemble = {}) {
    const auto P = RieszParams::from_alpha(alpha);
    ContinuityReport r;
    r.alpha = alpha;
    r.beta = P.beta;
    r.s = P.beta / 2.0;
    r.symbol_bound = std::exp2(P.beta) * P.zeta / 2.0;
    r.riesz_bound = std::exp2(P.beta);
    for (int q = 0; q <= max_level; ++q) {
        const double w = hs_weight(q, r.s);  // (1+2^q)^{2s}
        r.symbol_sup = std::max(r.symbol_sup, w * nd_symbol(P, q));
        r.riesz_sup = std::max(r.riesz_sup, w * riesz_symbol(P.beta, q));
    }
    for (const auto& u : ensemble) {
        const double denom = hs_norm(u, -r.s);
        if (denom > 0.0) r.sample_ratio_max = std::max(r.sample_ratio_max, hs_norm(nd_apply(u, alpha), r.s) / denom);
    }
    const StepFunction one = StepFunction::constant(1.0);
    r.constant_flux_ratio = hs_norm(nd_apply(one, alpha), r.s) / hs_norm(one, -r.s);
    r.global_resistance = nd_symbol(P, 0);
    r.unit_root_resistance = 1.0 / (1.0 - alpha / 2.0);
    const double slack = 1e-12 * r.symbol_bound;
    r.bounded = r.symbol_sup <= r.symbol_bound + slack && r.riesz_sup <= r.riesz_bound * (1 + 1e-12) &&
                r.sample_ratio_max <= r.symbol_sup + slack;
    return r;
}

}  // namespace twoadic
