#pragma once

// Fourier series on Z₂ (dual group Λ = Q₂/Z₂) and the Fourier transform on Q₂
// for ball-supported step functions.
//
// Normalization follows the Haar measure: forward transforms carry 2^{-n},
// inverse transforms carry nothing, so that 𝓕(𝟙_{Z₂}) = δ₀.

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "twoadic/dyadic.hpp"
#include "twoadic/errors.hpp"
#include "twoadic/step_function.hpp"

namespace twoadic {

/// λ = j / 2^k ∈ Λ with j odd, or λ = 0 encoded as (0, 0).
struct Frequency {
    int k = 0;
    std::int64_t j = 0;

    Frequency() = default;
    Frequency(int k_, std::int64_t j_) : k(k_), j(j_) {
        if (k < 0) throw PreconditionError("Frequency: k must be >= 0");
        if (k == 0 ? j != 0 : (j % 2 == 0 || j <= 0 || j >= (std::int64_t{1} << k)))
            throw PreconditionError("Frequency: need j odd in (0, 2^k), or k = j = 0");
    }
    static Frequency from_index(std::uint64_t m, int resolution) {
        if (m == 0) return {};
        const int tz = std::countr_zero(m);
        return {resolution - tz, static_cast<std::int64_t>(m >> tz)};
    }

    bool is_zero() const { return k == 0; }
    /// |λ|₂ with the convention |0|₂ := 1.
    double norm() const { return std::ldexp(1.0, k); }
    DyadicRational value() const { return DyadicRational{j, k}; }

    friend bool operator==(const Frequency&, const Frequency&) = default;
};

/// 2-adic size exponent q of the frequency m / 2ⁿ, so that |λ|₂ = 2^q (q = 0 for λ = 0).
inline int frequency_level(std::uint64_t m, int resolution) {
    return m == 0 ? 0 : resolution - std::countr_zero(m);
}

/// Fourier-series coefficients 𝓕(f)(λ) for |λ|₂ ≤ 2ⁿ; index m holds λ = m / 2ⁿ.
class Spectrum {
  public:
    Spectrum() : Spectrum(0) {}
    explicit Spectrum(int resolution) : resolution_(resolution) {
        check(resolution);
        coeffs_.assign(std::size_t{1} << resolution, Complex{});
    }
    Spectrum(int resolution, std::vector<Complex> coeffs) : resolution_(resolution), coeffs_(std::move(coeffs)) {
        check(resolution);
        if (coeffs_.size() != (std::size_t{1} << resolution))
            throw PreconditionError("Spectrum: expected 2^" + std::to_string(resolution) + " coefficients");
    }

    int resolution() const { return resolution_; }
    std::size_t size() const { return coeffs_.size(); }
    std::span<const Complex> coefficients() const { return coeffs_; }
    std::span<Complex> coefficients() { return coeffs_; }
    const Complex& operator[](std::size_t m) const { return coeffs_[m]; }
    Complex& operator[](std::size_t m) { return coeffs_[m]; }

    Frequency frequency(std::size_t m) const { return Frequency::from_index(m, resolution_); }
    int level(std::size_t m) const { return frequency_level(m, resolution_); }

    /// Coefficient at λ; zero for frequencies beyond the resolution.
    Complex at(const Frequency& f) const {
        if (f.k > resolution_) return {};
        return coeffs_[static_cast<std::size_t>(f.j) << (resolution_ - f.k)];
    }

    /// Σ |𝓕(f)(λ)|².
    double energy() const {
        double s = 0.0;
        for (const auto& c : coeffs_) s += std::norm(c);
        return s;
    }

    friend bool operator==(const Spectrum&, const Spectrum&) = default;

  private:
    static void check(int n) {
        if (n < 0 || n > StepFunction::kMaxCells) throw PreconditionError("Spectrum: resolution out of range");
    }
    int resolution_;
    std::vector<Complex> coeffs_;
};

namespace detail {

/// In-place radix-2 DFT x_m ← Σ_i x_i e^{sign·2iπ im/N}, N = 2^bits.
/// Twiddles come from exactly reduced characters.
inline void dft_inplace(std::span<Complex> x, int sign) {
    const std::size_t n = x.size();
    if (n <= 1) return;
    const int bits = std::countr_zero(n);
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(x[i], x[j]);
    }
    std::vector<Complex> twiddle(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k)
        twiddle[k] = UnitComplex{DyadicRational{sign * static_cast<std::int64_t>(k), bits}}.value();
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len / 2;
        const std::size_t step = n / len;
        for (std::size_t start = 0; start < n; start += len) {
            for (std::size_t k = 0; k < half; ++k) {
                const Complex t = twiddle[k * step] * x[start + k + half];
                x[start + k + half] = x[start + k] - t;
                x[start + k] += t;
            }
        }
    }
}

}  // namespace detail

/// 𝓕(f)(λ) = ∫_{Z₂} f(x) e^{-2iπxλ} dμ(x), by a fast transform in O(n·2ⁿ).
inline Spectrum fourier_series(const StepFunction& f) {
    if (f.support_level() != 0) throw PreconditionError("fourier_series: function not supported on Z2; use fourier_q2");
    std::vector<Complex> c(f.values().begin(), f.values().end());
    detail::dft_inplace(c, -1);
    const double w = f.cell_measure();
    for (auto& v : c) v *= w;
    return {f.resolution(), std::move(c)};
}

/// f(x) = Σ_λ 𝓕(f)(λ) e^{2iπxλ}.
inline StepFunction inverse_series(const Spectrum& s) {
    std::vector<Complex> v(s.coefficients().begin(), s.coefficients().end());
    detail::dft_inplace(v, +1);
    return {0, s.resolution(), std::move(v)};
}

/// f̂(ξ) = ∫_{Q₂} e^{-2iπxξ} f(x) dμ(x) for f on 2^{-K}Z₂ at resolution n.
///
/// f̂ is supported on 2^{-n}Z₂ and constant on cells of level K. When n < 0 the
/// support is a sub-ball of Z₂ and the result is stored on Z₂ at resolution K.
inline StepFunction fourier_q2(const StepFunction& f) {
    const int k = f.support_level();
    const int n = f.resolution();
    std::vector<Complex> c(f.values().begin(), f.values().end());
    detail::dft_inplace(c, -1);
    const double w = f.cell_measure();
    for (auto& v : c) v *= w;
    if (n >= 0) return {n, k, std::move(c)};
    StepFunction g(0, k);
    const std::size_t stride = std::size_t{1} << (-n);
    for (std::size_t j = 0; j < c.size(); ++j) g[j * stride] = c[j];
    return g;
}

/// ∫_{|x|₂ = 2^k} e^{2iπx} dμ(x), closed form.
inline double sphere_integral(int k) {
    if (k <= 0) return std::ldexp(1.0, k - 1);
    return k == 1 ? -1.0 : 0.0;
}

/// The same sphere integral read off fourier_q2 of the sphere's indicator at ξ = -1.
inline double sphere_integral_quadrature(int k) {
    // 𝟙_{|x|=2^k} = 𝟙_{2^{-k}Z₂} - 𝟙_{2^{1-k}Z₂}: support level max(k, 0), resolution 1 - k.
    const int support = std::max(k, 0);
    const StepFunction sphere =
        indicator(Cell{-k, 0}, support, 1 - k) - indicator(Cell{1 - k, 0}, support, 1 - k);
    const StepFunction transform = fourier_q2(sphere);
    return transform(DyadicRational{-1}).real();
}

}  // namespace twoadic
