#pragma once

// Locally constant functions on the balls 2^{-K}Z₂ of Q₂.

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <algorithm>
#include <span>
#include <string>
#include <vector>

#include "twoadic/dyadic.hpp"
#include "twoadic/errors.hpp"

namespace twoadic {

using Complex = std::complex<double>;

/// A function supported on the ball 2^{-K}Z₂ and constant on the cells a + 2ⁿZ₂.
///
/// Values are stored for the 2^{K+n} cells in little-endian residue order:
/// index i holds the cell (i / 2^K) + 2ⁿZ₂. With that order the level-m
/// ancestor of index i is i mod 2^{K+m}, and the two children of index j at
/// level m+1 are j and j + 2^{K+m}.
class StepFunction {
  public:
    static constexpr int kMaxCells = 30;  // log₂ of the largest supported vector

    StepFunction() : StepFunction(0, 0) {}
    StepFunction(int support_level, int resolution)
        : support_level_(support_level), resolution_(resolution) {
        check_shape(support_level, resolution);
        values_.assign(std::size_t{1} << (support_level + resolution), Complex{});
    }
    StepFunction(int support_level, int resolution, std::vector<Complex> values)
        : support_level_(support_level), resolution_(resolution), values_(std::move(values)) {
        check_shape(support_level, resolution);
        if (values_.size() != (std::size_t{1} << (support_level + resolution)))
            throw PreconditionError("StepFunction: expected 2^" + std::to_string(support_level + resolution) +
                                    " values, got " + std::to_string(values_.size()));
    }

    static StepFunction from_real(int support_level, int resolution, std::span<const double> values) {
        std::vector<Complex> v(values.begin(), values.end());
        return {support_level, resolution, std::move(v)};
    }
    static StepFunction constant(Complex c, int support_level = 0, int resolution = 0) {
        StepFunction f(support_level, resolution);
        for (auto& v : f.values_) v = c;
        return f;
    }

    int support_level() const { return support_level_; }
    int resolution() const { return resolution_; }
    /// Number of digits indexing the cells, K + n.
    int index_bits() const { return support_level_ + resolution_; }
    std::size_t size() const { return values_.size(); }
    /// Haar measure of one cell, 2^{-n}.
    double cell_measure() const { return std::ldexp(1.0, -resolution_); }

    std::span<const Complex> values() const { return values_; }
    std::span<Complex> values() { return values_; }
    const Complex& operator[](std::size_t i) const { return values_[i]; }
    Complex& operator[](std::size_t i) { return values_[i]; }

    /// The cell of Q₂ stored at index i.
    Cell cell(std::size_t i) const {
        return Cell{resolution_, DyadicRational{static_cast<std::int64_t>(i), support_level_}};
    }

    /// Index of the cell containing x, or npos when x lies outside the support.
    std::size_t index_of(const DyadicRational& x) const {
        const DyadicRational scaled = x.scaled_by_pow2(support_level_);
        if (!x.is_zero() && !scaled.is_integer()) return npos;
        if (x.is_zero()) return 0;
        return static_cast<std::size_t>(low_bits(scaled.to_integer(), index_bits()));
    }
    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

    /// Pointwise value at x ∈ Q₂ (0 off the support).
    Complex operator()(const DyadicRational& x) const {
        const std::size_t i = index_of(x);
        return i == npos ? Complex{} : values_[i];
    }

    friend bool operator==(const StepFunction&, const StepFunction&) = default;

  private:
    static void check_shape(int k, int n) {
        if (k < 0) throw PreconditionError("StepFunction: support level must be >= 0");
        if (n < -k) throw PreconditionError("StepFunction: resolution must be >= -support_level");
        if (k + n > kMaxCells) throw PreconditionError("StepFunction: more than 2^30 cells");
    }

    int support_level_;
    int resolution_;
    std::vector<Complex> values_;
};

/// 𝟙_c as a step function on 2^{-K}Z₂ at the given resolution (default: the cell's level).
inline StepFunction indicator(const Cell& c, int support_level = 0, std::optional<int> resolution = std::nullopt) {
    const int n = resolution.value_or(c.level());
    if (c.level() < -support_level)
        throw PreconditionError("indicator: cell larger than the support ball 2^" + std::to_string(-support_level) +
                                "Z2");
    if (n < c.level()) throw PreconditionError("indicator: resolution coarser than the cell");
    const DyadicRational scaled = c.residue().scaled_by_pow2(support_level);
    if (!scaled.is_integer()) throw PreconditionError("indicator: cell outside the support ball");
    StepFunction f(support_level, n);
    const std::uint64_t anchor = static_cast<std::uint64_t>(scaled.to_integer());
    const std::size_t stride = std::size_t{1} << (support_level + c.level());
    for (std::size_t i = anchor; i < f.size(); i += stride) f[i] = 1.0;
    return f;
}

/// Same function seen at a finer resolution.
inline StepFunction refine(const StepFunction& f, int resolution) {
    if (resolution < f.resolution()) throw PreconditionError("refine: target resolution is coarser; use project");
    StepFunction g(f.support_level(), resolution);
    const std::size_t period = f.size();
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = f[i & (period - 1)];
    return g;
}

/// Cell averages over the next coarser level. Pairwise, so constants stay exact.
inline StepFunction coarsen_once(const StepFunction& f) {
    StepFunction g(f.support_level(), f.resolution() - 1);
    const std::size_t half = g.size();
    for (std::size_t j = 0; j < half; ++j) g[j] = 0.5 * (f[j] + f[j + half]);
    return g;
}

/// L² projection P_m onto functions constant on level-m cells, returned at resolution m.
inline StepFunction project(const StepFunction& f, int level) {
    if (level < -f.support_level() || level > f.resolution())
        throw PreconditionError("project: level " + std::to_string(level) + " outside [" +
                                std::to_string(-f.support_level()) + ", " + std::to_string(f.resolution()) + "]");
    StepFunction g = f;
    while (g.resolution() > level) g = coarsen_once(g);
    return g;
}

/// Sum over a power-of-two length vector by halving: v[i] + v[i + N/2], recursively.
/// Concatenated copies of a vector therefore sum to an exact multiple.
inline double halving_sum(std::vector<double> v) {
    for (std::size_t len = v.size() / 2; len >= 1; len /= 2)
        for (std::size_t i = 0; i < len; ++i) v[i] += v[i + len];
    return v.empty() ? 0.0 : v[0];
}

/// (∫ |f|^p dμ)^{1/p}; p = +∞ gives the sup norm.
inline double lp_norm(const StepFunction& f, double p) {
    if (!(p >= 1.0)) throw PreconditionError("lp_norm: exponent must be >= 1");
    if (std::isinf(p)) {
        double m = 0.0;
        for (const auto& v : f.values()) m = std::max(m, std::abs(v));
        return m;
    }
    std::vector<double> terms(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        terms[i] = p == 2.0 ? std::norm(f[i]) : std::pow(std::abs(f[i]), p);
    const double s = halving_sum(std::move(terms)) * f.cell_measure();
    return p == 2.0 ? std::sqrt(s) : std::pow(s, 1.0 / p);
}

namespace detail {

template <typename Op>
StepFunction combine(const StepFunction& a, const StepFunction& b, Op op) {
    if (a.support_level() != b.support_level())
        throw PreconditionError("step functions with different supports (2^-" + std::to_string(a.support_level()) +
                                "Z2 vs 2^-" + std::to_string(b.support_level()) + "Z2)");
    const int n = std::max(a.resolution(), b.resolution());
    const StepFunction x = a.resolution() == n ? a : refine(a, n);
    const StepFunction y = b.resolution() == n ? b : refine(b, n);
    StepFunction r(a.support_level(), n);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = op(x[i], y[i]);
    return r;
}

}  // namespace detail

inline StepFunction operator+(const StepFunction& a, const StepFunction& b) {
    return detail::combine(a, b, [](Complex x, Complex y) { return x + y; });
}
inline StepFunction operator-(const StepFunction& a, const StepFunction& b) {
    return detail::combine(a, b, [](Complex x, Complex y) { return x - y; });
}
inline StepFunction operator*(const StepFunction& a, const StepFunction& b) {
    return detail::combine(a, b, [](Complex x, Complex y) { return x * y; });
}
inline StepFunction scale(const StepFunction& f, Complex c) {
    StepFunction g = f;
    for (auto& v : g.values()) v *= c;
    return g;
}
inline StepFunction operator-(const StepFunction& f) { return scale(f, -1.0); }
/// y + c·x.
inline StepFunction axpy(Complex c, const StepFunction& x, const StepFunction& y) { return y + scale(x, c); }

/// ∫ f dμ.
inline Complex integral(const StepFunction& f) {
    Complex s{};
    for (const auto& v : f.values()) s += v;
    return s * f.cell_measure();
}

/// ⟨f, g⟩ = ∫ f·conj(g) dμ.
inline Complex inner_product(const StepFunction& f, const StepFunction& g) {
    return integral(detail::combine(f, g, [](Complex x, Complex y) { return x * std::conj(y); }));
}

/// Exact convolution (f⋆g)(x) = ∫_{Z₂} f(x-y) g(y) dμ(y) of two functions on Z₂.
/// Direct O(4ⁿ) cell sum; meant for moderate resolutions.
inline StepFunction convolve(const StepFunction& f, const StepFunction& g) {
    if (f.support_level() != 0 || g.support_level() != 0) throw PreconditionError("convolve: functions must live on Z2");
    const int n = std::max(f.resolution(), g.resolution());
    const StepFunction x = refine(f, n);
    const StepFunction y = refine(g, n);
    const std::size_t mask = x.size() - 1;
    StepFunction r(0, n);
    for (std::size_t a = 0; a < r.size(); ++a) {
        Complex s{};
        for (std::size_t b = 0; b < r.size(); ++b) s += x[(a - b) & mask] * y[b];
        r[a] = s * r.cell_measure();
    }
    return r;
}

}  // namespace twoadic
