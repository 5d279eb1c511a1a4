#pragma once

// The digit-interleaving map φ: Z₂ → [0,1]^d and the pullback T_φ f = f∘φ.
//
// Digit a_{i+jd} of x = Σ a_k 2^k becomes bit j+1 of coordinate i, so a
// level-(dm) cell of Z₂ lands exactly on one dyadic box of side 2^{-m}.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "twoadic/dyadic.hpp"
#include "twoadic/errors.hpp"
#include "twoadic/fourier.hpp"
#include "twoadic/random.hpp"
#include "twoadic/sobolev.hpp"
#include "twoadic/step_function.hpp"

namespace twoadic {

class InterleaveMap {
  public:
    explicit InterleaveMap(int d) : d_(d) {
        if (d < 1 || d > 30) throw PreconditionError("InterleaveMap: dimension must lie in [1, 30]");
    }
    int dimension() const { return d_; }

    /// Box coordinates at side 2^{-m} of the level-(dm) cell with residue a.
    std::vector<std::uint64_t> box_of(std::uint64_t a, int m) const {
        std::vector<std::uint64_t> b(d_, 0);
        for (int j = 0; j < m; ++j)
            for (int i = 0; i < d_; ++i) b[i] |= ((a >> (i + j * d_)) & 1u) << (m - 1 - j);
        return b;
    }

    /// Row-major flat index of box_of(a, m), coordinate 0 most significant.
    std::uint64_t flat_box_of(std::uint64_t a, int m) const {
        std::uint64_t flat = 0;
        for (const auto c : box_of(a, m)) flat = (flat << m) | c;
        return flat;
    }

  private:
    int d_;
};

/// φ at the anchor of the cell a + 2ⁿZ₂: coordinate i collects digits a_i, a_{i+d}, …, below n.
inline std::vector<DyadicRational> phi_eval(const InterleaveMap& M, std::uint64_t a, int n) {
    if (n < 0 || n > 62) throw PreconditionError("phi_eval: resolution out of range");
    const int d = M.dimension();
    std::vector<DyadicRational> point;
    point.reserve(d);
    for (int i = 0; i < d; ++i) {
        std::int64_t num = 0;
        int bits = 0;
        for (int k = i; k < n; k += d, ++bits) num = (num << 1) | static_cast<std::int64_t>((a >> k) & 1u);
        point.emplace_back(num, bits);
    }
    return point;
}

/// A function on [0,1]^d, constant on the 2^{dm} dyadic boxes of side 2^{-m}.
/// Values are row-major, the first coordinate most significant.
class GridFunction {
  public:
    GridFunction(int d, int m) : GridFunction(d, m, std::vector<double>(check(d, m), 0.0)) {}
    GridFunction(int d, int m, std::vector<double> values) : d_(d), m_(m), values_(std::move(values)) {
        if (values_.size() != check(d, m))
            throw PreconditionError("GridFunction: non-dyadic grid, expected 2^(d*m) = " +
                                    std::to_string(check(d, m)) + " values");
    }

    int dimension() const { return d_; }
    int level() const { return m_; }
    std::size_t size() const { return values_.size(); }
    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }
    double& operator[](std::size_t i) { return values_[i]; }

    /// Coordinates of flat box index i.
    std::vector<std::uint64_t> box(std::size_t i) const {
        std::vector<std::uint64_t> c(d_);
        for (int k = d_ - 1; k >= 0; --k) {
            c[k] = i & ((std::uint64_t{1} << m_) - 1);
            i >>= m_;
        }
        return c;
    }

    /// (Σ |v|^p 2^{-dm})^{1/p}; p = inf gives the maximum.
    double lp_norm(double p) const {
        if (!(p >= 1.0)) throw PreconditionError("lp_norm: p >= 1 required");
        std::vector<Complex> tmp(values_.begin(), values_.end());
        return twoadic::lp_norm(StepFunction(0, d_ * m_, std::move(tmp)), p);
    }

    friend bool operator==(const GridFunction&, const GridFunction&) = default;

  private:
    static std::size_t check(int d, int m) {
        if (d < 1 || m < 0 || static_cast<long>(d) * m > StepFunction::kMaxCells)
            throw PreconditionError("GridFunction: need d >= 1, m >= 0 and d*m <= " +
                                    std::to_string(StepFunction::kMaxCells));
        return std::size_t{1} << (d * m);
    }
    int d_;
    int m_;
    std::vector<double> values_;
};

/// T_φ f = f∘φ, a step function on Z₂ at resolution dm.
inline StepFunction pullback(const InterleaveMap& M, const GridFunction& f) {
    if (f.dimension() != M.dimension()) throw PreconditionError("pullback: grid dimension differs from the map");
    const int n = f.dimension() * f.level();
    StepFunction g(0, n);
    for (std::size_t a = 0; a < g.size(); ++a) g[a] = f[M.flat_box_of(a, f.level())];
    return g;
}

/// True when g and f take the same values with the same multiplicities (exact comparison).
inline bool is_rearrangement(const StepFunction& g, const GridFunction& f) {
    if (g.size() != f.size()) return false;
    std::vector<double> a(f.values().begin(), f.values().end());
    std::vector<double> b;
    b.reserve(g.size());
    for (const auto& v : g.values()) {
        if (v.imag() != 0.0) return false;
        b.push_back(v.real());
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

struct MeasureReport {
    int d = 0;
    int m = 0;                     // box side 2^{-m}
    int resolution = 0;            // cells of Z₂ counted at this level (≥ dm)
    std::size_t boxes = 0;
    std::size_t exact_boxes = 0;   // boxes with μ(φ⁻¹(B)) = 2^{-dm} exactly
    bool exact() const { return boxes == exact_boxes; }
};

/// Counts the resolution-level cells of Z₂ whose anchor falls into each box of side 2^{-m}.
inline MeasureReport measure_preservation_check(const InterleaveMap& M, int m, int extra_levels = 0) {
    const int d = M.dimension();
    if (m < 0 || extra_levels < 0 || d * m + extra_levels > 24)
        throw PreconditionError("measure_preservation_check: at most 2^24 cells");
    MeasureReport r{d, m, d * m + extra_levels, std::size_t{1} << (d * m), 0};
    std::vector<std::int64_t> count(r.boxes, 0);
    const std::size_t cells = std::size_t{1} << r.resolution;
    for (std::size_t a = 0; a < cells; ++a) {
        const auto x = phi_eval(M, a, r.resolution);
        std::uint64_t flat = 0;
        for (const auto& c : x) {
            // box coordinate = floor(2^m · c); the numerator is non-negative
            const DyadicRational scaled = c.scaled_by_pow2(m);
            const std::int64_t whole =
                scaled.is_integer() ? scaled.to_integer() : scaled.numerator() >> scaled.exponent();
            flat = (flat << m) | static_cast<std::uint64_t>(whole);
        }
        ++count[flat];
    }
    const DyadicRational target{1, d * m};
    const DyadicRational cell{1, r.resolution};
    for (const auto c : count)
        if (DyadicRational{c} * cell == target) ++r.exact_boxes;
    return r;
}

struct HolderReport {
    int d = 0;
    int resolution = 0;
    std::size_t pairs = 0;
    double max_ratio = 0.0;  // max |φ(x)-φ(y)|_∞ / |x-y|₂^{1/d}
    bool bounded() const { return max_ratio <= 2.0; }
};

namespace detail {

inline double holder_ratio(const InterleaveMap& M, std::uint64_t x, std::uint64_t y, int n) {
    const auto px = phi_eval(M, x, n);
    const auto py = phi_eval(M, y, n);
    double diff = 0.0;
    for (std::size_t i = 0; i < px.size(); ++i) diff = std::max(diff, std::abs((px[i] - py[i]).to_double()));
    const int split = std::countr_zero(x ^ y);
    return diff / std::exp2(-static_cast<double>(split) / M.dimension());
}

}  // namespace detail

/// Every ordered pair of distinct cell anchors at resolution n.
inline HolderReport holder_modulus_exhaustive(const InterleaveMap& M, int n) {
    if (n < 1 || n > 12) throw PreconditionError("holder_modulus_exhaustive: resolution must lie in [1, 12]");
    HolderReport r{M.dimension(), n, 0, 0.0};
    const std::uint64_t cells = std::uint64_t{1} << n;
    for (std::uint64_t x = 0; x < cells; ++x)
        for (std::uint64_t y = x + 1; y < cells; ++y) {
            r.max_ratio = std::max(r.max_ratio, detail::holder_ratio(M, x, y, n));
            ++r.pairs;
        }
    return r;
}

/// Random pairs at resolution n (up to 62).
inline HolderReport holder_modulus_sampled(const InterleaveMap& M, int n, std::size_t pairs, std::uint64_t seed) {
    if (n < 1 || n > 62) throw PreconditionError("holder_modulus_sampled: resolution must lie in [1, 62]");
    Rng rng(seed);
    HolderReport r{M.dimension(), n, 0, 0.0};
    const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
    while (r.pairs < pairs) {
        const std::uint64_t x = rng.bits() & mask;
        // bias toward close pairs: flip the digits above a random split level
        const int split = static_cast<int>(rng.integer(0, n - 1));
        const std::uint64_t y = x ^ ((rng.bits() << split | std::uint64_t{1} << split) & mask);
        if (x == y) continue;
        r.max_ratio = std::max(r.max_ratio, detail::holder_ratio(M, x, y, n));
        ++r.pairs;
    }
    return r;
}

/// Σ_{B≠B'} |f_B - f_{B'}|² |c_B - c_{B'}|^{-(d+2σ)} vol² over the grid, Euclidean box centres.
inline double gagliardo_seminorm_sq(const GridFunction& f, double sigma) {
    if (!(sigma >= 0.0)) throw PreconditionError("gagliardo_seminorm: smoothness must be >= 0");
    const int d = f.dimension();
    const double side = std::exp2(-f.level());
    const double vol2 = std::exp2(-2.0 * d * f.level());
    std::vector<std::vector<std::uint64_t>> boxes(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) boxes[i] = f.box(i);
    double total = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = i + 1; j < f.size(); ++j) {
            const double diff = f[i] - f[j];
            if (diff == 0.0) continue;
            double dist2 = 0.0;
            for (int k = 0; k < d; ++k) {
                const double t = (static_cast<double>(boxes[i][k]) - static_cast<double>(boxes[j][k])) * side;
                dist2 += t * t;
            }
            total += 2.0 * diff * diff * std::pow(dist2, -(d + 2.0 * sigma) / 2.0) * vol2;
        }
    return total;
}

struct HolderTransport {
    double s = 0.0;
    double z2_norm = 0.0;         // ‖T_φ f‖_{Hˢ(Z₂)}
    double z2_seminorm = 0.0;     // the same without λ = 0
    double euclid_norm = 0.0;     // ‖f‖_{L²} + (Gagliardo seminorm of order ds)
    double euclid_seminorm = 0.0;
    double ratio = 0.0;           // z2_norm / euclid_norm
};

inline HolderTransport holder_transport_check(const InterleaveMap& M, const GridFunction& f, double s) {
    if (!(s >= 0.0)) throw PreconditionError("holder_transport_check: s >= 0 required");
    HolderTransport r;
    r.s = s;
    const Spectrum spec = fourier_series(pullback(M, f));
    r.z2_norm = hs_norm(spec, s);
    double semi = 0.0;
    for (std::size_t m = 1; m < spec.size(); ++m) semi += hs_weight(spec.level(m), s) * std::norm(spec[m]);
    r.z2_seminorm = std::sqrt(semi);
    r.euclid_seminorm = std::sqrt(gagliardo_seminorm_sq(f, M.dimension() * s));
    r.euclid_norm = f.lp_norm(2.0) + r.euclid_seminorm;
    r.ratio = r.euclid_norm > 0.0 ? r.z2_norm / r.euclid_norm : 0.0;
    return r;
}

inline GridFunction random_grid_function(Rng& rng, int d, int m) {
    GridFunction f(d, m);
    for (auto& v : f.values()) v = rng.uniform(-1.0, 1.0);
    return f;
}

/// Integer values in [lo, hi]: sums of powers stay exact in double precision.
inline GridFunction random_integer_grid_function(Rng& rng, int d, int m, int lo = -8, int hi = 8) {
    GridFunction f(d, m);
    for (auto& v : f.values()) v = static_cast<double>(rng.integer(lo, hi));
    return f;
}

}  // namespace twoadic
