#pragma once

// Exact arithmetic in Z[1/2], 2-adic balls, Haar measure and additive characters.

#include <bit>
#include <cmath>
#include <complex>
#include <compare>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

#include "twoadic/errors.hpp"

namespace twoadic {

/// Exact element numerator / 2^exponent of Z[1/2].
///
/// Canonical form: the numerator is odd, or the value is 0 stored as 0 / 2^0.
/// Arithmetic never rounds; results that leave the 64-bit range throw
/// std::overflow_error.
class DyadicRational {
  public:
    constexpr DyadicRational() = default;
    constexpr DyadicRational(std::int64_t integer) : num_(integer), exp_(0) { normalize(); }
    constexpr DyadicRational(std::int64_t numerator, int exponent) : num_(numerator), exp_(exponent) {
        normalize();
    }

    /// m / 2^k.
    static constexpr DyadicRational from_fraction(std::int64_t m, int k) { return {m, k}; }

    constexpr std::int64_t numerator() const { return num_; }
    constexpr int exponent() const { return exp_; }
    constexpr bool is_zero() const { return num_ == 0; }
    /// Integer of Z (exponent ≤ 0), not just of Z₂.
    constexpr bool is_integer() const { return exp_ <= 0; }

    double to_double() const { return std::ldexp(static_cast<double>(num_), -exp_); }

    /// Integer value when is_integer(); throws on overflow.
    std::int64_t to_integer() const {
        if (exp_ > 0) throw std::domain_error("DyadicRational::to_integer: not an integer");
        return shifted(num_, -exp_);
    }

    DyadicRational operator-() const {
        if (num_ == std::numeric_limits<std::int64_t>::min())
            throw std::overflow_error("DyadicRational: negation overflow");
        return {-num_, exp_};
    }

    friend DyadicRational operator+(const DyadicRational& a, const DyadicRational& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        const int e = std::max(a.exp_, b.exp_);
        const __int128 s = widen(a.num_, e - a.exp_) + widen(b.num_, e - b.exp_);
        return from_wide(s, e);
    }
    friend DyadicRational operator-(const DyadicRational& a, const DyadicRational& b) { return a + (-b); }
    friend DyadicRational operator*(const DyadicRational& a, const DyadicRational& b) {
        const __int128 p = static_cast<__int128>(a.num_) * b.num_;
        return from_wide(p, a.exp_ + b.exp_);
    }
    DyadicRational& operator+=(const DyadicRational& o) { return *this = *this + o; }
    DyadicRational& operator-=(const DyadicRational& o) { return *this = *this - o; }
    DyadicRational& operator*=(const DyadicRational& o) { return *this = *this * o; }

    /// Multiplication by 2^k.
    DyadicRational scaled_by_pow2(int k) const { return is_zero() ? *this : DyadicRational{num_, exp_ - k}; }

    friend constexpr bool operator==(const DyadicRational&, const DyadicRational&) = default;

    /// Real ordering (not a 2-adic notion; used for containers and printing).
    friend std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b) {
        const int e = std::max(a.exp_, b.exp_);
        const __int128 x = widen(a.num_, e - a.exp_);
        const __int128 y = widen(b.num_, e - b.exp_);
        return x <=> y;
    }

    std::string to_string() const {
        if (exp_ <= 0) return std::to_string(num_) + (exp_ < 0 ? "*2^" + std::to_string(-exp_) : "");
        return std::to_string(num_) + "/2^" + std::to_string(exp_);
    }
    friend std::ostream& operator<<(std::ostream& os, const DyadicRational& q) { return os << q.to_string(); }

  private:
    constexpr void normalize() {
        if (num_ == 0) {
            exp_ = 0;
            return;
        }
        const int tz = std::countr_zero(static_cast<std::uint64_t>(num_));
        num_ >>= tz;  // arithmetic shift; exact since the low bits are zero
        exp_ -= tz;
    }

    static __int128 widen(std::int64_t v, int shift) {
        // shift ≥ 0; 64 + 62 bits is the most two aligned summands may need.
        if (shift > 62) throw std::overflow_error("DyadicRational: exponent spread too large");
        return static_cast<__int128>(v) << shift;
    }

    static std::int64_t shifted(std::int64_t v, int shift) {
        const __int128 w = widen(v, shift);
        if (w > std::numeric_limits<std::int64_t>::max() || w < std::numeric_limits<std::int64_t>::min())
            throw std::overflow_error("DyadicRational: integer overflow");
        return static_cast<std::int64_t>(w);
    }

    static DyadicRational from_wide(__int128 v, int e) {
        if (v == 0) return {};
        while ((v & 1) == 0) {
            v >>= 1;
            --e;
        }
        if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
            throw std::overflow_error("DyadicRational: numerator overflow");
        return {static_cast<std::int64_t>(v), e};
    }

    std::int64_t num_ = 0;
    int exp_ = 0;
};

/// 2-adic valuation with the +∞ value of 0 kept as a distinct state.
class Valuation {
  public:
    static constexpr Valuation infinity() { return Valuation{}; }
    constexpr explicit Valuation(int v) : value_(v) {}

    constexpr bool is_infinite() const { return !value_.has_value(); }
    int value() const {
        if (!value_) throw std::domain_error("valuation of 0 is +infinity");
        return *value_;
    }

    friend constexpr bool operator==(const Valuation&, const Valuation&) = default;
    friend constexpr std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
        if (a.is_infinite() || b.is_infinite()) {
            return static_cast<int>(a.is_infinite()) <=> static_cast<int>(b.is_infinite());
        }
        return *a.value_ <=> *b.value_;
    }

  private:
    constexpr Valuation() = default;
    std::optional<int> value_;
};

inline Valuation valuation(const DyadicRational& q) {
    if (q.is_zero()) return Valuation::infinity();
    return Valuation{-q.exponent()};
}

/// |q|₂ = 2^{-v₂(q)}; exact power of two, 0 for q = 0.
inline double norm2(const DyadicRational& q) {
    if (q.is_zero()) return 0.0;
    return std::ldexp(1.0, q.exponent());
}

inline double dist2(const DyadicRational& x, const DyadicRational& y) { return norm2(x - y); }

/// Nonnegative remainder of the integer v modulo 2^bits (2-adic truncation).
inline std::uint64_t low_bits(std::int64_t v, int bits) {
    if (bits <= 0) return 0;
    if (bits >= 64) throw std::overflow_error("low_bits: modulus 2^" + std::to_string(bits) + " too large");
    return static_cast<std::uint64_t>(v) & ((std::uint64_t{1} << bits) - 1);
}

/// Representative of q modulo 2^level in [0, 2^level), still exact in Z[1/2].
inline DyadicRational reduce_mod_pow2(const DyadicRational& q, int level) {
    if (q.is_zero()) return q;
    const int e = q.exponent();
    if (level + e <= 0) return {};  // q ∈ 2^level Z₂
    return DyadicRational{static_cast<std::int64_t>(low_bits(q.numerator(), level + e)), e};
}

/// 2-adic fractional part {q} ∈ [0, 1), so that e^{2iπq} = e^{2iπ{q}}.
inline DyadicRational frac(const DyadicRational& q) { return reduce_mod_pow2(q, 0); }

/// The ball residue + 2^level Z₂.
class Cell {
  public:
    enum class Relation { Equal, Contains, ContainedIn, Disjoint };

    Cell(int level, const DyadicRational& residue) : level_(level), residue_(reduce_mod_pow2(residue, level)) {}
    /// Z₂ itself.
    static Cell unit_ball() { return Cell{0, 0}; }

    int level() const { return level_; }
    const DyadicRational& residue() const { return residue_; }

    bool contains(const DyadicRational& x) const { return reduce_mod_pow2(x, level_) == residue_; }

    Relation relation_to(const Cell& other) const {
        if (level_ <= other.level_) {
            if (!contains(other.residue_)) return Relation::Disjoint;
            return level_ == other.level_ ? Relation::Equal : Relation::Contains;
        }
        return other.contains(residue_) ? Relation::ContainedIn : Relation::Disjoint;
    }

    friend bool operator==(const Cell&, const Cell&) = default;

  private:
    int level_;
    DyadicRational residue_;
};

/// μ(a + 2ⁿZ₂) = 2^{-n}, exactly.
inline DyadicRational ball_measure_exact(const Cell& c) { return DyadicRational{1, c.level()}; }
inline double ball_measure(const Cell& c) { return std::ldexp(1.0, -c.level()); }

/// Generation at which the paths to the ends a and b part, i.e. -log₂|a-b|₂.
inline int splitting_generation(std::uint64_t a, std::uint64_t b, int n) {
    const std::uint64_t mask = n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    const std::uint64_t diff = (a ^ b) & mask;
    if (diff == 0) throw PreconditionError("splitting_generation: identical ends");
    return std::countr_zero(diff);
}

/// e^{2iπt} for a phase t ∈ Z[1/2]/Z stored exactly.
class UnitComplex {
  public:
    UnitComplex() = default;
    explicit UnitComplex(const DyadicRational& phase) : phase_(frac(phase)) {}

    const DyadicRational& phase() const { return phase_; }

    std::complex<double> value() const {
        // Quarter turns are applied exactly; only the remainder in [0, 1/4) hits sin/cos.
        const std::int64_t m = phase_.numerator();
        const int e = phase_.exponent();
        if (m == 0) return {1.0, 0.0};
        int quadrant = 0;
        double rest = 0.0;
        if (e <= 2) {
            quadrant = static_cast<int>(m << (2 - e));
        } else {
            quadrant = static_cast<int>(static_cast<std::uint64_t>(m) >> (e - 2));
            const std::uint64_t r = low_bits(m, e - 2);
            rest = std::ldexp(static_cast<double>(r), -e);
        }
        const double angle = 2.0 * std::numbers::pi * rest;
        const double c = rest == 0.0 ? 1.0 : std::cos(angle);
        const double s = rest == 0.0 ? 0.0 : std::sin(angle);
        switch (quadrant & 3) {
            case 0: return {c, s};
            case 1: return {-s, c};
            case 2: return {-c, -s};
            default: return {s, -c};
        }
    }
    double re() const { return value().real(); }
    double im() const { return value().imag(); }

    friend UnitComplex operator*(const UnitComplex& a, const UnitComplex& b) {
        return UnitComplex{a.phase_ + b.phase_};
    }
    UnitComplex conj() const { return UnitComplex{-phase_}; }
    friend bool operator==(const UnitComplex&, const UnitComplex&) = default;

  private:
    DyadicRational phase_;
};

/// The additive character e^{2iπ{xλ}} of Q₂.
/// The product is reduced modulo 1 in 128 bits, so large integer parts never overflow.
inline UnitComplex character(const DyadicRational& x, const DyadicRational& lambda) {
    const __int128 p = static_cast<__int128>(x.numerator()) * lambda.numerator();
    const int e = x.exponent() + lambda.exponent();
    if (p == 0 || e <= 0) return UnitComplex{};
    if (e > 62) return UnitComplex{x * lambda};
    const std::int64_t low = static_cast<std::int64_t>(static_cast<unsigned __int128>(p) & ((std::uint64_t{1} << e) - 1));
    return UnitComplex{DyadicRational{low, e}};
}

}  // namespace twoadic
