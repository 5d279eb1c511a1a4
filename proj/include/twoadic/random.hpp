#pragma once

// Seeded generators whose output is identical on every platform: the raw
// mt19937_64 sequence is fixed by the standard, and the conversions to
// doubles below are ours (std::*_distribution is implementation-defined).

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "twoadic/step_function.hpp"

namespace twoadic {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return std::ldexp(static_cast<double>(engine_() >> 11), -53); }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Standard normal by Box-Muller.
    double normal() {
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }
    /// Uniform integer in [lo, hi].
    std::int64_t integer(std::int64_t lo, std::int64_t hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(engine_() % span);
    }
    std::uint64_t bits() { return engine_(); }

  private:
    std::mt19937_64 engine_;
};

/// Real step function on Z₂ with values uniform in [-1, 1].
inline StepFunction random_step_function(Rng& rng, int resolution) {
    StepFunction f(0, resolution);
    for (auto& v : f.values()) v = rng.uniform(-1.0, 1.0);
    return f;
}

/// Complex step function on 2^{-K}Z₂ with both parts uniform in [-1, 1].
inline StepFunction random_complex_step_function(Rng& rng, int support_level, int resolution) {
    StepFunction f(support_level, resolution);
    for (auto& v : f.values()) v = Complex{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    return f;
}

}  // namespace twoadic
