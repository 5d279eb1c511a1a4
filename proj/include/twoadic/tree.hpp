#pragma once

// Resistive dyadic trees. Vertex x_n^k (generation n, 0 ≤ k < 2ⁿ) hangs below
// x_{n-1}^{k mod 2^{n-1}} through the edge of resistance r_n^k; the root edge
// r_0 joins x_0^0 to the atmosphere, where the pressure is 0. Leaves of a
// depth-N tree are the level-N cells of Z₂.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "twoadic/dyadic.hpp"
#include "twoadic/errors.hpp"
#include "twoadic/fourier.hpp"
#include "twoadic/random.hpp"
#include "twoadic/sobolev.hpp"
#include "twoadic/step_function.hpp"

namespace twoadic {

/// Per-edge resistances r_n^k: either the geometric law r₀ = 1, rₙ = α^{n-1}(α-1)
/// (so that the cumulated resistance is αⁿ), or explicit finite-depth data.
class ResistanceProfile {
  public:
    struct Geometric {
        double alpha;
    };
    struct Explicit {
        std::vector<std::vector<double>> r;
    };

    static ResistanceProfile geometric(double alpha) {
        if (!(alpha > 1.0) || !std::isfinite(alpha))
            throw PreconditionError("geometric profile: alpha must be > 1 for positive resistances");
        return ResistanceProfile{Geometric{alpha}};
    }

    static ResistanceProfile explicit_profile(std::vector<std::vector<double>> r) {
        if (r.empty()) throw PreconditionError("explicit profile: no generations");
        for (std::size_t n = 0; n < r.size(); ++n) {
            if (n > 30 || r[n].size() != (std::size_t{1} << n))
                throw PreconditionError("explicit profile: generation " + std::to_string(n) + " must hold 2^" +
                                        std::to_string(n) + " resistances");
            for (double v : r[n])
                if (!(v > 0.0) || !std::isfinite(v))
                    throw PreconditionError("explicit profile: resistances must be finite and > 0");
        }
        return ResistanceProfile{Explicit{std::move(r)}};
    }

    bool is_geometric() const { return std::holds_alternative<Geometric>(data_); }
    double alpha() const {
        if (!is_geometric()) throw PreconditionError("alpha() is only defined for geometric profiles");
        return std::get<Geometric>(data_).alpha;
    }
    const std::vector<std::vector<double>>& explicit_data() const { return std::get<Explicit>(data_).r; }

    /// Deepest generation with data; nullopt for the unbounded geometric law.
    std::optional<int> depth() const {
        if (is_geometric()) return std::nullopt;
        return static_cast<int>(explicit_data().size()) - 1;
    }
    void require_depth(int n) const {
        if (n < 0) throw PreconditionError("tree depth must be >= 0");
        if (auto d = depth(); d && *d < n)
            throw PreconditionError("resistance profile covers depth " + std::to_string(*d) + " < " +
                                    std::to_string(n));
    }

    double r(int n, std::uint64_t k) const {
        if (is_geometric()) return geometric_r(alpha(), n);
        return explicit_data()[n][k & ((std::uint64_t{1} << n) - 1)];
    }
    double max_r(int n) const {
        if (is_geometric()) return geometric_r(alpha(), n);
        const auto& g = explicit_data()[n];
        return *std::max_element(g.begin(), g.end());
    }

    /// Σ_{m ≤ n} r_m along the path to x_n^k.
    double path_resistance(int n, std::uint64_t k) const {
        if (is_geometric()) return std::pow(alpha(), n);
        double s = 0.0;
        for (int m = 0; m <= n; ++m) s += r(m, k);
        return s;
    }

    /// Smallest α with max_k r_n^k ≤ αⁿ for every n ≥ 1 of the data.
    double envelope_alpha() const {
        if (is_geometric()) return alpha();
        double a = 0.0;
        const auto d = *depth();
        for (int n = 1; n <= d; ++n) a = std::max(a, std::pow(max_r(n), 1.0 / n));
        return a;
    }

  private:
    explicit ResistanceProfile(std::variant<Geometric, Explicit> d) : data_(std::move(d)) {}
    static double geometric_r(double a, int n) { return n == 0 ? 1.0 : std::pow(a, n - 1) * (a - 1.0); }

    std::variant<Geometric, Explicit> data_;
};

/// Pressures on the vertices of a depth-N tree; levels[n][k] is p(x_n^k).
class TreeField {
  public:
    explicit TreeField(int depth) {
        if (depth < 0 || depth > StepFunction::kMaxCells) throw PreconditionError("TreeField: depth out of range");
        levels_.resize(static_cast<std::size_t>(depth) + 1);
        for (int n = 0; n <= depth; ++n) levels_[n].assign(std::size_t{1} << n, 0.0);
    }
    explicit TreeField(std::vector<std::vector<double>> levels) : levels_(std::move(levels)) {
        if (levels_.empty()) throw PreconditionError("TreeField: no levels");
        for (std::size_t n = 0; n < levels_.size(); ++n)
            if (levels_[n].size() != (std::size_t{1} << n))
                throw PreconditionError("TreeField: level " + std::to_string(n) + " must hold 2^" +
                                        std::to_string(n) + " values");
    }

    int depth() const { return static_cast<int>(levels_.size()) - 1; }
    std::span<const double> level(int n) const { return levels_[n]; }
    std::span<double> level(int n) { return levels_[n]; }
    const std::vector<std::vector<double>>& levels() const { return levels_; }
    double operator()(int n, std::uint64_t k) const { return levels_[n][k]; }
    double& operator()(int n, std::uint64_t k) { return levels_[n][k]; }
    double parent_value(int n, std::uint64_t k) const {
        return levels_[n - 1][k & ((std::uint64_t{1} << (n - 1)) - 1)];
    }

    friend bool operator==(const TreeField&, const TreeField&) = default;

  private:
    std::vector<std::vector<double>> levels_;
};

/// Σ_k |p(x_n^k) - p(parent)|² / r_n^k for n = 1..N; index 0 is left at 0.
inline std::vector<double> h1_generation_energy(const TreeField& tf, const ResistanceProfile& R) {
    R.require_depth(tf.depth());
    std::vector<double> e(static_cast<std::size_t>(tf.depth()) + 1, 0.0);
    for (int n = 1; n <= tf.depth(); ++n) {
        double s = 0.0;
        for (std::uint64_t k = 0; k < (std::uint64_t{1} << n); ++k) {
            const double d = tf(n, k) - tf.parent_value(n, k);
            s += d * d / R.r(n, k);
        }
        e[n] = s;
    }
    return e;
}

/// Dirichlet energy seminorm; the root edge r₀ is not part of it.
inline double h1_seminorm(const TreeField& tf, const ResistanceProfile& R) {
    double s = 0.0;
    for (double e : h1_generation_energy(tf, R)) s += e;
    return std::sqrt(s);
}

/// p̃ₙ: the value p(x_n^a) spread over the cell a + 2ⁿZ₂.
inline StepFunction gamma_embed(const TreeField& tf, int n) {
    if (n < 0 || n > tf.depth()) throw PreconditionError("gamma_embed: generation outside the tree");
    return StepFunction::from_real(0, n, tf.level(n));
}

// ---------------------------------------------------------------------------
// Admissibility of traces

struct ConditionReport {
    std::string condition;
    bool admissible = false;
    double envelope_alpha = 0.0;  // α with max_k rₙ ≤ αⁿ
    double threshold = 0.0;       // the condition holds iff envelope_alpha < threshold
    double margin = 0.0;          // threshold - envelope_alpha
    double partial_sum = 0.0;     // the series over the available generations (closed form when geometric)
};

namespace detail {

/// Σ_{n ≥ 0} 2^{-n} (max_k rₙ)^power / 2^{-n·shift}: closed form for geometric profiles, finite sum otherwise.
inline double resistance_series(const ResistanceProfile& R, double power, double shift) {
    if (R.is_geometric()) {
        const double a = R.alpha();
        const double ratio = std::pow(a, power) * std::pow(2.0, shift - 1.0);
        if (ratio >= 1.0) return std::numeric_limits<double>::infinity();
        return 1.0 + std::pow(a - 1.0, power) * std::pow(a, -power) * ratio / (1.0 - ratio);
    }
    double s = 0.0;
    for (int n = 0; n <= *R.depth(); ++n) s += std::pow(R.max_r(n), power) * std::pow(2.0, n * (shift - 1.0));
    return s;
}

inline ConditionReport make_condition(std::string name, const ResistanceProfile& R, double threshold, double power,
                                      double shift) {
    ConditionReport c;
    c.condition = std::move(name);
    c.envelope_alpha = R.envelope_alpha();
    c.threshold = threshold;
    c.margin = threshold - c.envelope_alpha;
    c.admissible = c.envelope_alpha < threshold;
    c.partial_sum = resistance_series(R, power, shift);
    return c;
}

}  // namespace detail

/// Σ 2^{-n} maxₖ rₙᵏ < ∞, tested through the geometric envelope.
inline ConditionReport condition_l2_report(const ResistanceProfile& R) {
    return detail::make_condition("condition_l2", R, 2.0, 1.0, 0.0);
}
/// Σ 2^{-n} (maxₖ rₙᵏ)^{p/2} < ∞ (p ≥ 2); for p < 2 the L² condition suffices.
inline ConditionReport condition_lp_report(const ResistanceProfile& R, double p) {
    if (!(p >= 1.0)) throw PreconditionError("condition_lp: exponent must be >= 1");
    if (p < 2.0) {
        auto c = condition_l2_report(R);
        c.condition = "condition_lp";
        return c;
    }
    if (std::isinf(p)) return detail::make_condition("condition_lp", R, 1.0, 1.0, 0.0);
    return detail::make_condition("condition_lp", R, std::pow(4.0, 1.0 / p), p / 2.0, 0.0);
}
/// Σ maxₖ rₙᵏ / 2^{n(1-2s)} < ∞.
inline ConditionReport condition_hs_report(const ResistanceProfile& R, SobolevIndex s) {
    detail::require_finite(s, "condition_hs");
    return detail::make_condition("condition_hs", R, std::pow(2.0, 1.0 - 2.0 * s.s), 1.0, 2.0 * s.s);
}

inline bool condition_l2(const ResistanceProfile& R) { return condition_l2_report(R).admissible; }
inline bool condition_lp(const ResistanceProfile& R, double p) { return condition_lp_report(R, p).admissible; }
inline bool condition_hs(const ResistanceProfile& R, SobolevIndex s) { return condition_hs_report(R, s).admissible; }

/// Critical Sobolev exponent (1 - log₂α)/2 of the geometric law.
inline SobolevIndex s_alpha(double alpha) {
    if (!(alpha > 1.0 && alpha < 2.0)) throw PreconditionError("s_alpha: alpha must lie in (1, 2)");
    return (1.0 - std::log2(alpha)) / 2.0;
}

/// Supremum of the p with α < 4^{1/p}, i.e. 2 / log₂α.
inline double max_lp_exponent(double alpha) {
    if (!(alpha > 1.0)) throw PreconditionError("max_lp_exponent: alpha must be > 1");
    return 2.0 / std::log2(alpha);
}

/// C(R) = (Σ_{n=1}^{N} 2^{-n} maxₖ rₙᵏ)^{1/2}; N = ∞ (closed form) for geometric profiles
/// when depth is omitted.
inline double trace_constant(const ResistanceProfile& R, std::optional<int> depth = std::nullopt) {
    if (R.is_geometric() && !depth) {
        const double a = R.alpha();
        if (a >= 2.0) return std::numeric_limits<double>::infinity();
        return std::sqrt((a - 1.0) / (2.0 - a));
    }
    const int N = depth.value_or(R.depth().value_or(0));
    double s = 0.0;
    for (int n = 1; n <= N; ++n) s += std::ldexp(R.max_r(n), -n);
    return std::sqrt(s);
}

/// c with ‖p̃ₙ - p̃ₙ₋₁‖²_{Hˢ} ≤ c Σⱼ |Δⱼ|² 2^{n(2s-1)}, s ≥ 0 (from (1 + 2ⁿ) ≤ 2·2ⁿ).
inline double hs_increment_constant(SobolevIndex s) { return std::pow(4.0, std::max(s.s, 0.0)); }

// ---------------------------------------------------------------------------
// Trace

struct TraceIncrement {
    int n = 0;
    double l2_increment = 0.0;  // ‖p̃ₙ - p̃ₙ₋₁‖_{L²}
    double hs_increment = 0.0;  // ‖p̃ₙ - p̃ₙ₋₁‖_{Hˢ}
    double hs_bound = 0.0;      // (c Σⱼ|Δⱼ|² 2^{n(2s-1)})^{1/2}
    double partial_sum = 0.0;   // Σ_{m ≤ n} l2_increment
    double bound = 0.0;         // Cauchy-Schwarz bound on partial_sum
};

struct TraceReport {
    StepFunction trace;  // p̃_N
    double s = 0.0;
    double h1 = 0.0;
    double constant = 0.0;  // C(R) over the tree's depth
    std::vector<TraceIncrement> increments;
    double fitted_decay = std::numeric_limits<double>::quiet_NaN();     // per-generation factor, L²
    double fitted_decay_hs = std::numeric_limits<double>::quiet_NaN();  // per-generation factor, Hˢ
};

/// Per-step factor ρ of a least-squares fit log yₙ ≈ a + n log ρ (zero entries skipped).
inline double fit_geometric_decay(std::span<const double> y, int first_index = 1) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (!(y[i] > 0.0)) continue;
        const double x = first_index + static_cast<double>(i);
        const double l = std::log(y[i]);
        sx += x;
        sy += l;
        sxx += x * x;
        sxy += x * l;
        ++count;
    }
    if (count < 2) return std::numeric_limits<double>::quiet_NaN();
    const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    return std::exp(slope);
}

/// Throws unless s is admissible for traces on R: condition_hs, or the critical
/// exponent s = s_α of a sub-geometric envelope with α ∈ (1, 2).
inline void require_trace_admissible(const ResistanceProfile& R, SobolevIndex s) {
    detail::require_finite(s, "trace");
    if (s.s < 0.0) throw PreconditionError("trace: requires s >= 0");
    const auto hs = condition_hs_report(R, s);
    if (hs.admissible) return;
    const double a = hs.envelope_alpha;
    if (a > 1.0 && a < 2.0 && s.s <= s_alpha(a).s + 1e-12) return;
    if (s.s == 0.0) throw PreconditionError("condition_l2 failed: sum 2^-n max r_n diverges (alpha >= 2)");
    throw PreconditionError("condition_hs failed: s >= s_alpha");
}

/// Generation embeddings p̃ₙ of a finite-depth field, their increments in L² and Hˢ
/// and the finite-depth trace p̃_N.
inline TraceReport trace(const TreeField& tf, const ResistanceProfile& R, SobolevIndex s) {
    require_trace_admissible(R, s);
    const int N = tf.depth();
    TraceReport rep{gamma_embed(tf, N), s.s, 0.0, trace_constant(R, N), {}, {}, {}};
    const auto energy = h1_generation_energy(tf, R);
    double total_energy = 0.0;
    for (double e : energy) total_energy += e;
    rep.h1 = std::sqrt(total_energy);

    const double c = hs_increment_constant(s);
    double partial = 0.0, weights = 0.0, energy_so_far = 0.0;
    std::vector<double> l2s, hss;
    for (int n = 1; n <= N; ++n) {
        StepFunction delta(0, n);
        double jumps = 0.0;
        for (std::uint64_t k = 0; k < delta.size(); ++k) {
            const double d = tf(n, k) - tf.parent_value(n, k);
            delta[k] = d;
            jumps += d * d;
        }
        TraceIncrement inc;
        inc.n = n;
        inc.l2_increment = lp_norm(delta, 2.0);
        inc.hs_increment = s.s == 0.0 ? inc.l2_increment : hs_norm(delta, s);
        inc.hs_bound = std::sqrt(c * jumps * std::pow(2.0, n * (2.0 * s.s - 1.0)));
        partial += inc.l2_increment;
        weights += std::ldexp(R.max_r(n), -n);
        energy_so_far += energy[n];
        inc.partial_sum = partial;
        inc.bound = std::sqrt(weights * energy_so_far);
        l2s.push_back(inc.l2_increment);
        hss.push_back(inc.hs_increment);
        rep.increments.push_back(inc);
    }
    rep.fitted_decay = fit_geometric_decay(l2s);
    rep.fitted_decay_hs = fit_geometric_decay(hss);
    return rep;
}

// ---------------------------------------------------------------------------
// Finite-tree resistor network

namespace detail {

inline void require_leaves(std::size_t size, int depth, const char* what) {
    if (depth < 0 || depth > StepFunction::kMaxCells || size != (std::size_t{1} << depth))
        throw PreconditionError(std::string(what) + ": expected 2^" + std::to_string(depth) + " leaf values, got " +
                                std::to_string(size));
}

}  // namespace detail

/// Pressures produced by leaf fluxes (positive toward the root) on a depth-N tree.
/// The flux through an edge is the sum of the leaf fluxes below it, and each edge
/// adds r·(flux) on the way down from the atmosphere.
inline TreeField flux_to_pressure_finite(const ResistanceProfile& R, std::span<const double> leaf_flux, int depth) {
    detail::require_leaves(leaf_flux.size(), depth, "flux_to_pressure_finite");
    R.require_depth(depth);
    std::vector<std::vector<double>> flux(static_cast<std::size_t>(depth) + 1);
    flux[depth].assign(leaf_flux.begin(), leaf_flux.end());
    for (int m = depth - 1; m >= 0; --m) {
        const std::size_t half = std::size_t{1} << m;
        flux[m].resize(half);
        for (std::size_t j = 0; j < half; ++j) flux[m][j] = flux[m + 1][j] + flux[m + 1][j + half];
    }
    TreeField tf(depth);
    tf(0, 0) = R.r(0, 0) * flux[0][0];
    for (int n = 1; n <= depth; ++n)
        for (std::uint64_t k = 0; k < (std::uint64_t{1} << n); ++k)
            tf(n, k) = tf.parent_value(n, k) + R.r(n, k) * flux[n][k];
    return tf;
}

/// Leaf-to-leaf resistance matrix: A_ab is the resistance of the path shared by a and b.
inline Eigen::MatrixXd resistance_matrix(const ResistanceProfile& R, int depth) {
    R.require_depth(depth);
    if (depth > 12) throw PreconditionError("resistance_matrix: depth > 12 is too large for a dense matrix");
    const std::size_t size = std::size_t{1} << depth;
    // prefix[a][m] = Σ_{m' ≤ m} r_{m'} on the path to leaf a
    std::vector<std::vector<double>> prefix(size, std::vector<double>(static_cast<std::size_t>(depth) + 1));
    for (std::size_t a = 0; a < size; ++a) {
        double s = 0.0;
        for (int m = 0; m <= depth; ++m) prefix[a][m] = (s += R.r(m, a));
    }
    Eigen::MatrixXd A(size, size);
    for (std::size_t a = 0; a < size; ++a) {
        A(a, a) = prefix[a][depth];
        for (std::size_t b = a + 1; b < size; ++b) {
            const int split = splitting_generation(a, b, depth);
            A(a, b) = A(b, a) = prefix[a][split];
        }
    }
    return A;
}

enum class SolverMethod { Dense, Fast };

/// Leaf fluxes driven by leaf pressures: solves A q = p by Cholesky of the dense matrix.
inline std::vector<double> pressure_to_flux_dense(const ResistanceProfile& R, std::span<const double> leaf_pressure,
                                                  int depth) {
    detail::require_leaves(leaf_pressure.size(), depth, "pressure_to_flux_dense");
    const Eigen::MatrixXd A = resistance_matrix(R, depth);
    const Eigen::LLT<Eigen::MatrixXd> llt(A);
    if (llt.info() != Eigen::Success) throw std::runtime_error("pressure_to_flux_dense: resistance matrix not SPD");
    const Eigen::VectorXd p = Eigen::Map<const Eigen::VectorXd>(leaf_pressure.data(), leaf_pressure.size());
    const Eigen::VectorXd q = llt.solve(p);
    if (!q.allFinite()) throw std::runtime_error("pressure_to_flux_dense: ill-conditioned system");
    return {q.data(), q.data() + q.size()};
}

/// Same solve in O(2^N): each subtree is reduced to an equivalent conductance and
/// source pressure from the leaves up, then fluxes are recovered from the root down.
inline std::vector<double> pressure_to_flux_fast(const ResistanceProfile& R, std::span<const double> leaf_pressure,
                                                 int depth) {
    detail::require_leaves(leaf_pressure.size(), depth, "pressure_to_flux_fast");
    R.require_depth(depth);
    // conductance[n][k], source[n][k]: flux up edge e_n^k = conductance·(source - p(upper vertex))
    std::vector<std::vector<double>> conductance(static_cast<std::size_t>(depth) + 1);
    std::vector<std::vector<double>> source(static_cast<std::size_t>(depth) + 1);
    const std::size_t leaves = std::size_t{1} << depth;
    conductance[depth].resize(leaves);
    source[depth].assign(leaf_pressure.begin(), leaf_pressure.end());
    for (std::size_t k = 0; k < leaves; ++k) conductance[depth][k] = 1.0 / R.r(depth, k);
    for (int n = depth - 1; n >= 0; --n) {
        const std::size_t width = std::size_t{1} << n;
        conductance[n].resize(width);
        source[n].resize(width);
        for (std::size_t k = 0; k < width; ++k) {
            const double g0 = conductance[n + 1][k], g1 = conductance[n + 1][k + width];
            const double g = g0 + g1;
            if (!(g > 0.0) || !std::isfinite(g)) throw std::runtime_error("pressure_to_flux_fast: degenerate subtree");
            source[n][k] = (g0 * source[n + 1][k] + g1 * source[n + 1][k + width]) / g;
            conductance[n][k] = 1.0 / (R.r(n, k) + 1.0 / g);
        }
    }
    // Downward: vertex pressure first, then the flux up each child edge.
    // upper holds the generation n-1 vertex pressures (the atmosphere for n = 0).
    std::vector<double> upper{0.0};
    std::vector<double> flux{conductance[0][0] * source[0][0]};
    for (int n = 0; n < depth; ++n) {
        const std::size_t width = std::size_t{1} << n;
        const std::size_t umask = upper.size() - 1;
        std::vector<double> vertex(width), child_flux(2 * width);
        for (std::size_t k = 0; k < width; ++k) vertex[k] = upper[k & umask] + R.r(n, k) * flux[k];
        for (std::size_t k = 0; k < 2 * width; ++k)
            child_flux[k] = conductance[n + 1][k] * (source[n + 1][k] - vertex[k & (width - 1)]);
        upper = std::move(vertex);
        flux = std::move(child_flux);
    }
    return flux;
}

/// The finite Dirichlet-to-Neumann map of a depth-N tree.
inline std::vector<double> pressure_to_flux_finite(const ResistanceProfile& R, std::span<const double> leaf_pressure,
                                                   int depth, SolverMethod method = SolverMethod::Fast) {
    return method == SolverMethod::Dense ? pressure_to_flux_dense(R, leaf_pressure, depth)
                                         : pressure_to_flux_fast(R, leaf_pressure, depth);
}

// ---------------------------------------------------------------------------
// Sampling

/// Seeded field with independent edge increments of variance rₙᵏ·2^{-n}·wₙ, so the
/// expected energy of generation n is proportional to wₙ (equal by default). The
/// field is then scaled to h1_seminorm = energy; the root pressure is 0.
inline TreeField sample_h1_field(const ResistanceProfile& R, int depth, std::uint64_t seed, double energy,
                                 std::span<const double> generation_weight = {}) {
    if (!(energy > 0.0)) throw PreconditionError("sample_h1_field: energy must be > 0");
    R.require_depth(depth);
    if (!generation_weight.empty() && generation_weight.size() < static_cast<std::size_t>(depth) + 1)
        throw PreconditionError("sample_h1_field: need one weight per generation");
    Rng rng(seed);
    TreeField tf(depth);
    for (int n = 1; n <= depth; ++n) {
        const double w = generation_weight.empty() ? 1.0 : generation_weight[n];
        for (std::uint64_t k = 0; k < (std::uint64_t{1} << n); ++k) {
            const double sd = std::sqrt(R.r(n, k) * std::ldexp(w, -n));
            tf(n, k) = tf.parent_value(n, k) + sd * rng.normal();
        }
    }
    const double h1 = h1_seminorm(tf, R);
    if (!(h1 > 0.0)) throw PreconditionError("sample_h1_field: depth 0 tree has no energy");
    const double scale = energy / h1;
    for (int n = 0; n <= depth; ++n)
        for (auto& v : tf.level(n)) v *= scale;
    return tf;
}

}  // namespace twoadic
