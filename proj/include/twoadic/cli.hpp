#pragma once

// Batch front end: one RunConfig in, output files and an exit status out.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "twoadic/embed.hpp"
#include "twoadic/errors.hpp"
#include "twoadic/fourier.hpp"
#include "twoadic/io.hpp"
#include "twoadic/random.hpp"
#include "twoadic/sobolev.hpp"
#include "twoadic/step_function.hpp"
#include "twoadic/tree.hpp"
#include "twoadic/ventilation.hpp"

namespace twoadic::cli {

enum class Command { Transform, Norm, Trace, Ventilate, SolveTree, Embed, Report };
enum class Format { Json, Csv };
enum class Direction { ND, DN };

inline constexpr const char* kOutputDirEnv = "TWOADIC_OUTPUT_DIR";

enum ExitCode : int {
    kOk = 0,
    kRuntimeError = 1,
    kSchemaError = 2,
    kPreconditionError = 3,
    kUsageError = 64,
};

struct RunConfig {
    Command command = Command::Transform;
    std::optional<std::filesystem::path> input;
    std::optional<std::filesystem::path> output;  // main output file; default <output_dir>/<command>.json
    std::optional<std::filesystem::path> output_dir;
    std::optional<std::filesystem::path> tree;    // tree config JSON
    std::optional<double> s;
    std::optional<double> alpha;
    std::optional<double> p;
    std::uint64_t seed = 1;
    std::optional<int> depth;
    std::optional<int> resolution;
    Format format = Format::Json;
    Direction direction = Direction::ND;
    SolverMethod method = SolverMethod::Fast;
    bool inverse = false;      // transform: Spectrum → StepFunction
    int samples = 20;          // report: ensemble size per resolution
};

inline std::string command_name(Command c) {
    switch (c) {
        case Command::Transform: return "transform";
        case Command::Norm: return "norm";
        case Command::Trace: return "trace";
        case Command::Ventilate: return "ventilate";
        case Command::SolveTree: return "solve-tree";
        case Command::Embed: return "embed";
        case Command::Report: return "report";
    }
    return "unknown";
}

namespace detail {

inline std::filesystem::path output_dir(const RunConfig& c) {
    if (c.output_dir) return *c.output_dir;
    if (const char* env = std::getenv(kOutputDirEnv); env && *env) return env;
    return ".";
}

inline std::filesystem::path main_output(const RunConfig& c, const std::string& extension) {
    if (c.output) return *c.output;
    return output_dir(c) / (command_name(c.command) + extension);
}

inline std::filesystem::path sibling(const std::filesystem::path& p, const std::string& suffix) {
    auto q = p;
    q.replace_extension();
    return q.string() + suffix;
}

inline const std::filesystem::path& require_input(const RunConfig& c) {
    if (!c.input) throw PreconditionError(command_name(c.command) + ": --input is required");
    return *c.input;
}

inline void require_json_format(const RunConfig& c) {
    if (c.format != Format::Json)
        throw PreconditionError(command_name(c.command) + ": only --format json is supported");
}

inline io::TreeConfig tree_config(const RunConfig& c) {
    if (c.tree) {
        if (c.alpha) throw PreconditionError("give either --tree or --alpha, not both");
        auto tc = io::tree_config_from_json(io::read_json(*c.tree), c.tree->string());
        if (c.depth && tc.depth && *c.depth != *tc.depth) throw PreconditionError("--depth contradicts the tree file");
        if (c.depth && !tc.depth) tc.depth = c.depth;
        return tc;
    }
    if (!c.alpha) throw PreconditionError(command_name(c.command) + ": --alpha or --tree is required");
    return {ResistanceProfile::geometric(*c.alpha), c.depth};
}

inline std::string csv_key_values(const io::Json& j) {
    std::string out = "key,value\n";
    for (const auto& [k, v] : j.items()) {
        out += k + ",";
        out += v.is_number_float() ? io::format_double(v.get<double>()) : v.dump();
        out += "\n";
    }
    return out;
}

}  // namespace detail

/// Checks parameters against the preconditions of the target module; throws PreconditionError.
inline void validate(const RunConfig& c) {
    const std::string cmd = command_name(c.command);
    if (c.s && !std::isfinite(*c.s)) throw PreconditionError(cmd + ": s must be finite");
    if (c.p && !(*c.p >= 1.0)) throw PreconditionError(cmd + ": p >= 1 required");
    if (c.depth && (*c.depth < 0 || *c.depth > StepFunction::kMaxCells))
        throw PreconditionError(cmd + ": depth out of range");
    if (c.resolution && (*c.resolution < 0 || *c.resolution > StepFunction::kMaxCells))
        throw PreconditionError(cmd + ": resolution out of range");
    if (c.samples < 1) throw PreconditionError(cmd + ": samples must be >= 1");
    switch (c.command) {
        case Command::Transform:
        case Command::Embed:
            detail::require_input(c);
            detail::require_json_format(c);
            break;
        case Command::Norm:
            detail::require_input(c);  // s < 0: only the Fourier norm is reported
            break;
        case Command::Trace:
            detail::require_json_format(c);
            if (c.s && *c.s < 0.0) throw PreconditionError("trace: requires s >= 0");
            if (c.alpha && !(*c.alpha > 0.0)) throw PreconditionError("trace: alpha must be > 0");
            break;
        case Command::Ventilate:
            detail::require_input(c);
            detail::require_json_format(c);
            if (c.alpha && !(*c.alpha > 1.0 && *c.alpha < 2.0))
                throw PreconditionError("ventilate: alpha must lie in (1, 2)");
            break;
        case Command::SolveTree:
            detail::require_input(c);
            break;
        case Command::Report:
            detail::require_json_format(c);
            if (!c.s || !(*c.s > 0.0)) throw PreconditionError("report: --s > 0 is required");
            if (!c.alpha || !(*c.alpha > 1.0 && *c.alpha < 2.0))
                throw PreconditionError("report: --alpha in (1, 2) is required");
            if (c.resolution && *c.resolution > 14) throw PreconditionError("report: resolution at most 14");
            break;
    }
}

namespace detail {

inline void run_transform(const RunConfig& c, std::ostream& out) {
    const auto j = io::read_json(*c.input);
    const auto dest = main_output(c, ".json");
    if (c.inverse) {
        io::write_json(dest, io::to_json(inverse_series(io::spectrum_from_json(j, c.input->string()))));
    } else {
        const StepFunction f = io::step_function_from_json(j, c.input->string());
        if (f.support_level() == 0) io::write_json(dest, io::to_json(fourier_series(f)));
        else io::write_json(dest, io::to_json(fourier_q2(f)));
    }
    out << dest.string() << "\n";
}

inline void run_norm(const RunConfig& c, std::ostream& out) {
    const StepFunction f = io::step_function_from_json(io::read_json(*c.input), c.input->string());
    const double s = c.s.value_or(0.0);
    io::Json j;
    j["s"] = s;
    j["l1"] = lp_norm(f, 1.0);
    j["l2"] = lp_norm(f, 2.0);
    j["linf"] = lp_norm(f, std::numeric_limits<double>::infinity());
    if (c.p) {
        j["p"] = *c.p;
        j["lp"] = lp_norm(f, *c.p);
    }
    if (f.support_level() == 0) {
        const Spectrum spec = fourier_series(f);
        j["hs"] = hs_norm(spec, s);
        if (s > 0.0) {
            j["hs_integral"] = hs_norm_integral(f, s);
            j["double_integral_seminorm"] = std::sqrt(double_integral_seminorm_sq(f, s));
            j["theta_seminorm"] = std::sqrt(theta_seminorm_sq(spec, s));
            j["as"] = as_norm(f, s);
        }
    }
    const auto dest = main_output(c, c.format == Format::Csv ? ".csv" : ".json");
    io::write_text_atomic(dest, c.format == Format::Csv ? csv_key_values(j) : io::dump(j));
    out << dest.string() << "\n";
}

inline void run_trace(const RunConfig& c, std::ostream& out) {
    const auto tc = tree_config(c);
    const double s = c.s.value_or(0.0);
    require_trace_admissible(tc.profile, s);
    TreeField tf = c.input ? io::tree_field_from_json(io::read_json(*c.input), c.input->string())
                           : sample_h1_field(tc.profile, c.depth.value_or(tc.depth.value_or(14)), c.seed, 1.0);
    const TraceReport rep = trace(tf, tc.profile, s);
    const auto dest = main_output(c, ".json");
    const auto csv = sibling(dest, ".csv");
    const auto summary = sibling(dest, ".report.json");
    io::write_json(dest, io::to_json(rep.trace));
    io::write_text_atomic(csv, io::trace_csv(rep));
    io::Json j{{"s", rep.s},
               {"depth", tf.depth()},
               {"h1", rep.h1},
               {"constant", rep.constant},
               {"trace_l2", lp_norm(rep.trace, 2.0)},
               {"fitted_decay", std::isfinite(rep.fitted_decay) ? io::Json(rep.fitted_decay) : io::Json()},
               {"fitted_decay_hs", std::isfinite(rep.fitted_decay_hs) ? io::Json(rep.fitted_decay_hs) : io::Json()}};
    io::Json inc = io::Json::array();
    for (const auto& i : rep.increments)
        inc.push_back({{"n", i.n}, {"l2_increment", i.l2_increment}, {"hs_increment", i.hs_increment},
                       {"hs_bound", i.hs_bound}, {"partial_sum", i.partial_sum}, {"bound", i.bound}});
    j["increments"] = std::move(inc);
    io::write_json(summary, j);
    out << dest.string() << "\n" << csv.string() << "\n" << summary.string() << "\n";
}

inline void run_ventilate(const RunConfig& c, std::ostream& out) {
    const StepFunction u = io::step_function_from_json(io::read_json(*c.input), c.input->string());
    const auto tc = tree_config(c);
    StepFunction result;
    if (tc.profile.is_geometric()) {
        result = c.direction == Direction::ND ? nd_apply(u, tc.profile.alpha()) : dn_apply(u, tc.profile.alpha());
    } else {
        if (*tc.depth != u.resolution())
            throw PreconditionError("ventilate: field resolution must equal the explicit tree depth");
        result = c.direction == Direction::ND ? nd_finite_tree(u, tc.profile) : dn_finite_tree(u, tc.profile, c.method);
    }
    const auto dest = main_output(c, ".json");
    io::write_json(dest, io::to_json(result));
    out << dest.string() << "\n";
}

inline void run_solve_tree(const RunConfig& c, std::ostream& out) {
    const StepFunction p = io::step_function_from_json(io::read_json(*c.input), c.input->string());
    auto tc = tree_config(c);
    const int depth = tc.depth.value_or(p.resolution());
    if (p.support_level() != 0 || p.resolution() != depth)
        throw PreconditionError("solve-tree: leaf pressures must live on Z2 at the tree depth");
    std::vector<double> leaf(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i].imag() != 0.0) throw PreconditionError("solve-tree: pressures must be real");
        leaf[i] = p[i].real();
    }
    const auto q = pressure_to_flux_finite(tc.profile, leaf, depth, c.method);
    io::Json j{{"depth", depth},
               {"method", c.method == SolverMethod::Dense ? "dense" : "fast"},
               {"leaf_flux", q}};
    double total = 0.0;
    for (double v : q) total += v;
    j["root_flux"] = total;
    const auto dest = main_output(c, c.format == Format::Csv ? ".csv" : ".json");
    if (c.format == Format::Csv) {
        std::string text = "leaf,flux\n";
        for (std::size_t i = 0; i < q.size(); ++i) text += std::to_string(i) + "," + io::format_double(q[i]) + "\n";
        io::write_text_atomic(dest, text);
    } else {
        io::write_json(dest, j);
    }
    out << dest.string() << "\n";
}

inline void run_embed(const RunConfig& c, std::ostream& out) {
    const GridFunction g = io::grid_function_from_json(io::read_json(*c.input), c.input->string());
    const InterleaveMap M(g.dimension());
    const StepFunction f = pullback(M, g);
    const auto dest = main_output(c, ".json");
    io::write_json(dest, io::to_json(f));
    out << dest.string() << "\n";
}

inline void run_report(const RunConfig& c, std::ostream& out) {
    const int top = c.resolution.value_or(10);
    Rng rng(c.seed);
    std::vector<StepFunction> ensemble;
    for (int n = 2; n <= top; ++n)
        for (int k = 0; k < c.samples; ++k) ensemble.push_back(random_step_function(rng, n));
    const auto eq = norm_equivalence_report(ensemble, *c.s);
    const auto cont = nd_continuity_report(*c.alpha, top, ensemble);
    const auto dest = main_output(c, ".json");
    io::write_json(dest, io::Json{{"seed", c.seed},
                                  {"samples_per_resolution", c.samples},
                                  {"equivalence", io::to_json(eq)},
                                  {"continuity", io::to_json(cont)}});
    out << dest.string() << "\n";
}

}  // namespace detail

/// Runs one command. Written file paths go to out; failures go to err as error JSON.
inline int run(const RunConfig& c, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    try {
        validate(c);
        switch (c.command) {
            case Command::Transform: detail::run_transform(c, out); break;
            case Command::Norm: detail::run_norm(c, out); break;
            case Command::Trace: detail::run_trace(c, out); break;
            case Command::Ventilate: detail::run_ventilate(c, out); break;
            case Command::SolveTree: detail::run_solve_tree(c, out); break;
            case Command::Embed: detail::run_embed(c, out); break;
            case Command::Report: detail::run_report(c, out); break;
        }
        return kOk;
    } catch (const SchemaError& e) {
        err << io::error_json("schema", e.what()).dump() << "\n";
        return kSchemaError;
    } catch (const PreconditionError& e) {
        err << io::error_json("precondition", e.what()).dump() << "\n";
        return kPreconditionError;
    } catch (const std::exception& e) {
        err << io::error_json("runtime", e.what()).dump() << "\n";
        return kRuntimeError;
    }
}

}  // namespace twoadic::cli
