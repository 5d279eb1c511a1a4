#pragma once

// JSON and CSV serialization for every artifact type. Readers validate the
// schema and throw SchemaError with a JSON-pointer-like location.

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "twoadic/embed.hpp"
#include "twoadic/errors.hpp"
#include "twoadic/fourier.hpp"
#include "twoadic/sobolev.hpp"
#include "twoadic/step_function.hpp"
#include "twoadic/tree.hpp"
#include "twoadic/ventilation.hpp"

namespace twoadic::io {

using Json = nlohmann::ordered_json;

namespace detail {

[[noreturn]] inline void fail(const std::string& where, const std::string& what) {
    throw SchemaError(where + ": " + what);
}

inline const Json& field(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object()) fail(where, "expected an object");
    const auto it = j.find(key);
    if (it == j.end()) fail(where, std::string("missing field \"") + key + "\"");
    return *it;
}

inline std::int64_t integer(const Json& j, const std::string& where) {
    if (!j.is_number_integer()) fail(where, "expected an integer");
    return j.get<std::int64_t>();
}

inline int small_integer(const Json& j, const std::string& where) {
    const auto v = integer(j, where);
    if (v < -1000000 || v > 1000000) fail(where, "integer out of range");
    return static_cast<int>(v);
}

inline double number(const Json& j, const std::string& where) {
    if (!j.is_number()) fail(where, "expected a number");
    return j.get<double>();
}

inline const Json& array(const Json& j, const std::string& where) {
    if (!j.is_array()) fail(where, "expected an array");
    return j;
}

inline void require_finite(double v) {
    if (!std::isfinite(v)) throw SchemaError("cannot serialize a non-finite value");
}

template <class F>
decltype(auto) wrap(const std::string& where, F&& f) {
    try {
        return f();
    } catch (const PreconditionError& e) {
        fail(where, e.what());
    }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// StepFunction: {"support_level": K, "resolution": n, "values": [[re, im], ...]}

inline Json to_json(const StepFunction& f) {
    Json values = Json::array();
    for (const auto& v : f.values()) {
        detail::require_finite(v.real());
        detail::require_finite(v.imag());
        values.push_back(Json::array({v.real(), v.imag()}));
    }
    return Json{{"support_level", f.support_level()}, {"resolution", f.resolution()}, {"values", std::move(values)}};
}

inline StepFunction step_function_from_json(const Json& j, const std::string& where = "$") {
    const int K = detail::small_integer(detail::field(j, "support_level", where), where + ".support_level");
    const int n = detail::small_integer(detail::field(j, "resolution", where), where + ".resolution");
    const auto& vals = detail::array(detail::field(j, "values", where), where + ".values");
    StepFunction f = detail::wrap(where, [&] { return StepFunction(K, n); });
    if (vals.size() != f.size())
        detail::fail(where + ".values", "expected " + std::to_string(f.size()) + " entries, got " +
                                            std::to_string(vals.size()));
    for (std::size_t i = 0; i < vals.size(); ++i) {
        const std::string at = where + ".values[" + std::to_string(i) + "]";
        const auto& v = vals[i];
        if (v.is_number()) {
            f[i] = detail::number(v, at);
        } else {
            if (!v.is_array() || v.size() != 2) detail::fail(at, "expected [re, im]");
            f[i] = Complex{detail::number(v[0], at + "[0]"), detail::number(v[1], at + "[1]")};
        }
    }
    return f;
}

// ---------------------------------------------------------------------------
// Spectrum: {"resolution": n, "coeffs": [{"k", "j", "re", "im"}, ...]}, index order

inline Json to_json(const Spectrum& s) {
    Json coeffs = Json::array();
    for (std::size_t m = 0; m < s.size(); ++m) {
        const Frequency f = s.frequency(m);
        detail::require_finite(s[m].real());
        detail::require_finite(s[m].imag());
        coeffs.push_back(Json{{"k", f.k}, {"j", f.j}, {"re", s[m].real()}, {"im", s[m].imag()}});
    }
    return Json{{"resolution", s.resolution()}, {"coeffs", std::move(coeffs)}};
}

/// Coefficients may come in any order; absent frequencies are zero, duplicates are rejected.
inline Spectrum spectrum_from_json(const Json& j, const std::string& where = "$") {
    const int n = detail::small_integer(detail::field(j, "resolution", where), where + ".resolution");
    const auto& coeffs = detail::array(detail::field(j, "coeffs", where), where + ".coeffs");
    Spectrum s = detail::wrap(where, [&] { return Spectrum(n); });
    std::vector<bool> seen(s.size(), false);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const std::string at = where + ".coeffs[" + std::to_string(i) + "]";
        const auto& c = coeffs[i];
        const int k = detail::small_integer(detail::field(c, "k", at), at + ".k");
        const auto jj = detail::integer(detail::field(c, "j", at), at + ".j");
        const Frequency f = detail::wrap(at, [&] { return Frequency(k, jj); });
        if (f.k > n) detail::fail(at, "frequency beyond the resolution");
        const std::size_t m = static_cast<std::size_t>(f.j) << (n - f.k);
        if (seen[m]) detail::fail(at, "duplicate frequency");
        seen[m] = true;
        s[m] = Complex{detail::number(detail::field(c, "re", at), at + ".re"),
                       detail::number(detail::field(c, "im", at), at + ".im")};
    }
    return s;
}

// ---------------------------------------------------------------------------
// Trees: {"type": "geometric", "alpha": a, "depth": N} or {"type": "explicit", "r": [[r00], [r10, r11], ...]}

struct TreeConfig {
    ResistanceProfile profile;
    std::optional<int> depth;  // required for explicit trees, optional for geometric
};

inline Json to_json(const TreeConfig& c) {
    if (c.profile.is_geometric()) {
        Json j{{"type", "geometric"}, {"alpha", c.profile.alpha()}};
        if (c.depth) j["depth"] = *c.depth;
        return j;
    }
    return Json{{"type", "explicit"}, {"r", c.profile.explicit_data()}};
}

inline TreeConfig tree_config_from_json(const Json& j, const std::string& where = "$") {
    const auto& type = detail::field(j, "type", where);
    if (!type.is_string()) detail::fail(where + ".type", "expected a string");
    const auto t = type.get<std::string>();
    if (t == "geometric") {
        const double a = detail::number(detail::field(j, "alpha", where), where + ".alpha");
        std::optional<int> depth;
        if (j.contains("depth")) depth = detail::small_integer(j["depth"], where + ".depth");
        return {detail::wrap(where, [&] { return ResistanceProfile::geometric(a); }), depth};
    }
    if (t == "explicit") {
        const auto& r = detail::array(detail::field(j, "r", where), where + ".r");
        std::vector<std::vector<double>> levels;
        for (std::size_t n = 0; n < r.size(); ++n) {
            const std::string at = where + ".r[" + std::to_string(n) + "]";
            const auto& row = detail::array(r[n], at);
            std::vector<double> level;
            for (std::size_t k = 0; k < row.size(); ++k) level.push_back(detail::number(row[k], at + "[" + std::to_string(k) + "]"));
            levels.push_back(std::move(level));
        }
        auto profile = detail::wrap(where, [&] { return ResistanceProfile::explicit_profile(std::move(levels)); });
        auto depth = profile.depth();
        return {std::move(profile), depth};
    }
    detail::fail(where + ".type", "expected \"geometric\" or \"explicit\"");
}

// TreeField: {"depth": N, "levels": [[p00], [p10, p11], ...]}

inline Json to_json(const TreeField& tf) {
    Json levels = Json::array();
    for (int n = 0; n <= tf.depth(); ++n) {
        Json row = Json::array();
        for (double v : tf.level(n)) {
            detail::require_finite(v);
            row.push_back(v);
        }
        levels.push_back(std::move(row));
    }
    return Json{{"depth", tf.depth()}, {"levels", std::move(levels)}};
}

inline TreeField tree_field_from_json(const Json& j, const std::string& where = "$") {
    const int depth = detail::small_integer(detail::field(j, "depth", where), where + ".depth");
    const auto& levels = detail::array(detail::field(j, "levels", where), where + ".levels");
    if (levels.size() != static_cast<std::size_t>(depth) + 1)
        detail::fail(where + ".levels", "expected depth + 1 levels");
    TreeField tf = detail::wrap(where, [&] { return TreeField(depth); });
    for (int n = 0; n <= depth; ++n) {
        const std::string at = where + ".levels[" + std::to_string(n) + "]";
        const auto& row = detail::array(levels[n], at);
        if (row.size() != (std::size_t{1} << n)) detail::fail(at, "expected 2^" + std::to_string(n) + " values");
        for (std::size_t k = 0; k < row.size(); ++k) tf(n, k) = detail::number(row[k], at + "[" + std::to_string(k) + "]");
    }
    return tf;
}

// GridFunction: {"d": d, "m": m, "values": [...]}, row-major

inline Json to_json(const GridFunction& g) {
    Json values = Json::array();
    for (double v : g.values()) {
        detail::require_finite(v);
        values.push_back(v);
    }
    return Json{{"d", g.dimension()}, {"m", g.level()}, {"values", std::move(values)}};
}

inline GridFunction grid_function_from_json(const Json& j, const std::string& where = "$") {
    const int d = detail::small_integer(detail::field(j, "d", where), where + ".d");
    const int m = detail::small_integer(detail::field(j, "m", where), where + ".m");
    const auto& vals = detail::array(detail::field(j, "values", where), where + ".values");
    std::vector<double> v;
    v.reserve(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) v.push_back(detail::number(vals[i], where + ".values[" + std::to_string(i) + "]"));
    return detail::wrap(where, [&] { return GridFunction(d, m, std::move(v)); });
}

// ---------------------------------------------------------------------------
// Reports (write-only)

inline Json to_json(const RatioRange& r) { return Json{{"ratio_min", r.min}, {"ratio_max", r.max}}; }

inline Json ratio_family(const EquivalenceReport& rep, RatioRange EquivalenceReport::*whole,
                         RatioRange ResolutionRatios::*part) {
    Json j = to_json(rep.*whole);
    Json per = Json::array();
    for (const auto& r : rep.per_resolution) {
        Json e = to_json(r.*part);
        e["resolution"] = r.resolution;
        e["samples"] = r.samples;
        per.push_back(std::move(e));
    }
    j["per_resolution"] = std::move(per);
    return j;
}

inline Json to_json(const EquivalenceReport& rep) {
    return Json{{"s", rep.s},
                {"hs_over_as", ratio_family(rep, &EquivalenceReport::hs_over_as, &ResolutionRatios::hs_over_as)},
                {"hs_over_integral",
                 ratio_family(rep, &EquivalenceReport::hs_over_integral, &ResolutionRatios::hs_over_integral)}};
}

inline Json to_json(const ContinuityReport& r) {
    return Json{{"alpha", r.alpha},
                {"beta", r.beta},
                {"s", r.s},
                {"symbol_sup", r.symbol_sup},
                {"symbol_bound", r.symbol_bound},
                {"riesz_sup", r.riesz_sup},
                {"riesz_bound", r.riesz_bound},
                {"sample_ratio_max", r.sample_ratio_max},
                {"constant_flux_ratio", r.constant_flux_ratio},
                {"global_resistance", r.global_resistance},
                {"unit_root_resistance", r.unit_root_resistance},
                {"bounded", r.bounded}};
}

inline Json to_json(const ConditionReport& c) {
    return Json{{"condition", c.condition}, {"admissible", c.admissible}, {"envelope_alpha", c.envelope_alpha},
                {"threshold", c.threshold}, {"margin", c.margin},         {"partial_sum", c.partial_sum}};
}

inline Json error_json(const std::string& kind, const std::string& message) {
    return Json{{"error", {{"kind", kind}, {"message", message}}}};
}

// ---------------------------------------------------------------------------
// CSV: trace convergence, columns n,l2_increment,hs_increment,bound

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline constexpr const char* kTraceCsvHeader = "n,l2_increment,hs_increment,bound";

inline std::string trace_csv(const TraceReport& rep) {
    std::string out = std::string(kTraceCsvHeader) + "\n";
    for (const auto& inc : rep.increments)
        out += std::to_string(inc.n) + "," + format_double(inc.l2_increment) + "," + format_double(inc.hs_increment) +
               "," + format_double(inc.bound) + "\n";
    return out;
}

struct TraceCsvRow {
    int n;
    double l2_increment;
    double hs_increment;
    double bound;
    friend bool operator==(const TraceCsvRow&, const TraceCsvRow&) = default;
};

inline std::vector<TraceCsvRow> parse_trace_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kTraceCsvHeader) throw SchemaError("trace csv: bad header");
    std::vector<TraceCsvRow> rows;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
        if (cells.size() != 4) throw SchemaError("trace csv: line " + std::to_string(lineno) + ": expected 4 columns");
        auto num = [&](const std::string& c) {
            char* end = nullptr;
            errno = 0;
            const double v = std::strtod(c.c_str(), &end);
            if (end == c.c_str() || *end != '\0' || errno == ERANGE)
                throw SchemaError("trace csv: line " + std::to_string(lineno) + ": bad number \"" + c + "\"");
            return v;
        };
        rows.push_back({static_cast<int>(num(cells[0])), num(cells[1]), num(cells[2]), num(cells[3])});
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Files

inline std::string read_text(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Json parse_json(const std::string& text, const std::string& origin = "input") {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw SchemaError(origin + ": invalid JSON: " + e.what());
    }
}

inline Json read_json(const std::filesystem::path& p) { return parse_json(read_text(p), p.string()); }

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

/// Writes through a temporary file in the same directory and renames it into place.
inline void write_text_atomic(const std::filesystem::path& p, const std::string& text) {
    const auto dir = p.has_parent_path() ? p.parent_path() : std::filesystem::path(".");
    std::filesystem::create_directories(dir);
    const auto tmp = dir / ("." + p.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << text;
        out.flush();
        if (!out) throw std::runtime_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, p);
}

inline void write_json(const std::filesystem::path& p, const Json& j) { write_text_atomic(p, dump(j)); }

}  // namespace twoadic::io
