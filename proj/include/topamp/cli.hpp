#pragma once

// Command runner behind the `topamp` executable. Every command reads one JSON
// config and writes one JSON record or CSV grid; see docs/configs.md.

#include "topamp/anyons.hpp"
#include "topamp/errors.hpp"
#include "topamp/geometry.hpp"
#include "topamp/groupoid.hpp"
#include "topamp/propagator.hpp"
#include "topamp/representations.hpp"

#include <json.hpp>

#include <array>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace topamp::cli {

using nlohmann::json;

inline constexpr std::array<std::string_view, 8> kCommands{
    "winding", "laws", "rep-eval", "rep-compat", "ab-sweep", "exchange", "exchange-sweep", "one-d"};

struct RunConfig {
    std::string command;
    std::string input_path;
    std::optional<std::string> output_path;  // stdout when empty
    std::uint64_t seed = 0;
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int validation = 1;
inline constexpr int io = 2;
} // namespace exit_code

/// I/O failures map to exit code 2; everything else that goes wrong is a
/// validation failure.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Rounds to 12 significant digits so that JSON output is stable and diffable.
inline double round12(double v) {
    if (!std::isfinite(v)) return v;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

namespace detail {

inline const json& require(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw Error(Errc::invalid_argument, std::string("missing required key '") + key + "'");
    return j.at(key);
}

inline double number(const json& j, const char* key) {
    const json& v = require(j, key);
    if (!v.is_number()) throw Error(Errc::invalid_argument, std::string("'") + key + "' must be a number");
    return v.get<double>();
}

inline double number_or(const json& j, const char* key, double fallback) {
    return j.contains(key) ? number(j, key) : fallback;
}

inline std::int64_t integer(const json& j, const char* key) {
    const json& v = require(j, key);
    if (!v.is_number_integer()) throw Error(Errc::invalid_argument, std::string("'") + key + "' must be an integer");
    return v.get<std::int64_t>();
}

inline std::int64_t integer_or(const json& j, const char* key, std::int64_t fallback) {
    return j.contains(key) ? integer(j, key) : fallback;
}

inline std::string string_or(const json& j, const char* key, std::string fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_string()) throw Error(Errc::invalid_argument, std::string("'") + key + "' must be a string");
    return j.at(key).get<std::string>();
}

inline Point point(const json& v, const char* what) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        throw Error(Errc::invalid_argument, std::string(what) + " must be an [x, y] pair");
    return {v[0].get<double>(), v[1].get<double>()};
}

inline Point point_or(const json& j, const char* key, Point fallback) {
    return j.contains(key) ? point(j.at(key), key) : fallback;
}

inline json point_json(Point p) { return json::array({round12(p.x), round12(p.y)}); }

inline PolyPath path(const json& v) {
    if (!v.is_array() || v.empty()) throw Error(Errc::invalid_argument, "path must be a non-empty array of [x, y]");
    std::vector<Point> pts;
    pts.reserve(v.size());
    for (const auto& p : v) pts.push_back(point(p, "path vertex"));
    return PolyPath(std::move(pts));
}

/// Either an explicit list of numbers or {"start", "stop", "count"} (inclusive ends).
inline std::vector<double> grid(const json& j, const char* key) {
    const json& v = require(j, key);
    std::vector<double> out;
    if (v.is_array()) {
        for (const auto& x : v) {
            if (!x.is_number()) throw Error(Errc::invalid_argument, std::string("'") + key + "' entries must be numbers");
            out.push_back(x.get<double>());
        }
    } else if (v.is_object()) {
        const double start = number(v, "start");
        const double stop = number(v, "stop");
        const std::int64_t count = integer(v, "count");
        if (count < 1) throw Error(Errc::invalid_argument, std::string("'") + key + "' count must be >= 1");
        for (std::int64_t i = 0; i < count; ++i)
            out.push_back(count == 1 ? start
                                     : start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1));
    } else {
        throw Error(Errc::invalid_argument, std::string("'") + key + "' must be a list or a range object");
    }
    if (out.empty()) throw Error(Errc::invalid_argument, std::string("'") + key + "' must be non-empty");
    return out;
}

inline Statistics statistics(const json& j) {
    const std::string s = string_or(j, "statistics", "boson");
    if (s == "boson") return Statistics::boson;
    if (s == "fermion") return Statistics::fermion;
    throw Error(Errc::invalid_argument, "statistics must be \"boson\" or \"fermion\"");
}

inline ExchangeConfig exchange_config(const json& j) {
    ExchangeConfig cfg;
    cfg.rho = number(j, "rho");
    cfg.total_time = number(j, "T");
    cfg.steps = integer(j, "N");
    cfg.delta = number(j, "delta");
    cfg.half_turns = static_cast<long>(integer(j, "k"));
    cfg.mass = number(j, "m");
    cfg.hbar = number(j, "hbar");
    require(j, "statistics");
    cfg.statistics = statistics(j);
    cfg.loop_phase = number(j, "phi");
    cfg.start_angle = number_or(j, "start_angle", 0.0);
    cfg.validate();
    return cfg;
}

/// Smooth per-point phase field with seed-derived coefficients, used to build
/// gauge-equivalent weight choices from the command line.
inline std::function<double(Point)> random_phase_field(double amplitude, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    const std::array<double, 4> c{coef(rng), coef(rng), coef(rng), coef(rng)};
    return [amplitude, c](Point x) {
        return amplitude * (c[0] * x.x + c[1] * x.y + c[2] * x.x * x.y + c[3] * polar_angle(x));
    };
}

/// {"phi", "mesh": "spiral"|"spiral_offset", "segments", "extra_lower_turns",
///  "weights": "symmetric"|"trivial", "gauge_perturbation"}
inline GroupoidRep representation(const json& j, std::uint64_t seed) {
    const double phi = number(j, "phi");
    const std::string mesh_kind = string_or(j, "mesh", "spiral");
    const auto segments = integer_or(j, "segments", static_cast<std::int64_t>(kDefaultMeshSegments));
    if (segments < 8) throw Error(Errc::invalid_argument, "segments must be >= 8");
    long extra = 0;
    if (mesh_kind == "spiral_offset") extra = static_cast<long>(integer_or(j, "extra_lower_turns", 1));
    else if (mesh_kind != "spiral") throw Error(Errc::invalid_argument, "mesh must be \"spiral\" or \"spiral_offset\"");
    Mesh mesh = spiral_mesh(static_cast<std::size_t>(segments), extra);

    const std::string weights_kind = string_or(j, "weights", "symmetric");
    MeshWeights weights = MeshWeights::trivial();
    if (weights_kind == "symmetric") weights = symmetric_weights(phi);
    else if (weights_kind != "trivial") throw Error(Errc::invalid_argument, "weights must be \"symmetric\" or \"trivial\"");

    const double perturbation = number_or(j, "gauge_perturbation", 0.0);
    if (perturbation != 0.0) weights = regauge(std::move(weights), random_phase_field(perturbation, seed), mesh.base());
    return GroupoidRep(GroupRep1D{phi}, std::move(mesh), std::move(weights));
}

inline HomotopyClass homotopy_class_json(const json& v) {
    if (v.is_object() && v.contains("path")) return homotopy_class(path(v.at("path")));
    return HomotopyClass::make(point(require(v, "source"), "source"), point(require(v, "target"), "target"),
                               number(v, "winding"));
}

inline json class_json(const HomotopyClass& c) {
    return {{"source", point_json(c.source())}, {"target", point_json(c.target())}, {"winding", round12(c.winding())}};
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

// --- commands ------------------------------------------------------------

inline std::string cmd_winding(const json& in) {
    const PolyPath p = path(require(in, "path"));
    const double w = winding_angle(p);
    json out{{"winding_angle", round12(w)}, {"source", point_json(p.source())}, {"target", point_json(p.target())},
             {"closed", p.closed()}};
    if (p.closed()) out["turns"] = LoopClass::from_class(homotopy_class(p)).turns;
    return dump(out);
}

inline std::string cmd_laws(const json& in, std::uint64_t seed) {
    const std::int64_t n = integer(in, "sample_count");
    if (n < 0) throw Error(Errc::invalid_argument, "sample_count must be non-negative");
    const LawReport report = verify_groupoid_axioms(static_cast<std::size_t>(n), seed);
    json failures = json::array();
    for (const auto& f : report.failures) {
        json w = json::array();
        for (const auto& c : f.witnesses) w.push_back(class_json(c));
        failures.push_back({{"law", f.law}, {"witnesses", w}});
    }
    return dump({{"samples_tested", report.samples_tested}, {"seed", seed}, {"passed", report.passed()},
                 {"failures", failures}});
}

inline std::string cmd_rep_eval(const json& in, std::uint64_t seed) {
    const GroupoidRep rep = representation(require(in, "representation"), seed);
    const json& classes = require(in, "classes");
    if (!classes.is_array()) throw Error(Errc::invalid_argument, "'classes' must be an array");
    json results = json::array();
    for (const auto& c : classes) {
        const HomotopyClass q = homotopy_class_json(c);
        const UnitPhase chi = eval_groupoid_rep(rep, q);
        results.push_back({{"class", class_json(q)},
                           {"re", round12(chi.value().real())},
                           {"im", round12(chi.value().imag())},
                           {"angle", round12(chi.angle())}});
    }
    return dump({{"results", results}});
}

inline std::string cmd_rep_compat(const json& in, std::uint64_t seed) {
    const GroupoidRep rep1 = representation(require(in, "rep1"), seed);
    const GroupoidRep rep2 = representation(require(in, "rep2"), seed + 1);
    const Point a = point(require(in, "a"), "a");
    const Point b = point(require(in, "b"), "b");
    const auto samples = integer_or(in, "class_samples", 7);
    if (samples < 1) throw Error(Errc::invalid_argument, "class_samples must be >= 1");
    const Compatibility c = compatibility(rep1, rep2, a, b, static_cast<std::size_t>(samples));
    return dump({{"compatible", c.compatible},
                 {"ratio_re", round12(c.ratio.value().real())},
                 {"ratio_im", round12(c.ratio.value().imag())},
                 {"max_spread", round12(c.max_spread)}});
}

inline ABConfig ab_config(const json& in) {
    ABConfig cfg;
    cfg.source = point_or(in, "source", cfg.source);
    cfg.slit_a = point_or(in, "slit_a", cfg.slit_a);
    cfg.slit_b = point_or(in, "slit_b", cfg.slit_b);
    cfg.screen_x = number_or(in, "screen_x", cfg.screen_x);
    cfg.mass = number_or(in, "mass", cfg.mass);
    cfg.time_leg = number_or(in, "time_leg", cfg.time_leg);
    cfg.hbar = number_or(in, "hbar", cfg.hbar);
    cfg.validate();
    return cfg;
}

inline std::string cmd_ab_sweep(const json& in) {
    const ABConfig cfg = ab_config(in);
    const auto ys = grid(in, "screen_y");
    const auto fluxes = grid(in, "flux_ratio");
    std::ostringstream os;
    write_sweep_csv(os, ab_intensity_sweep(cfg, ys, fluxes));
    return os.str();
}

inline std::string cmd_exchange(const json& in) {
    const ExchangeConfig cfg = exchange_config(in);
    const GroupoidRep rep = symmetric_rep(cfg.loop_phase);
    const ExchangeAmplitude a = identical_exchange_discretized(cfg, rep);
    const Amplitude target = exchange_target(cfg);
    return dump({{"amplitude_re", round12(a.phase.real())},
                 {"amplitude_im", round12(a.phase.imag())},
                 {"log_modulus", round12(a.log_modulus)},
                 {"target_re", round12(target.real())},
                 {"target_im", round12(target.imag())},
                 {"deviation", round12(deviation_from_target(a, target))},
                 {"crossings", a.crossings}});
}

inline void write_convergence_csv(std::ostream& os, std::span<const ConvergenceRow> rows) {
    os << "N,delta,deviation\n";
    for (const auto& r : rows) os << r.steps << ',' << format_sci12(r.delta) << ',' << format_sci12(r.deviation) << '\n';
}

/// CSV of (N, delta, deviation from exp(i k phi_eff)) over the given grids.
inline std::string emit_convergence_table(const ExchangeConfig& base, std::span<const std::int64_t> steps,
                                          std::span<const double> deltas) {
    std::ostringstream os;
    write_convergence_csv(os, convergence_table(base, steps, deltas));
    return os.str();
}

inline std::string cmd_exchange_sweep(const json& in) {
    const ExchangeConfig base = exchange_config(require(in, "base"));
    const json& ns = require(in, "N_values");
    if (!ns.is_array() || ns.empty()) throw Error(Errc::invalid_argument, "'N_values' must be a non-empty array");
    std::vector<std::int64_t> steps;
    for (const auto& n : ns) {
        if (!n.is_number_integer()) throw Error(Errc::invalid_argument, "'N_values' entries must be integers");
        ExchangeConfig probe = base;
        probe.steps = n.get<std::int64_t>();
        probe.validate();
        steps.push_back(probe.steps);
    }
    const auto deltas = grid(in, "delta_values");
    for (double d : deltas)
        if (!(d >= 0.0)) throw Error(Errc::invalid_argument, "'delta_values' must be non-negative");
    return emit_convergence_table(base, steps, deltas);
}

inline std::string cmd_one_d(const json& in) {
    const Point alpha = point(require(in, "alpha"), "alpha");
    const Amplitude original(alpha.x, alpha.y);
    const Statistics s = statistics(in);
    const Amplitude a = one_d_exchange(original);
    const Amplitude combined = combine_identical(original, Amplitude{}, s);
    return dump({{"amplitude_re", round12(a.real())},
                 {"amplitude_im", round12(a.imag())},
                 {"combined_re", round12(combined.real())},
                 {"combined_im", round12(combined.imag())},
                 {"statistics", std::string(to_string(s))}});
}

inline json read_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << f.rdbuf();
    if (f.bad()) throw IoError("cannot read config file '" + path + "'");
    try {
        return json::parse(buf.str());
    } catch (const json::parse_error& e) {
        throw Error(Errc::invalid_argument, std::string("config is not valid JSON: ") + e.what());
    }
}

/// Writes through a temporary file and renames, so a failed run never leaves
/// a partial output behind.
inline void write_output(const std::optional<std::string>& path, const std::string& content) {
    if (!path) {
        std::cout << content;
        std::cout.flush();
        if (!std::cout) throw IoError("cannot write to stdout");
        return;
    }
    const std::filesystem::path target(*path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw IoError("cannot open output file '" + *path + "'");
        f << content;
        f.close();
        if (!f) throw IoError("cannot write output file '" + *path + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("cannot move output into place at '" + *path + "'");
    }
}

} // namespace detail

/// Produces the output text of one command from a parsed config.
inline std::string execute(std::string_view command, const json& in, std::uint64_t seed) {
    if (command == "winding") return detail::cmd_winding(in);
    if (command == "laws") return detail::cmd_laws(in, seed);
    if (command == "rep-eval") return detail::cmd_rep_eval(in, seed);
    if (command == "rep-compat") return detail::cmd_rep_compat(in, seed);
    if (command == "ab-sweep") return detail::cmd_ab_sweep(in);
    if (command == "exchange") return detail::cmd_exchange(in);
    if (command == "exchange-sweep") return detail::cmd_exchange_sweep(in);
    if (command == "one-d") return detail::cmd_one_d(in);
    throw Error(Errc::invalid_argument, "unknown command '" + std::string(command) + "'");
}

inline int run(const RunConfig& cfg, std::ostream& diag = std::cerr) {
    try {
        const json in = detail::read_json(cfg.input_path);
        const std::string out = execute(cfg.command, in, cfg.seed);
        detail::write_output(cfg.output_path, out);
        return exit_code::ok;
    } catch (const IoError& e) {
        diag << "topamp: " << e.what() << '\n';
        return exit_code::io;
    } catch (const Error& e) {
        diag << "topamp: " << e.what() << '\n';
        return exit_code::validation;
    } catch (const json::exception& e) {
        diag << "topamp: invalid config: " << e.what() << '\n';
        return exit_code::validation;
    }
}

} // namespace topamp::cli
