#pragma once

// Two-particle exchange amplitudes in the relative (punctured) plane:
// distinguishable exchanges, the two-branch identical-particle combination
// rule, and the discretized identical-particle exchange in which the
// "opposite" transitions are damped by the (1 - i delta) hbar regulator.

#include "topamp/errors.hpp"
#include "topamp/geometry.hpp"
#include "topamp/propagator.hpp"
#include "topamp/representations.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

namespace topamp {

struct TwoParticleConfig {
    Point r_a;
    Point r_b;
};

struct RelativeState {
    Point center_of_mass;
    Point relative;
};

inline RelativeState to_com_rel(const TwoParticleConfig& c) {
    if (c.r_a == c.r_b) throw Error(Errc::coincidence, "particles coincide at " + to_string(c.r_a));
    return {0.5 * (c.r_a + c.r_b), c.r_b - c.r_a};
}

inline TwoParticleConfig from_com_rel(const RelativeState& s) {
    if (s.relative == Point{}) throw Error(Errc::coincidence, "relative coordinate is zero");
    return {s.center_of_mass - 0.5 * s.relative, s.center_of_mass + 0.5 * s.relative};
}

/// The "real" half of the relative plane, {y > 0} U {y = 0, x > 0}. Exactly one
/// of r and -r belongs to it.
inline bool in_real_subspace(Point r) {
    if (r == Point{}) throw Error(Errc::puncture_collision, "the origin is excluded");
    return r.y > 0.0 || (r.y == 0.0 && r.x > 0.0);
}

enum class Statistics : int { boson = 1, fermion = -1 };

constexpr int sign(Statistics s) noexcept { return static_cast<int>(s); }

inline std::string_view to_string(Statistics s) noexcept { return s == Statistics::boson ? "boson" : "fermion"; }

/// alpha_II + alpha_X for bosons, alpha_II - alpha_X for fermions.
inline Amplitude combine_identical(Amplitude original, Amplitude permuted, Statistics s) noexcept {
    return original + static_cast<double>(sign(s)) * permuted;
}

/// Two particles on a line with the incidence point removed can never swap,
/// so the permuted amplitude vanishes and the original passes through.
inline Amplitude one_d_exchange(Amplitude original) noexcept { return original; }

/// chi of the k-fold counter-clockwise half-circle exchange starting at `start`
/// (clockwise for k < 0). Under the symmetric-mesh representation this is
/// exp(i k phi / 2) for every start point.
inline Amplitude distinguishable_exchange_amplitude(const GroupoidRep& rep, long k, Point start = {1.0, 0.0}) {
    const Point end = (k % 2 == 0) ? start : -start;
    const HomotopyClass exchange =
        HomotopyClass::make(start, end, std::numbers::pi * static_cast<double>(k));
    return eval_groupoid_rep(rep, exchange).value();
}

struct ExchangeConfig {
    double rho = 1.0;         // orbit radius
    double total_time = 1e6;  // T
    std::int64_t steps = 4096;  // N
    double delta = 1e-3;      // regulator
    long half_turns = 1;      // k
    double mass = 1.0;
    double hbar = 1.0;
    Statistics statistics = Statistics::boson;
    double loop_phase = 0.0;  // phi
    double start_angle = 0.0;

    double dt() const noexcept { return total_time / static_cast<double>(steps); }
    double angular_velocity() const noexcept {
        return std::numbers::pi * static_cast<double>(half_turns) / total_time;
    }

    void validate() const {
        if (!(rho > 0.0)) throw Error(Errc::invalid_argument, "rho must be positive");
        if (!(total_time > 0.0)) throw Error(Errc::nonpositive_time, "T must be positive");
        if (steps < 2) throw Error(Errc::invalid_argument, "N must be at least 2");
        if (!(delta >= 0.0)) throw Error(Errc::invalid_argument, "delta must be non-negative");
        if (half_turns == 0) throw Error(Errc::invalid_argument, "an exchange needs |k| >= 1");
        if (std::abs(half_turns) >= steps)
            throw Error(Errc::invalid_argument, "N must exceed |k| so every step subtends less than pi");
        if (!(mass > 0.0) || !(hbar > 0.0)) throw Error(Errc::invalid_argument, "m and hbar must be positive");
        if (!std::isfinite(loop_phase) || !std::isfinite(start_angle))
            throw Error(Errc::invalid_argument, "non-finite phi or start angle");
    }
};

/// Position after j of N steps of the circular exchange. Positions that lie a
/// whole number of half turns from the start are snapped to +-start exactly, so
/// the demarcation test sees the true side of the line.
inline Point circular_position(const ExchangeConfig& cfg, std::int64_t j) {
    const Point start = from_polar(cfg.rho, cfg.start_angle);
    const std::int64_t swept = j * cfg.half_turns;
    if (swept % cfg.steps == 0) return ((swept / cfg.steps) % 2 == 0) ? start : -start;
    const double angle =
        cfg.start_angle + std::numbers::pi * static_cast<double>(swept) / static_cast<double>(cfg.steps);
    return from_polar(cfg.rho, angle);
}

inline std::vector<Point> circular_exchange_positions(const ExchangeConfig& cfg) {
    cfg.validate();
    std::vector<Point> out;
    out.reserve(static_cast<std::size_t>(cfg.steps) + 1);
    for (std::int64_t j = 0; j <= cfg.steps; ++j) out.push_back(circular_position(cfg, j));
    return out;
}

struct StepAmplitudes {
    Amplitude direct;
    Amplitude opposite;
    bool crossing = false;
};

namespace detail {

/// exp(i S / ((1 - i delta) hbar)) to first order in delta: exp(i S (1 + i delta) / hbar).
inline Amplitude regulated_phase(double action, double hbar, double delta) {
    return std::exp(Amplitude(-delta * action / hbar, action / hbar));
}

inline StepAmplitudes step_amplitudes(const GroupoidRep& rep, Point from, Point to, double direct_action,
                                      double opposite_action, double hbar, double delta) {
    const HomotopyClass direct_class = homotopy_class(PolyPath({from, to}));
    const HomotopyClass opposite_class = homotopy_class(PolyPath({from, -to}));
    return {
        eval_groupoid_rep(rep, direct_class).value() * regulated_phase(direct_action, hbar, delta),
        eval_groupoid_rep(rep, opposite_class).value() * regulated_phase(opposite_action, hbar, delta),
        in_real_subspace(from) != in_real_subspace(to),
    };
}

} // namespace detail

/// Step n (1-based) of the circular exchange: the direct chord r_{n-1} -> r_n with
/// action m rho^2 thetadot^2 dt / 2, and the opposite chord r_{n-1} -> -r_n with
/// action 2 m rho^2 / dt, both under the regulated hbar. `crossing` marks the
/// steps whose direct chord moves between the real and inverted half planes.
inline StepAmplitudes circular_exchange_step(const ExchangeConfig& cfg, std::int64_t n, const GroupoidRep& rep) {
    cfg.validate();
    if (n < 1 || n > cfg.steps)
        throw Error(Errc::invalid_step, "step " + std::to_string(n) + " outside [1, " + std::to_string(cfg.steps) + "]");
    const double dt = cfg.dt();
    const double w = cfg.angular_velocity();
    const double direct_action = 0.5 * cfg.mass * cfg.rho * cfg.rho * w * w * dt;
    const double opposite_action = 2.0 * cfg.mass * cfg.rho * cfg.rho / dt;
    return detail::step_amplitudes(rep, circular_position(cfg, n - 1), circular_position(cfg, n), direct_action,
                                   opposite_action, cfg.hbar, cfg.delta);
}

/// Product of step factors kept as (unit phase, log modulus) so that long
/// products neither underflow nor overflow.
struct ExchangeAmplitude {
    Amplitude phase{1.0, 0.0};
    double log_modulus = 0.0;
    double free_action = 0.0;  // sum of unregulated direct actions
    int crossings = 0;

    Amplitude value() const { return std::exp(log_modulus) * phase; }
};

namespace detail {

class ExchangeProduct {
public:
    explicit ExchangeProduct(Statistics s) : sign_(static_cast<double>(sign(s))) {}

    void multiply(const StepAmplitudes& step, double direct_action) {
        // a crossing step swaps which transition counts as original
        const Amplitude factor = step.crossing ? step.opposite + sign_ * step.direct
                                               : step.direct + sign_ * step.opposite;
        const double mod = std::abs(factor);
        if (mod == 0.0) {
            result_.log_modulus = -std::numeric_limits<double>::infinity();
        } else {
            result_.log_modulus += std::log(mod);
            result_.phase *= factor / mod;
            result_.phase /= std::abs(result_.phase);
        }
        result_.free_action += direct_action;
        result_.crossings += step.crossing ? 1 : 0;
    }

    const ExchangeAmplitude& result() const noexcept { return result_; }

private:
    double sign_;
    ExchangeAmplitude result_;
};

} // namespace detail

/// Ordered product over n = 1..N of (A_dn +- A_on), with the order of the two
/// terms swapped on crossing steps.
inline ExchangeAmplitude identical_exchange_discretized(const ExchangeConfig& cfg, const GroupoidRep& rep) {
    cfg.validate();
    const double dt = cfg.dt();
    const double w = cfg.angular_velocity();
    const double direct_action = 0.5 * cfg.mass * cfg.rho * cfg.rho * w * w * dt;
    const double opposite_action = 2.0 * cfg.mass * cfg.rho * cfg.rho / dt;

    detail::ExchangeProduct product(cfg.statistics);
    Point from = circular_position(cfg, 0);
    for (std::int64_t n = 1; n <= cfg.steps; ++n) {
        const Point to = circular_position(cfg, n);
        product.multiply(
            detail::step_amplitudes(rep, from, to, direct_action, opposite_action, cfg.hbar, cfg.delta),
            direct_action);
        from = to;
    }
    return product.result();
}

/// exp(i k phi_eff) with phi_eff = phi/2 for bosons and phi/2 + pi for fermions:
/// the quasi-static limit of the identical exchange.
inline Amplitude exchange_target(const ExchangeConfig& cfg) noexcept {
    const double phi_eff = 0.5 * cfg.loop_phase + (cfg.statistics == Statistics::fermion ? std::numbers::pi : 0.0);
    return std::polar(1.0, static_cast<double>(cfg.half_turns) * phi_eff);
}

/// exp(i m pi^2 rho^2 k^2 / (2 hbar T)), the factor that the quasi-static limit removes.
inline Amplitude dynamical_factor(const ExchangeConfig& cfg) noexcept {
    const double k = static_cast<double>(cfg.half_turns);
    return std::polar(1.0, cfg.mass * std::numbers::pi * std::numbers::pi * cfg.rho * cfg.rho * k * k /
                               (2.0 * cfg.hbar * cfg.total_time));
}

inline double deviation_from_target(const ExchangeAmplitude& a, Amplitude target) noexcept {
    return std::abs(a.phase - target);
}

struct TimedPoint {
    Point r;
    double t = 0.0;
};

struct GeneralExchangePath {
    std::vector<TimedPoint> samples;
    double rho_min = 0.0;
};

/// Validates the path against `half_turns` and returns the total swept angle.
inline double validate_exchange_path(const GeneralExchangePath& path, long half_turns) {
    if (path.samples.size() < 2) throw Error(Errc::invalid_argument, "a path needs at least two samples");
    if (!(path.rho_min > 0.0)) throw Error(Errc::invalid_argument, "rho_min must be positive");
    if (half_turns == 0) throw Error(Errc::invalid_argument, "an exchange needs |k| >= 1");
    const double direction = half_turns > 0 ? 1.0 : -1.0;
    double swept = 0.0;
    for (std::size_t i = 0; i < path.samples.size(); ++i) {
        const TimedPoint& s = path.samples[i];
        if (!(s.r.norm() >= path.rho_min))
            throw Error(Errc::min_distance_violated, "sample " + std::to_string(i) + " is closer than rho_min");
        if (i == 0) continue;
        const TimedPoint& prev = path.samples[i - 1];
        if (!(s.t > prev.t)) throw Error(Errc::invalid_argument, "sample times must increase strictly");
        const double step = signed_angle(prev.r, s.r);
        if (!(step * direction > 0.0))
            throw Error(Errc::zero_angular_velocity,
                        "polar angle does not advance in the exchange direction at sample " + std::to_string(i));
        swept += step;
    }
    if (std::abs(swept - std::numbers::pi * static_cast<double>(half_turns)) > kAngleTolerance)
        throw Error(Errc::invalid_argument, "path does not sweep exactly k half turns");
    return swept;
}

/// Exchange along sampled points r_n at times t_n. Per step the direct action
/// is m (drho^2 + rho_n^2 dtheta^2) / (2 dt) and the opposite action
/// 2 m rho_n^2 / dt; the product is formed as in the circular case. From cfg
/// only half_turns, statistics, delta, mass and hbar are used.
inline ExchangeAmplitude general_path_exchange(const GeneralExchangePath& path, const ExchangeConfig& cfg,
                                               const GroupoidRep& rep) {
    validate_exchange_path(path, cfg.half_turns);
    if (!(cfg.delta >= 0.0) || !(cfg.mass > 0.0) || !(cfg.hbar > 0.0))
        throw Error(Errc::invalid_argument, "invalid delta, m or hbar");
    detail::ExchangeProduct product(cfg.statistics);
    for (std::size_t i = 1; i < path.samples.size(); ++i) {
        const Point from = path.samples[i - 1].r;
        const Point to = path.samples[i].r;
        const double dt = path.samples[i].t - path.samples[i - 1].t;
        const double rho = from.norm();
        const double drho = to.norm() - rho;
        const double dtheta = signed_angle(from, to);
        const double direct_action = 0.5 * cfg.mass * (drho * drho + rho * rho * dtheta * dtheta) / dt;
        const double opposite_action = 2.0 * cfg.mass * rho * rho / dt;
        product.multiply(
            detail::step_amplitudes(rep, from, to, direct_action, opposite_action, cfg.hbar, cfg.delta),
            direct_action);
    }
    return product.result();
}

/// The circular orbit of `cfg` as a sampled path with t_n = n T / N.
inline GeneralExchangePath circular_exchange_path(const ExchangeConfig& cfg) {
    GeneralExchangePath path{{}, cfg.rho};
    const auto positions = circular_exchange_positions(cfg);
    path.samples.reserve(positions.size());
    for (std::size_t j = 0; j < positions.size(); ++j) {
        path.samples.push_back({positions[j], cfg.total_time * static_cast<double>(j) / static_cast<double>(cfg.steps)});
        // sampled radii can round a few ulps below rho
        path.rho_min = std::min(path.rho_min, positions[j].norm());
    }
    return path;
}

struct ConvergenceRow {
    std::int64_t steps;
    double delta;
    double deviation;
};

/// Deviation of the unit-modulus projection from exp(i k phi_eff) over an
/// (N, delta) grid; delta is the outer loop.
inline std::vector<ConvergenceRow> convergence_table(const ExchangeConfig& base, std::span<const std::int64_t> steps,
                                                     std::span<const double> deltas) {
    if (steps.empty() || deltas.empty()) throw Error(Errc::invalid_argument, "grids must be non-empty");
    const GroupoidRep rep = symmetric_rep(base.loop_phase);
    std::vector<ConvergenceRow> rows;
    rows.reserve(steps.size() * deltas.size());
    for (double delta : deltas) {
        for (std::int64_t n : steps) {
            ExchangeConfig cfg = base;
            cfg.steps = n;
            cfg.delta = delta;
            const ExchangeAmplitude a = identical_exchange_discretized(cfg, rep);
            rows.push_back({n, delta, deviation_from_target(a, exchange_target(cfg))});
        }
    }
    return rows;
}

} // namespace topamp
