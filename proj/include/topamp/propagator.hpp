#pragma once

// Transition amplitudes assembled from per-homotopy-class partial amplitudes,
// and the Aharonov-Bohm two-slit experiment built on the free 2-D kernel.

#include "topamp/errors.hpp"
#include "topamp/geometry.hpp"
#include "topamp/representations.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace topamp {

using Amplitude = std::complex<double>;

inline bool is_finite(Amplitude a) noexcept { return std::isfinite(a.real()) && std::isfinite(a.imag()); }

/// Classical free-particle action m |x_f - x_i|^2 / (2 t).
inline double free_action(Point x_final, Point x_initial, double t, double mass) {
    if (!(t > 0.0)) throw Error(Errc::nonpositive_time, "propagation time must be positive");
    const Point d = x_final - x_initial;
    return mass * (d.x * d.x + d.y * d.y) / (2.0 * t);
}

/// K0 = m / (2 pi i hbar t) * exp(i m |x_f - x_i|^2 / (2 hbar t)).
inline Amplitude free_propagator_2d(Point x_final, Point x_initial, double t, double mass = 1.0,
                                    double hbar = 1.0) {
    const double action = free_action(x_final, x_initial, t, mass);
    const Amplitude prefactor = mass / (2.0 * std::numbers::pi * Amplitude(0.0, 1.0) * hbar * t);
    return prefactor * std::polar(1.0, action / hbar);
}

struct ABConfig {
    Point source{-5.0, 0.0};
    Point slit_a{0.0, 1.0};
    Point slit_b{0.0, -1.0};
    double screen_x = 5.0;
    double flux_ratio = 0.0;
    double mass = 1.0;
    double time_leg = 1.0;
    double hbar = 1.0;

    void validate() const {
        if (slit_a == slit_b) throw Error(Errc::invalid_argument, "slits must be distinct");
        if (!(time_leg > 0.0)) throw Error(Errc::nonpositive_time, "time_leg must be positive");
        if (!(mass > 0.0)) throw Error(Errc::invalid_argument, "mass must be positive");
        if (!(hbar > 0.0)) throw Error(Errc::invalid_argument, "hbar must be positive");
        if (!std::isfinite(screen_x) || !std::isfinite(flux_ratio))
            throw Error(Errc::invalid_argument, "non-finite screen_x or flux_ratio");
    }
};

/// exp(2 pi i f). Only the fractional part of f enters, which makes the
/// flux periodicity exact in floating point.
inline Amplitude flux_phase(double flux_ratio) noexcept {
    const double frac = flux_ratio - std::floor(flux_ratio);
    return std::polar(1.0, kTwoPi * frac);
}

struct SlitLegs {
    Amplitude through_a;
    Amplitude through_b;
};

/// Two-leg amplitudes source -> slit -> screen point, by the product rule.
inline SlitLegs slit_legs(const ABConfig& cfg, double screen_y) {
    const Point screen{cfg.screen_x, screen_y};
    auto leg = [&](Point slit) {
        return free_propagator_2d(screen, slit, cfg.time_leg, cfg.mass, cfg.hbar) *
               free_propagator_2d(slit, cfg.source, cfg.time_leg, cfg.mass, cfg.hbar);
    };
    return {leg(cfg.slit_a), leg(cfg.slit_b)};
}

/// K_A + exp(2 pi i flux_ratio) K_B; the unobservable overall phase of the
/// vector potential along A is dropped.
inline Amplitude ab_total_amplitude(const ABConfig& cfg, double screen_y) {
    cfg.validate();
    const SlitLegs legs = slit_legs(cfg, screen_y);
    return legs.through_a + flux_phase(cfg.flux_ratio) * legs.through_b;
}

struct IntensityRow {
    double flux_ratio;
    double screen_y;
    double intensity;
};

/// |amplitude|^2 over the (flux, y) grid in row-major order (flux outer).
inline std::vector<IntensityRow> ab_intensity_sweep(const ABConfig& cfg, std::span<const double> screen_ys,
                                                    std::span<const double> flux_ratios) {
    if (screen_ys.empty() || flux_ratios.empty())
        throw Error(Errc::invalid_argument, "sweep grids must be non-empty");
    cfg.validate();
    // legs do not depend on the flux, so they are computed once per screen point
    std::vector<SlitLegs> legs;
    legs.reserve(screen_ys.size());
    for (double y : screen_ys) legs.push_back(slit_legs(cfg, y));

    std::vector<IntensityRow> rows(flux_ratios.size() * screen_ys.size());
    for (std::size_t i = 0; i < flux_ratios.size(); ++i) {
        const Amplitude phase = flux_phase(flux_ratios[i]);
        for (std::size_t j = 0; j < screen_ys.size(); ++j) {
            const Amplitude total = legs[j].through_a + phase * legs[j].through_b;
            rows[i * screen_ys.size() + j] = {flux_ratios[i], screen_ys[j], std::norm(total)};
        }
    }
    return rows;
}

/// Formats with 12 significant digits in scientific notation.
inline std::string format_sci12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.11e", v);
    return buf;
}

inline void write_sweep_csv(std::ostream& os, std::span<const IntensityRow> rows) {
    os << "flux_ratio,screen_y,intensity\n";
    for (const auto& r : rows)
        os << format_sci12(r.flux_ratio) << ',' << format_sci12(r.screen_y) << ',' << format_sci12(r.intensity)
           << '\n';
}

/// Partial amplitudes K^{[q]}, one per homotopy class.
using ClassDecomposition = std::vector<std::pair<HomotopyClass, Amplitude>>;

/// Sum over classes of chi([q]) K^{[q]}.
inline Amplitude assemble_total(const ClassDecomposition& decomp, const GroupoidRep& rep) {
    Amplitude total{0.0, 0.0};
    if (decomp.empty()) return total;
    const Point source = decomp.front().first.source();
    const Point target = decomp.front().first.target();
    for (const auto& [cls, partial] : decomp) {
        if (cls.source() != source || cls.target() != target)
            throw Error(Errc::mixed_endpoints, "all classes in a decomposition must share their endpoints");
        total += eval_groupoid_rep(rep, cls).value() * partial;
    }
    return total;
}

/// The two direct classes of the two-slit setup: source -> slit -> screen point,
/// passing on either side of the solenoid at the origin, each carrying its
/// product-rule partial amplitude.
inline ClassDecomposition ab_class_decomposition(const ABConfig& cfg, double screen_y) {
    cfg.validate();
    const Point screen{cfg.screen_x, screen_y};
    const SlitLegs legs = slit_legs(cfg, screen_y);
    return {
        {homotopy_class(PolyPath({cfg.source, cfg.slit_a, screen})), legs.through_a},
        {homotopy_class(PolyPath({cfg.source, cfg.slit_b, screen})), legs.through_b},
    };
}

} // namespace topamp
