#pragma once

// Piecewise-linear paths in the once-punctured plane (puncture at the origin)
// and the homotopy invariants computed from them.

#include "topamp/errors.hpp"

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace topamp {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Minimum distance any vertex or segment must keep from the puncture.
inline constexpr double kPunctureClearance = 1e-9;
/// Tolerance for angle bookkeeping (mod-2pi consistency, integrality of turns).
inline constexpr double kAngleTolerance = 1e-9;

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend constexpr bool operator==(const Point&, const Point&) = default;

    friend constexpr Point operator+(Point a, Point b) noexcept { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Point operator-(Point a, Point b) noexcept { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Point operator-(Point a) noexcept { return {-a.x, -a.y}; }
    friend constexpr Point operator*(double s, Point a) noexcept { return {s * a.x, s * a.y}; }

    double norm() const noexcept { return std::hypot(x, y); }
};

inline std::string to_string(Point p) {
    return "(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")";
}

inline Point from_polar(double r, double theta) noexcept {
    return {r * std::cos(theta), r * std::sin(theta)};
}

/// Polar angle on the branch [0, 2pi), cut along the positive x-axis.
inline double polar_angle(Point p) noexcept {
    double theta = std::atan2(p.y, p.x);
    if (theta < 0.0) theta += kTwoPi;
    // atan2 of a tiny negative y rounds to exactly 2pi after the shift
    if (theta >= kTwoPi) theta = 0.0;
    return theta;
}

/// Principal-value angle in (-pi, pi] swept at the origin going from `from` to `to`.
inline double signed_angle(Point from, Point to) noexcept {
    const double cross = from.x * to.y - from.y * to.x;
    const double dot = from.x * to.x + from.y * to.y;
    return std::atan2(cross, dot);
}

/// Distance from the origin to the closed segment [a, b].
inline double segment_clearance(Point a, Point b) noexcept {
    const Point d = b - a;
    const double len2 = d.x * d.x + d.y * d.y;
    if (len2 == 0.0) return a.norm();
    double t = -(a.x * d.x + a.y * d.y) / len2;
    if (t <= 0.0) return a.norm();
    if (t >= 1.0) return b.norm();
    // |a x d| / |d| is better conditioned than |a + t d| for near-diameters
    return std::abs(a.x * d.y - a.y * d.x) / std::sqrt(len2);
}

inline void require_off_puncture(Point p) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
        throw Error(Errc::invalid_argument, "non-finite point " + to_string(p));
    if (p.norm() < kPunctureClearance)
        throw Error(Errc::puncture_collision, "point " + to_string(p) + " is within clearance of the puncture");
}

/// Ordered vertex list; consecutive vertices are joined by straight segments.
/// Construction validates every vertex and segment against the puncture.
class PolyPath {
public:
    explicit PolyPath(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
        if (vertices_.empty()) throw Error(Errc::invalid_argument, "a path needs at least one vertex");
        for (const Point& p : vertices_) require_off_puncture(p);
        for (std::size_t i = 1; i < vertices_.size(); ++i) {
            if (segment_clearance(vertices_[i - 1], vertices_[i]) < kPunctureClearance)
                throw Error(Errc::puncture_collision,
                            "segment " + std::to_string(i - 1) + " passes within clearance of the puncture");
        }
    }

    static PolyPath constant(Point p) { return PolyPath({p}); }

    Point source() const noexcept { return vertices_.front(); }
    Point target() const noexcept { return vertices_.back(); }
    bool closed() const noexcept { return source() == target(); }
    std::size_t size() const noexcept { return vertices_.size(); }
    std::span<const Point> vertices() const noexcept { return vertices_; }

    friend bool operator==(const PolyPath&, const PolyPath&) = default;

private:
    std::vector<Point> vertices_;
};

/// Total continuous angle swept about the puncture. Each segment subtends less
/// than pi (it cannot pass through the origin), so the per-segment principal
/// value is exact and no global branch cut is involved.
inline double winding_angle(const PolyPath& p) noexcept {
    const auto v = p.vertices();
    double total = 0.0;
    for (std::size_t i = 1; i < v.size(); ++i) total += signed_angle(v[i - 1], v[i]);
    return total;
}

/// Concatenation: p first, then q. Requires target(p) == source(q) exactly.
inline PolyPath concat(const PolyPath& p, const PolyPath& q) {
    if (p.target() != q.source())
        throw Error(Errc::endpoint_mismatch,
                    "target " + to_string(p.target()) + " != source " + to_string(q.source()));
    std::vector<Point> v(p.vertices().begin(), p.vertices().end());
    v.insert(v.end(), q.vertices().begin() + 1, q.vertices().end());
    return PolyPath(std::move(v));
}

inline PolyPath reverse(const PolyPath& p) {
    std::vector<Point> v(p.vertices().rbegin(), p.vertices().rend());
    return PolyPath(std::move(v));
}

/// Element of the fundamental groupoid of the punctured plane. On the punctured
/// plane a class is fully determined by its endpoints and total winding angle.
class HomotopyClass {
public:
    /// Validates puncture exclusion and winding == polar(target) - polar(source) (mod 2pi).
    static HomotopyClass make(Point source, Point target, double winding) {
        require_off_puncture(source);
        require_off_puncture(target);
        if (!std::isfinite(winding)) throw Error(Errc::invalid_class, "non-finite winding angle");
        const double mismatch = std::remainder(winding - signed_angle(source, target), kTwoPi);
        if (std::abs(mismatch) > kAngleTolerance)
            throw Error(Errc::invalid_class, "winding angle inconsistent with endpoints (off by " +
                                                 std::to_string(mismatch) + " rad mod 2pi)");
        return HomotopyClass(source, target, winding);
    }

    /// Class of `source -> target` with `turns` extra full ccw turns on top of the
    /// principal (shortest) sweep.
    static HomotopyClass from_turns(Point source, Point target, long turns) {
        return make(source, target, signed_angle(source, target) + kTwoPi * static_cast<double>(turns));
    }

    Point source() const noexcept { return source_; }
    Point target() const noexcept { return target_; }
    double winding() const noexcept { return winding_; }
    bool is_loop() const noexcept { return source_ == target_; }

    /// Distinct classes with equal endpoints differ by a multiple of 2pi, so a
    /// difference below pi identifies them.
    friend bool operator==(const HomotopyClass& a, const HomotopyClass& b) noexcept {
        return a.source_ == b.source_ && a.target_ == b.target_ &&
               std::abs(a.winding_ - b.winding_) < std::numbers::pi;
    }

private:
    HomotopyClass(Point s, Point t, double w) : source_(s), target_(t), winding_(w) {}

    Point source_;
    Point target_;
    double winding_;
};

inline HomotopyClass homotopy_class(const PolyPath& p) {
    return HomotopyClass::make(p.source(), p.target(), winding_angle(p));
}

inline bool homotopic(const PolyPath& p, const PolyPath& q) {
    return homotopy_class(p) == homotopy_class(q);
}

/// Element of the fundamental group at `base`, identified with Z.
struct LoopClass {
    Point base;
    long turns = 0;

    HomotopyClass to_class() const {
        return HomotopyClass::make(base, base, kTwoPi * static_cast<double>(turns));
    }

    /// Throws InvalidClass unless `c` is a loop whose winding is within
    /// kAngleTolerance of an integer number of turns.
    static LoopClass from_class(const HomotopyClass& c) {
        if (!c.is_loop()) throw Error(Errc::invalid_class, "class is not a loop");
        const double t = c.winding() / kTwoPi;
        const double n = std::round(t);
        if (std::abs(t - n) > kAngleTolerance)
            throw Error(Errc::invalid_class, "loop winding is not an integer number of turns");
        return {c.source(), static_cast<long>(n)};
    }

    friend bool operator==(const LoopClass&, const LoopClass&) = default;
};

/// Counter-clockwise (turns > 0) or clockwise circle of radius |start|, sampled
/// with `segments` chords per full turn.
inline PolyPath circle_loop(Point start, long turns, std::size_t segments_per_turn = 64) {
    const double r = start.norm();
    const double theta0 = std::atan2(start.y, start.x);
    const std::size_t count = segments_per_turn * static_cast<std::size_t>(std::abs(turns));
    const double step = (turns >= 0 ? kTwoPi : -kTwoPi) / static_cast<double>(segments_per_turn);
    std::vector<Point> v{start};
    for (std::size_t j = 1; j < count; ++j) v.push_back(from_polar(r, theta0 + step * static_cast<double>(j)));
    if (count > 0) v.push_back(start);
    return PolyPath(std::move(v));
}

/// Circular arc around the origin from `start`, sweeping `sweep` radians, with
/// the end vertex snapped to `end` when one is given.
inline PolyPath arc(Point start, double sweep, std::size_t segments, std::optional<Point> end = std::nullopt) {
    const double r = start.norm();
    const double theta0 = std::atan2(start.y, start.x);
    std::vector<Point> v{start};
    for (std::size_t j = 1; j < segments; ++j)
        v.push_back(from_polar(r, theta0 + sweep * static_cast<double>(j) / static_cast<double>(segments)));
    v.push_back(end.value_or(from_polar(r, theta0 + sweep)));
    return PolyPath(std::move(v));
}

} // namespace topamp
