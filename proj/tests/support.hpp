#pragma once

// Independent oracles and generators shared by the unit and acceptance tests.

#include "topamp/geometry.hpp"
#include "topamp/groupoid.hpp"

#include <cmath>
#include <complex>
#include <optional>
#include <random>
#include <vector>

namespace topamp::testing {

/// Winding number of a closed polyline as the signed count of crossings of the
/// positive x-axis (upward +1, downward -1), half-open in y.
inline long ray_crossing_winding(const PolyPath& p) {
    const auto v = p.vertices();
    long count = 0;
    for (std::size_t i = 1; i < v.size(); ++i) {
        const Point a = v[i - 1];
        const Point b = v[i];
        const bool up = a.y < 0.0 && b.y >= 0.0;
        const bool down = b.y < 0.0 && a.y >= 0.0;
        if (!up && !down) continue;
        const double x = a.x + (0.0 - a.y) * (b.x - a.x) / (b.y - a.y);
        if (x > 0.0) count += up ? 1 : -1;
    }
    return count;
}

/// Angle sum computed through complex division rather than cross/dot products.
inline double angle_sum(const PolyPath& p) {
    const auto v = p.vertices();
    double total = 0.0;
    for (std::size_t i = 1; i < v.size(); ++i)
        total += std::arg(std::complex<double>(v[i].x, v[i].y) / std::complex<double>(v[i - 1].x, v[i - 1].y));
    return total;
}

/// Random polyline with `n` vertices in [-2, 2]^2; regenerated until it keeps
/// clear of the puncture.
inline PolyPath random_polyline(std::mt19937_64& rng, std::size_t n, bool closed,
                                std::optional<Point> first = std::nullopt) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (;;) {
        std::vector<Point> v;
        if (first) v.push_back(*first);
        while (v.size() < n) v.push_back({u(rng), u(rng)});
        if (closed) v.push_back(v.front());
        try {
            return PolyPath(std::move(v));
        } catch (const Error&) {
        }
    }
}

// --- deliberately broken groupoid operations -------------------------------

/// compose adds a spurious 1 rad to the winding.
struct OffByOneRadian : FundamentalGroupoidOps {
    std::optional<GroupoidElement> compose(const GroupoidElement& a, const GroupoidElement& b) const {
        if (!composable(a, b)) return std::nullopt;
        return GroupoidElement(HomotopyClass::make(a.source(), b.target(), a.winding() + b.winding() + 1.0));
    }
};

/// compose inserts an extra full turn.
struct ExtraTurn : FundamentalGroupoidOps {
    std::optional<GroupoidElement> compose(const GroupoidElement& a, const GroupoidElement& b) const {
        if (!composable(a, b)) return std::nullopt;
        return GroupoidElement(HomotopyClass::make(a.source(), b.target(), a.winding() + b.winding() + kTwoPi));
    }
};

/// compose glues any pair with a straight connector, ignoring endpoints.
struct IgnoresEndpoints : FundamentalGroupoidOps {
    std::optional<GroupoidElement> compose(const GroupoidElement& a, const GroupoidElement& b) const {
        const double gap = signed_angle(a.target(), b.source());
        return GroupoidElement(HomotopyClass::make(a.source(), b.target(), a.winding() + gap + b.winding()));
    }
};

/// compose forgets the turns and keeps only the principal sweep.
struct ForgetsTurns : FundamentalGroupoidOps {
    std::optional<GroupoidElement> compose(const GroupoidElement& a, const GroupoidElement& b) const {
        if (!composable(a, b)) return std::nullopt;
        return GroupoidElement(HomotopyClass::from_turns(a.source(), b.target(), 0));
    }
};

/// compose keeps only the winding of its first argument plus the shortest sweep.
struct DropsSecondWinding : FundamentalGroupoidOps {
    std::optional<GroupoidElement> compose(const GroupoidElement& a, const GroupoidElement& b) const {
        if (!composable(a, b)) return std::nullopt;
        return GroupoidElement(
            HomotopyClass::make(a.source(), b.target(), a.winding() + signed_angle(b.source(), b.target())));
    }
};

/// inverse swaps the endpoints but keeps the sign of the winding.
struct InverseKeepsSign : FundamentalGroupoidOps {
    GroupoidElement inverse(const GroupoidElement& a) const {
        const double w = a.winding() - 2.0 * signed_angle(a.source(), a.target());
        return GroupoidElement(HomotopyClass::make(a.target(), a.source(), w));
    }
};

} // namespace topamp::testing
