#pragma once

// One-dimensional representations of the fundamental group and groupoid of the
// punctured plane, built from a loop phase, a mesh of paths out of a base point,
// and unit-phase weights on those mesh paths.

#include "topamp/errors.hpp"
#include "topamp/geometry.hpp"
#include "topamp/groupoid.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace topamp {

inline constexpr double kUnitTolerance = 1e-12;
inline constexpr double kPhaseTolerance = 1e-9;

class UnitPhase {
public:
    UnitPhase() = default;

    static UnitPhase from_angle(double radians) noexcept { return UnitPhase(std::polar(1.0, radians)); }

    static UnitPhase from_complex(std::complex<double> z) {
        if (!(std::abs(std::abs(z) - 1.0) <= kUnitTolerance))
            throw Error(Errc::invalid_argument, "value is not a unit phase");
        return UnitPhase(z);
    }

    std::complex<double> value() const noexcept { return value_; }
    double angle() const noexcept { return std::arg(value_); }

    UnitPhase inverse() const noexcept { return UnitPhase(std::conj(value_)); }

    friend UnitPhase operator*(UnitPhase a, UnitPhase b) noexcept { return UnitPhase(a.value_ * b.value_); }

    friend double distance(UnitPhase a, UnitPhase b) noexcept { return std::abs(a.value_ - b.value_); }

private:
    explicit UnitPhase(std::complex<double> z) noexcept : value_(z) {}

    std::complex<double> value_{1.0, 0.0};
};

/// D(n) = exp(i n phi): the one-dimensional representation of Z with loop phase phi.
struct GroupRep1D {
    double loop_phase = 0.0;

    UnitPhase operator()(long turns) const noexcept {
        return UnitPhase::from_angle(static_cast<double>(turns) * loop_phase);
    }
};

inline UnitPhase eval_group_rep(const GroupRep1D& d, const LoopClass& loop) noexcept { return d(loop.turns); }

/// A choice of path from the base point to every point of the plane.
class Mesh {
public:
    using PathFn = std::function<PolyPath(Point)>;

    Mesh(Point base, PathFn path_fn, std::size_t segments, std::string kind)
        : base_(base), path_fn_(std::move(path_fn)), segments_(segments), kind_(std::move(kind)) {
        require_off_puncture(base_);
    }

    Point base() const noexcept { return base_; }
    std::size_t segments() const noexcept { return segments_; }
    const std::string& kind() const noexcept { return kind_; }

    PolyPath path_to(Point x) const {
        PolyPath p = path_fn_(x);
        if (p.source() != base_ || p.target() != x)
            throw Error(Errc::invalid_argument, "mesh path to " + to_string(x) + " has wrong endpoints");
        return p;
    }

    HomotopyClass class_to(Point x) const { return homotopy_class(path_to(x)); }

private:
    Point base_;
    PathFn path_fn_;
    std::size_t segments_;
    std::string kind_;
};

/// Unit-phase weight attached to each mesh path; the reversed mesh path
/// carries the reciprocal.
class MeshWeights {
public:
    using WeightFn = std::function<UnitPhase(Point)>;

    explicit MeshWeights(WeightFn fn) : fn_(std::move(fn)) {}

    static MeshWeights trivial() {
        return MeshWeights([](Point) { return UnitPhase{}; });
    }

    UnitPhase weight_of(Point x) const { return fn_(x); }

private:
    WeightFn fn_;
};

inline constexpr Point kMeshBase{1.0, 0.0};
inline constexpr std::size_t kDefaultMeshSegments = 256;

/// Spiral mesh from (1, 0): the path to r e^{i theta} is t -> r^t e^{i t theta'}
/// sampled at `segments` chords, with theta in [0, 2pi) and theta' = theta, or
/// theta + 2pi * extra_lower_turns for points with theta >= pi. The extra turns
/// re-route the lower half plane around the puncture and change which half
/// circles map to contractible loops.
inline Mesh spiral_mesh(std::size_t segments = kDefaultMeshSegments, long extra_lower_turns = 0) {
    if (segments < 8) throw Error(Errc::invalid_argument, "mesh needs at least 8 segments");
    const double max_sweep = kTwoPi * (1.0 + static_cast<double>(std::abs(extra_lower_turns)));
    if (max_sweep / static_cast<double>(segments) >= std::numbers::pi)
        throw Error(Errc::invalid_argument, "too few mesh segments for the requested extra turns");

    auto path = [segments, extra_lower_turns](Point x) {
        const double r = x.norm();
        if (r < kPunctureClearance)
            throw Error(Errc::degenerate_target, "mesh target " + to_string(x) + " is at the puncture");
        double theta = polar_angle(x);
        if (theta >= std::numbers::pi) theta += kTwoPi * static_cast<double>(extra_lower_turns);
        std::vector<Point> v;
        v.reserve(segments + 1);
        v.push_back(kMeshBase);
        const double m = static_cast<double>(segments);
        for (std::size_t j = 1; j < segments; ++j) {
            const double t = static_cast<double>(j) / m;
            v.push_back(from_polar(std::pow(r, t), t * theta));
        }
        v.push_back(x);
        return PolyPath(std::move(v));
    };
    const std::string kind = extra_lower_turns == 0 ? "spiral" : "spiral_offset";
    return Mesh(kMeshBase, std::move(path), segments, kind);
}

/// exp(i phi theta / 2pi) for the point r e^{i theta}, theta in [0, 2pi).
inline MeshWeights symmetric_weights(double loop_phase) {
    return MeshWeights([loop_phase](Point x) {
        return UnitPhase::from_angle(loop_phase * polar_angle(x) / kTwoPi);
    });
}

/// Multiplies every weight by exp(i (f(x) - f(base))). Any such change is a
/// generalized gauge transformation; it keeps weight_of(base) == 1.
inline MeshWeights regauge(MeshWeights weights, std::function<double(Point)> phase_field, Point base) {
    const double at_base = phase_field(base);
    return MeshWeights([w = std::move(weights), f = std::move(phase_field), at_base](Point x) {
        return w.weight_of(x) * UnitPhase::from_angle(f(x) - at_base);
    });
}

class GroupoidRep {
public:
    GroupoidRep(GroupRep1D d, Mesh mesh, MeshWeights weights)
        : d_(d), mesh_(std::move(mesh)), weights_(std::move(weights)) {
        if (distance(weights_.weight_of(mesh_.base()), UnitPhase{}) > kUnitTolerance)
            throw Error(Errc::invalid_argument, "mesh weight at the base point must be 1");
    }

    const GroupRep1D& group_rep() const noexcept { return d_; }
    const Mesh& mesh() const noexcept { return mesh_; }
    const MeshWeights& weights() const noexcept { return weights_; }

private:
    GroupRep1D d_;
    Mesh mesh_;
    MeshWeights weights_;
};

struct MeshWithWeights {
    Mesh mesh;
    MeshWeights weights;
};

/// Spiral mesh with weights exp(i phi theta / 2pi): the rotationally symmetric
/// choice under which every counter-clockwise half circle carries exp(i phi / 2).
inline MeshWithWeights symmetric_mesh(std::size_t segments, double loop_phase) {
    return {spiral_mesh(segments), symmetric_weights(loop_phase)};
}

inline GroupoidRep symmetric_rep(double loop_phase, std::size_t segments = kDefaultMeshSegments) {
    auto [mesh, weights] = symmetric_mesh(segments, loop_phase);
    return GroupoidRep(GroupRep1D{loop_phase}, std::move(mesh), std::move(weights));
}

/// Representation with all mesh weights equal to 1, so chi([q]) = D(g([q])).
inline GroupoidRep ldw_rep(GroupRep1D d, Mesh mesh) {
    return GroupoidRep(d, std::move(mesh), MeshWeights::trivial());
}

/// Turn count of the loop C(a) . q . C(b)^-1 at the mesh base point.
inline long conjugated_turns(const Mesh& mesh, const HomotopyClass& q) {
    const GroupoidElement to_a(mesh.class_to(q.source()));
    const GroupoidElement to_b(mesh.class_to(q.target()));
    const GroupoidElement loop = compose(compose(to_a, GroupoidElement(q)), inverse(to_b));
    return LoopClass::from_class(loop.homotopy()).turns;
}

/// chi([q]) = chi(C(a))^-1 . D(C(a) q C(b)^-1) . chi(C(b)).
inline UnitPhase eval_groupoid_rep(const GroupoidRep& rep, const HomotopyClass& q) {
    const long turns = conjugated_turns(rep.mesh(), q);
    return rep.weights().weight_of(q.source()).inverse() * rep.group_rep()(turns) *
           rep.weights().weight_of(q.target());
}

inline bool check_homomorphism(const GroupoidRep& rep, const HomotopyClass& p, const HomotopyClass& q) {
    const GroupoidElement pq = compose(GroupoidElement(p), GroupoidElement(q));
    const UnitPhase lhs = eval_groupoid_rep(rep, pq.homotopy());
    const UnitPhase rhs = eval_groupoid_rep(rep, p) * eval_groupoid_rep(rep, q);
    return distance(lhs, rhs) < kPhaseTolerance;
}

/// Ratio chi2([q]) / chi1([q]) over classes from a to b with at least five
/// distinct windings; compatible iff the ratio is the same phase for all of them.
struct Compatibility {
    bool compatible = false;
    UnitPhase ratio;
    double max_spread = 0.0;
};

inline Compatibility compatibility(const GroupoidRep& rep1, const GroupoidRep& rep2, Point a, Point b,
                                   std::size_t class_samples) {
    const long count = static_cast<long>(std::max<std::size_t>(class_samples, 5));
    Compatibility out;
    bool first = true;
    for (long i = 0; i < count; ++i) {
        const long turns = i - count / 2;
        const HomotopyClass q = HomotopyClass::from_turns(a, b, turns);
        const UnitPhase ratio = eval_groupoid_rep(rep2, q) * eval_groupoid_rep(rep1, q).inverse();
        if (first) {
            out.ratio = ratio;
            first = false;
        } else {
            out.max_spread = std::max(out.max_spread, distance(ratio, out.ratio));
        }
    }
    out.compatible = out.max_spread < kPhaseTolerance;
    return out;
}

inline bool compatible(const GroupoidRep& rep1, const GroupoidRep& rep2, Point a, Point b,
                       std::size_t class_samples) {
    return compatibility(rep1, rep2, a, b, class_samples).compatible;
}

/// Counter-clockwise half circle from r e^{i omega} to its point inverse.
inline HomotopyClass ccw_half_circle(double r, double omega) {
    const Point start = from_polar(r, omega);
    return HomotopyClass::make(start, -start, std::numbers::pi);
}

struct ProbeResult {
    bool holds = false;
    double max_deviation = 0.0;
};

/// Compares chi([q]) with chi([-q]) for `samples` ccw half circles q, where -q
/// is the pointwise inversion of q (again a ccw half circle, from -start back
/// to start). Start angles are stratified over [0, 2pi) and radii follow a
/// golden-ratio sequence over [0.5, 2], so the probe is deterministic.
inline ProbeResult inversion_symmetry_probe(const GroupoidRep& rep, std::size_t samples) {
    constexpr double golden = 0.6180339887498949;
    ProbeResult out;
    for (std::size_t j = 0; j < samples; ++j) {
        const double omega = kTwoPi * (static_cast<double>(j) + 0.5) / static_cast<double>(samples);
        const double frac = std::fmod(0.5 + golden * static_cast<double>(j), 1.0);
        const double r = 0.5 + 1.5 * frac;
        const HomotopyClass q = ccw_half_circle(r, omega);
        const HomotopyClass minus_q = HomotopyClass::make(q.target(), q.source(), std::numbers::pi);
        out.max_deviation =
            std::max(out.max_deviation, distance(eval_groupoid_rep(rep, q), eval_groupoid_rep(rep, minus_q)));
    }
    out.holds = out.max_deviation < kPhaseTolerance;
    return out;
}

} // namespace topamp
