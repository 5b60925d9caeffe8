#pragma once

// Fundamental groupoid of the punctured plane, realized over HomotopyClass
// values, plus an executable check of the groupoid axioms.

#include "topamp/errors.hpp"
#include "topamp/geometry.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace topamp {

class GroupoidElement {
public:
    explicit GroupoidElement(HomotopyClass c) : class_(c) {}

    const HomotopyClass& homotopy() const noexcept { return class_; }
    Point source() const noexcept { return class_.source(); }
    Point target() const noexcept { return class_.target(); }
    double winding() const noexcept { return class_.winding(); }

    friend bool operator==(const GroupoidElement&, const GroupoidElement&) = default;

private:
    HomotopyClass class_;
};

inline bool composable(const GroupoidElement& a, const GroupoidElement& b) noexcept {
    return a.target() == b.source();
}

/// `a` followed by `b`.
inline GroupoidElement compose(const GroupoidElement& a, const GroupoidElement& b) {
    if (!composable(a, b))
        throw Error(Errc::not_composable,
                    "target " + to_string(a.target()) + " != source " + to_string(b.source()));
    return GroupoidElement(HomotopyClass::make(a.source(), b.target(), a.winding() + b.winding()));
}

inline GroupoidElement inverse(const GroupoidElement& a) {
    return GroupoidElement(HomotopyClass::make(a.target(), a.source(), -a.winding()));
}

inline GroupoidElement identity_at(Point x) {
    return GroupoidElement(HomotopyClass::make(x, x, 0.0));
}

/// Transports a loop at x1 to x2 along `connector` (x1 -> x2): the class of
/// connector^-1 . loop . connector. The fundamental group is abelian, so the
/// turn count is preserved whichever connector is used.
inline LoopClass induced_group_isomorphism(const LoopClass& loop, const GroupoidElement& connector) {
    if (connector.source() != loop.base)
        throw Error(Errc::not_composable, "connector does not start at the loop base");
    const GroupoidElement l(loop.to_class());
    const GroupoidElement moved = compose(compose(inverse(connector), l), connector);
    return LoopClass::from_class(moved.homotopy());
}

// ---------------------------------------------------------------------------
// Law suite

struct LawFailure {
    std::string law;
    std::vector<HomotopyClass> witnesses;
};

struct LawReport {
    std::size_t samples_tested = 0;
    std::vector<LawFailure> failures;

    bool passed() const noexcept { return failures.empty(); }
};

/// Operations under test. A policy type lets the checker run against
/// deliberately broken variants without touching the real implementation.
/// `compose` returns nullopt when it considers the pair not composable.
struct FundamentalGroupoidOps {
    std::optional<GroupoidElement> compose(const GroupoidElement& a, const GroupoidElement& b) const {
        if (!composable(a, b)) return std::nullopt;
        return topamp::compose(a, b);
    }
    GroupoidElement inverse(const GroupoidElement& a) const { return topamp::inverse(a); }
    GroupoidElement identity(Point x) const { return identity_at(x); }
};

namespace detail {

/// Sampling distribution: endpoints uniform on the annulus 0.5 <= r <= 2,
/// extra turns uniform in {-3, ..., 3}.
class ClassSampler {
public:
    explicit ClassSampler(std::uint64_t seed) : rng_(seed) {}

    Point point() {
        std::uniform_real_distribution<double> radius(0.5, 2.0);
        std::uniform_real_distribution<double> angle(0.0, kTwoPi);
        return from_polar(radius(rng_), angle(rng_));
    }

    GroupoidElement element_from(Point source) {
        std::uniform_int_distribution<long> turns(-3, 3);
        return GroupoidElement(HomotopyClass::from_turns(source, point(), turns(rng_)));
    }

    GroupoidElement element() { return element_from(point()); }

    bool coin() { return std::bernoulli_distribution(0.5)(rng_); }

private:
    std::mt19937_64 rng_;
};

/// Exact-law equality: endpoints equal and windings within kAngleTolerance.
inline bool same(const std::optional<GroupoidElement>& a, const GroupoidElement& b) noexcept {
    return a && a->source() == b.source() && a->target() == b.target() &&
           std::abs(a->winding() - b.winding()) <= kAngleTolerance;
}

inline bool same(const std::optional<GroupoidElement>& a, const std::optional<GroupoidElement>& b) noexcept {
    return b && same(a, *b);
}

template <class Ops>
std::optional<GroupoidElement> chain(const Ops& ops, const std::optional<GroupoidElement>& a,
                                     const std::optional<GroupoidElement>& b) {
    if (!a || !b) return std::nullopt;
    return ops.compose(*a, *b);
}

} // namespace detail

/// Samples `sample_count` rounds of random elements (deterministic in `seed`)
/// and checks, per round: associativity; two-sided identities; the inverse laws
/// (i)-(iv); a^-1 a and a a^-1 being the identities at the endpoints; the
/// coincidence of left and right inverses together with (a^-1)^-1 = a; and the
/// source/target theorem (compose defined <=> Target(a) == Source(b)) on a pair
/// that is composable half of the time.
template <class Ops = FundamentalGroupoidOps>
LawReport verify_groupoid_axioms(std::size_t sample_count, std::uint64_t seed, const Ops& ops = Ops{}) {
    using detail::chain;
    using detail::same;
    using Opt = std::optional<GroupoidElement>;

    LawReport report;
    detail::ClassSampler sampler(seed);

    auto fail = [&](std::string law, std::vector<GroupoidElement> w) {
        LawFailure f{std::move(law), {}};
        for (const auto& e : w) f.witnesses.push_back(e.homotopy());
        report.failures.push_back(std::move(f));
    };

    for (std::size_t i = 0; i < sample_count; ++i) {
        const GroupoidElement a = sampler.element();
        // a broken operation may produce a class that fails validation; that is
        // a law failure, not an error of the checker
        try {
            const GroupoidElement b = sampler.element_from(a.target());
            const GroupoidElement c = sampler.element_from(b.target());
            // d ends at a.source(), so d.a is defined; e is independent of a
            const GroupoidElement d = GroupoidElement(
                HomotopyClass::from_turns(sampler.point(), a.source(), 0));
            const GroupoidElement e = sampler.coin() ? sampler.element_from(a.target()) : sampler.element();

            const GroupoidElement a_inv = ops.inverse(a);

            // (I) associativity
            const Opt left = chain(ops, ops.compose(a, b), Opt(c));
            const Opt right = chain(ops, Opt(a), ops.compose(b, c));
            if (!left || !right || !same(left, right)) fail("associativity", {a, b, c});

            // two-sided identity
            if (!same(ops.compose(ops.identity(a.source()), a), a)) fail("left_identity", {a});
            if (!same(ops.compose(a, ops.identity(a.target())), a)) fail("right_identity", {a});

            // reverse yields the identities at the endpoints
            const Opt a_then_inv = ops.compose(a, a_inv);
            const Opt inv_then_a = ops.compose(a_inv, a);
            if (!same(a_then_inv, identity_at(a.source()))) fail("right_inverse_is_identity", {a});
            if (!same(inv_then_a, identity_at(a.target()))) fail("left_inverse_is_identity", {a});

            // (i) (a^-1 a) b = b when ab is defined
            if (!same(chain(ops, inv_then_a, Opt(b)), b)) fail("inverse_law_i", {a, b});
            // (ii) (a a^-1) b' = b' when a^-1 b' is defined; a^-1 ends at a.source()
            {
                const GroupoidElement b2 = sampler.element_from(a_inv.target());
                if (!same(chain(ops, a_then_inv, Opt(b2)), b2)) fail("inverse_law_ii", {a, b2});
            }
            // (iii) d (a a^-1) = d when d a is defined
            if (!same(chain(ops, Opt(d), a_then_inv), d)) fail("inverse_law_iii", {a, d});
            // (iv) d' (a^-1 a) = d' when d' a^-1 is defined; d' ends at a.target()
            {
                const GroupoidElement d2 = GroupoidElement(HomotopyClass::from_turns(sampler.point(), a.target(), 1));
                if (!same(chain(ops, Opt(d2), inv_then_a), d2)) fail("inverse_law_iv", {a, d2});
            }

            // left/right inverse coincidence: a_L^-1 (a a_R^-1) = (a_L^-1 a) a_R^-1
            {
                const Opt lhs = chain(ops, Opt(a_inv), a_then_inv);
                const Opt rhs = chain(ops, inv_then_a, Opt(a_inv));
                if (!same(lhs, a_inv) || !same(rhs, a_inv)) fail("inverse_coincidence", {a});
                if (!same(Opt(ops.inverse(a_inv)), a)) fail("double_inverse", {a});
            }

            // source/target theorem
            {
                const bool defined = ops.compose(a, e).has_value();
                if (defined != (a.target() == e.source())) fail("source_target", {a, e});
                const Opt composite = ops.compose(a, b);
                if (composite && (composite->source() != a.source() || composite->target() != b.target()))
                    fail("source_target_of_composite", {a, b});
            }
        } catch (const Error& err) {
            fail(std::string("ill_formed_result: ") + err.what(), {a});
        }
        ++report.samples_tested;
    }
    return report;
}

} // namespace topamp
