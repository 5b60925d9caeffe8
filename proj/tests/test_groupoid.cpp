#include "support.hpp"
#include "topamp/groupoid.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <random>

using namespace topamp;
namespace tt = topamp::testing;

namespace {

constexpr double pi = std::numbers::pi;

GroupoidElement half_circle(Point start) {
    return GroupoidElement(HomotopyClass::make(start, -start, pi));
}

} // namespace

TEST(Compose, IdentityIsNeutral) {
    const GroupoidElement a(HomotopyClass::from_turns({1, 2}, {-1, 0.5}, 2));
    EXPECT_EQ(compose(identity_at(a.source()), a), a);
    EXPECT_EQ(compose(a, identity_at(a.target())), a);
}

TEST(Compose, IsAssociative) {
    detail::ClassSampler s(9);
    for (int i = 0; i < 1000; ++i) {
        const auto a = s.element();
        const auto b = s.element_from(a.target());
        const auto c = s.element_from(b.target());
        const auto l = compose(compose(a, b), c);
        const auto r = compose(a, compose(b, c));
        ASSERT_EQ(l.source(), r.source());
        ASSERT_EQ(l.target(), r.target());
        ASSERT_NEAR(l.winding(), r.winding(), 1e-12);
    }
}

TEST(Compose, TwoHalfLoopsMakeOneTurn) {
    const Point x0{1.5, 0.5};
    const auto loop = compose(half_circle(x0), half_circle(-x0));
    EXPECT_EQ(LoopClass::from_class(loop.homotopy()).turns, 1);
}

TEST(Compose, RejectsNonComposable) {
    const GroupoidElement a(HomotopyClass::from_turns({1, 0}, {0, 1}, 0));
    const GroupoidElement b(HomotopyClass::from_turns({0, 1.0000001}, {-1, 0}, 0));
    try {
        (void)compose(a, b);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::not_composable);
    }
}

TEST(Inverse, OfIdentityIsIdentity) {
    EXPECT_EQ(inverse(identity_at({0.2, 0.9})), identity_at({0.2, 0.9}));
}

TEST(Inverse, OfHalfCircle) {
    const auto inv = inverse(half_circle({1, 0}));
    EXPECT_EQ(inv.source(), (Point{-1, 0}));
    EXPECT_EQ(inv.target(), (Point{1, 0}));
    EXPECT_DOUBLE_EQ(inv.winding(), -pi);
}

TEST(Inverse, CollapsesToIdentity) {
    detail::ClassSampler s(21);
    for (int i = 0; i < 1000; ++i) {
        const auto a = s.element();
        const auto aa = compose(a, inverse(a));
        ASSERT_EQ(aa.source(), a.source());
        ASSERT_EQ(aa.target(), a.source());
        ASSERT_EQ(aa.winding(), 0.0);
    }
}

TEST(Identity, MatchesConstantPath) {
    const Point x{-0.4, 1.1};
    EXPECT_EQ(identity_at(x).homotopy(), homotopy_class(PolyPath::constant(x)));
}

TEST(LawSuite, PassesOnTheFundamentalGroupoid) {
    const auto report = verify_groupoid_axioms(1000, 42);
    EXPECT_EQ(report.samples_tested, 1000u);
    EXPECT_TRUE(report.passed()) << report.failures.front().law;
}

TEST(LawSuite, ZeroSamplesIsEmpty) {
    const auto report = verify_groupoid_axioms(0, 1);
    EXPECT_EQ(report.samples_tested, 0u);
    EXPECT_TRUE(report.passed());
}

TEST(LawSuite, IsDeterministicInSeed) {
    const auto a = verify_groupoid_axioms(200, 5, tt::ExtraTurn{});
    const auto b = verify_groupoid_axioms(200, 5, tt::ExtraTurn{});
    ASSERT_EQ(a.failures.size(), b.failures.size());
    for (std::size_t i = 0; i < a.failures.size(); ++i) EXPECT_EQ(a.failures[i].law, b.failures[i].law);
}

namespace {

bool has_failure(const LawReport& r, std::string_view prefix) {
    for (const auto& f : r.failures)
        if (f.law.rfind(prefix, 0) == 0) return true;
    return false;
}

} // namespace

TEST(LawSuite, CatchesMutations) {
    const auto off = verify_groupoid_axioms(100, 1, tt::OffByOneRadian{});
    EXPECT_FALSE(off.passed());
    EXPECT_TRUE(has_failure(off, "ill_formed_result"));

    const auto turn = verify_groupoid_axioms(100, 1, tt::ExtraTurn{});
    EXPECT_TRUE(has_failure(turn, "left_identity"));
    EXPECT_TRUE(has_failure(turn, "right_inverse_is_identity"));

    const auto ends = verify_groupoid_axioms(100, 1, tt::IgnoresEndpoints{});
    EXPECT_TRUE(has_failure(ends, "source_target"));

    const auto forget = verify_groupoid_axioms(100, 1, tt::ForgetsTurns{});
    EXPECT_TRUE(has_failure(forget, "left_identity"));

    const auto drop = verify_groupoid_axioms(100, 1, tt::DropsSecondWinding{});
    EXPECT_TRUE(has_failure(drop, "associativity"));

    const auto inv = verify_groupoid_axioms(100, 1, tt::InverseKeepsSign{});
    EXPECT_TRUE(has_failure(inv, "right_inverse_is_identity"));
}

TEST(InducedIsomorphism, PreservesTurns) {
    const Point x1{1, 0};
    const Point x2{-0.5, 2};
    const GroupoidElement c1(HomotopyClass::from_turns(x1, x2, 0));
    const GroupoidElement c2(HomotopyClass::from_turns(x1, x2, -3));
    EXPECT_EQ(induced_group_isomorphism({x1, 0}, c1), (LoopClass{x2, 0}));
    EXPECT_EQ(induced_group_isomorphism({x1, 3}, c1), (LoopClass{x2, 3}));
    EXPECT_EQ(induced_group_isomorphism({x1, 3}, c2), induced_group_isomorphism({x1, 3}, c1));
}
