#include "topamp/propagator.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <vector>

using namespace topamp;

namespace {

constexpr double pi = std::numbers::pi;
const Amplitude I{0.0, 1.0};

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v;
    for (int i = 0; i < n; ++i) v.push_back(a + (b - a) * i / (n - 1));
    return v;
}

} // namespace

TEST(FreePropagator, ZeroSeparationIsThePrefactor) {
    const Amplitude k = free_propagator_2d({1, 2}, {1, 2}, 0.5, 2.0, 1.0);
    EXPECT_NEAR(std::abs(k - 2.0 / (2 * pi * I * 0.5)), 0.0, 1e-15);
}

TEST(FreePropagator, UnitSeparationPhase) {
    const Amplitude k = free_propagator_2d({1, 0}, {0, 0}, 1.0);
    EXPECT_NEAR(std::abs(k - std::polar(1.0, 0.5) / (2 * pi * I)), 0.0, 1e-15);
}

TEST(FreePropagator, ActionIsQuadraticInSeparation) {
    EXPECT_DOUBLE_EQ(free_action({2, 0}, {0, 0}, 1.0, 1.0), 4 * free_action({1, 0}, {0, 0}, 1.0, 1.0));
}

TEST(FreePropagator, RejectsNonPositiveTime) {
    try {
        (void)free_propagator_2d({1, 0}, {0, 0}, 0.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::nonpositive_time);
    }
}

TEST(AharonovBohm, ZeroFluxIsTheSumOfLegs) {
    ABConfig cfg;
    const auto legs = slit_legs(cfg, 0.7);
    EXPECT_EQ(ab_total_amplitude(cfg, 0.7), legs.through_a + legs.through_b);
}

TEST(AharonovBohm, LegsFollowTheProductRule) {
    // independent recomputation of one leg from the closed-form kernel
    ABConfig cfg;
    const double y = -1.3;
    auto k0 = [](double d2) { return 1.0 / (2 * pi * I) * std::exp(I * d2 / 2.0); };
    const double d1 = 25 + 1;                    // (-5,0) -> (0,1)
    const double d2 = 25 + (y - 1) * (y - 1);    // (0,1) -> (5,y)
    EXPECT_NEAR(std::abs(slit_legs(cfg, y).through_a - k0(d1) * k0(d2)), 0.0, 1e-15);
}

TEST(AharonovBohm, IntegerFluxShiftLeavesIntensityUnchanged) {
    for (double y : linspace(-3, 3, 13)) {
        ABConfig a, b;
        a.flux_ratio = 0.0;
        b.flux_ratio = 1.0;
        EXPECT_EQ(std::norm(ab_total_amplitude(a, y)), std::norm(ab_total_amplitude(b, y)));
    }
}

TEST(AharonovBohm, HalfFluxDarkensTheCentralFringe) {
    ABConfig cfg;
    cfg.flux_ratio = 0.5;
    const auto legs = slit_legs(cfg, 0.0);
    EXPECT_EQ(legs.through_a, legs.through_b);
    EXPECT_LT(std::abs(ab_total_amplitude(cfg, 0.0)), 1e-15);
}

TEST(AharonovBohm, SweepIsEvenInScreenYAtZeroFlux) {
    const auto ys = linspace(-2, 2, 21);
    const std::vector<double> flux{0.0};
    const auto rows = ab_intensity_sweep(ABConfig{}, ys, flux);
    ASSERT_EQ(rows.size(), ys.size());
    for (std::size_t j = 0; j < ys.size(); ++j)
        EXPECT_NEAR(rows[j].intensity, rows[ys.size() - 1 - j].intensity, 1e-15);
}

TEST(AharonovBohm, SweepIsPeriodicInFlux) {
    const auto ys = linspace(-2, 2, 21);
    const auto fluxes = linspace(0, 2, 41);
    const auto rows = ab_intensity_sweep(ABConfig{}, ys, fluxes);
    for (int i = 0; i + 20 < 41; ++i)
        for (std::size_t j = 0; j < ys.size(); ++j) {
            const double a = rows[i * ys.size() + j].intensity;
            const double b = rows[(i + 20) * ys.size() + j].intensity;
            EXPECT_LE(std::abs(a - b), 1e-9 * std::max(a, b));
        }
}

TEST(AharonovBohm, BrightFringeDimsWithHalfFlux) {
    const std::vector<double> ys{0.0};
    const std::vector<double> fluxes{0.0, 0.5};
    const auto rows = ab_intensity_sweep(ABConfig{}, ys, fluxes);
    EXPECT_GT(rows[0].intensity, rows[1].intensity);
}

TEST(AharonovBohm, CsvFormat) {
    std::ostringstream os;
    const std::vector<IntensityRow> rows{{0.5, -1.0, 0.000123456789012345}};
    write_sweep_csv(os, rows);
    EXPECT_EQ(os.str(), "flux_ratio,screen_y,intensity\n5.00000000000e-01,-1.00000000000e+00,1.23456789012e-04\n");
}

TEST(AssembleTotal, SingleClassWithUnitCharacter) {
    const auto q = HomotopyClass::from_turns({1, 0}, {0, 2}, 0);
    const Amplitude k{0.3, -0.2};
    EXPECT_NEAR(std::abs(assemble_total({{q, k}}, symmetric_rep(0.0)) - k), 0.0, 1e-15);
}

TEST(AssembleTotal, OppositePhasesCancel) {
    // phi = pi: classes one turn apart carry characters differing by exp(i pi)
    const auto q0 = HomotopyClass::from_turns({1, 0}, {0, 2}, 0);
    const auto q1 = HomotopyClass::from_turns({1, 0}, {0, 2}, 1);
    const Amplitude k{0.3, -0.2};
    EXPECT_LT(std::abs(assemble_total({{q0, k}, {q1, k}}, symmetric_rep(pi))), 1e-12);
}

TEST(AssembleTotal, RejectsMixedEndpoints) {
    const auto q0 = HomotopyClass::from_turns({1, 0}, {0, 2}, 0);
    const auto q1 = HomotopyClass::from_turns({1, 0}, {0, 3}, 0);
    try {
        (void)assemble_total({{q0, 1.0}, {q1, 1.0}}, symmetric_rep(1.0));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::mixed_endpoints);
    }
}

TEST(AssembleTotal, ClassDecompositionReproducesTheTwoSlitAmplitude) {
    for (double f : {0.0, 0.25, 0.5, 0.8, 1.7}) {
        ABConfig cfg;
        cfg.flux_ratio = f;
        const auto rep = symmetric_rep(2 * pi * f);
        for (double y : linspace(-2, 2, 9)) {
            const auto decomp = ab_class_decomposition(cfg, y);
            ASSERT_EQ(decomp.size(), 2u);
            const Amplitude via_classes = assemble_total(decomp, rep);
            const Amplitude direct = ab_total_amplitude(cfg, y);
            EXPECT_NEAR(std::abs(via_classes), std::abs(direct), 1e-12) << "f=" << f << " y=" << y;
            // classes differ by one turn, so the sum is chi(q_A) (K_A + exp(2 pi i f) K_B)
            const auto chi_a = eval_groupoid_rep(rep, decomp.front().first).value();
            EXPECT_NEAR(std::abs(via_classes - chi_a * direct), 0.0, 1e-12);
        }
    }
}
