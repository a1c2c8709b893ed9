#include <gtest/gtest.h>

#include <vortex3/shape.hpp>

#include "bridge.hpp"
#include "oracles.hpp"

using namespace vortex3;

TEST(ShapeField, MatchesRatesInducedByCartesianMotion)
{
    oracle::Generator gen(31);
    for (int k = 0; k < 100; ++k) {
        const auto g = gen.mixed_vorticities();
        const auto z = gen.triangle(0.1, 0.01);
        const ShapeState s = shape_of(bridge::state(z));
        const auto rate = shape_field(Vorticities(g), s);
        const auto ref = oracle::side_rates(g, z);
        for (int i = 0; i < 3; ++i) {
            EXPECT_NEAR(rate[i], ref[i], 1e-12 * (1 + std::abs(ref[i])));
        }
    }
}

TEST(ShapeField, PreservesEnergyAndMoment)
{
    oracle::Generator gen(33);
    for (int k = 0; k < 50; ++k) {
        const Vorticities g(gen.mixed_vorticities());
        const ShapeState s = shape_of(bridge::state(gen.triangle()));
        const auto rate = shape_field(g, s);
        double dH = 0, dM = 0;
        for (std::size_t i = 0; i < 3; ++i) {
            const double gjk = g[next(i)] * g[prev(i)];
            dH += -gjk / (4 * pi * s.b[i]) * rate[i];
            dM += gjk * rate[i];
        }
        EXPECT_NEAR(dH, 0.0, 1e-13);
        EXPECT_NEAR(dM, 0.0, 1e-13);
    }
}

TEST(ShapeField, EquilateralIsStationaryForAnyVorticities)
{
    const auto rate = shape_field(Vorticities(0.3, -1.7, 2.2), ShapeState{{2, 2, 2}, Orientation::Negative});
    for (double r : rate) {
        EXPECT_EQ(r, 0.0);
    }
}

TEST(ShapeField, SingularOnCollinearAndCollisionStates)
{
    const Vorticities g(1, 1, -0.5);
    EXPECT_THROW(shape_field(g, ShapeState{{1, 1, 4}, Orientation::Collinear}), BoundaryError);
    EXPECT_THROW(shape_field(g, ShapeState{{0, 1, 1}, Orientation::Positive}), BinaryCollisionError);
}

TEST(AreaRate, AgreesWithChainRuleAndCartesian)
{
    oracle::Generator gen(35);
    for (int k = 0; k < 50; ++k) {
        const auto g = gen.mixed_vorticities();
        const auto z = gen.triangle(0.1, 0.02);
        const ShapeState s = shape_of(bridge::state(z));
        const double direct = area_rate(Vorticities(g), s);
        EXPECT_NEAR(direct, area_rate_chain_rule(Vorticities(g), s), 1e-12);
        EXPECT_NEAR(direct, oracle::area_rate(g, z), 1e-12);
    }
    // Finite and orientation independent on collinear shapes.
    const Vorticities g(1, 2, -0.7);
    EXPECT_TRUE(std::isfinite(area_rate(g, std::array<double, 3>{1, 1, 4})));
    EXPECT_EQ(area_rate(g, ShapeState{{2, 3, 4}, Orientation::Positive}),
              area_rate(g, ShapeState{{2, 3, 4}, Orientation::Negative}));
}

TEST(IntegrateShape, MatchesCartesianProjectionUntilBoundary)
{
    oracle::Generator gen(37);
    IntegratorConfig cfg;
    cfg.horizon = 3.0;
    cfg.record_steps = false;
    cfg.output_times = bridge::uniform_times(cfg.horizon, 60);
    for (int k = 0; k < 5; ++k) {
        const Vorticities g(gen.mixed_vorticities());
        const auto z = bridge::state(gen.triangle());
        const auto cart = integrate_cartesian(g, z, cfg);
        const auto shp = integrate_shape(g, shape_of(z), cfg);
        EXPECT_LT(shp.drift.H, 1e-9);
        EXPECT_LT(shp.drift.M, 1e-9);
        for (const auto& [t, s] : shp.samples) {
            const auto it = std::find_if(cart.samples.begin(), cart.samples.end(),
                                         [&](const auto& c) { return c.t == t; });
            if (it == cart.samples.end()) {
                continue;
            }
            const auto b = shape_of(it->state).b;
            for (int i = 0; i < 3; ++i) {
                EXPECT_NEAR(s.b[i], b[i], 1e-8);
            }
        }
    }
}

TEST(IntegrateShape, StopsBeforeCollinearCrossing)
{
    // A generic bounded orbit through near-collinear shapes.
    const Vorticities g(1.3, -0.7, 0.9);
    const CartesianState z{{{0.2, 0.1}, {-0.6, 0.5}, {0.4, -0.8}}};
    IntegratorConfig cfg;
    cfg.horizon = 10.0;
    const auto traj = integrate_shape(g, shape_of(z), cfg);
    EXPECT_EQ(traj.halt_reason, HaltReason::BoundaryApproach);
    EXPECT_LT(std::abs(normalized_area(traj.final_state())), 2 * boundary_alpha_threshold);
    EXPECT_THROW(integrate_shape(g, ShapeState{{1, 1, 4}, Orientation::Collinear}, cfg), BoundaryError);
}
