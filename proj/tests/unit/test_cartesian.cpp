#include <gtest/gtest.h>

#include <vortex3/cartesian.hpp>

#include "bridge.hpp"
#include "oracles.hpp"

using namespace vortex3;

TEST(CartesianField, MatchesConjugateForm)
{
    oracle::Generator gen(21);
    for (int k = 0; k < 50; ++k) {
        const auto g = gen.mixed_vorticities();
        const auto z = gen.triangle(0.05, 0.0);
        const auto v = cartesian_field(Vorticities(g), bridge::state(z));
        const auto ref = oracle::velocity(g, z);
        for (int a = 0; a < 3; ++a) {
            EXPECT_LT(std::abs(v[a] - ref[a]), 1e-13 * (1 + std::abs(ref[a])));
        }
    }
}

TEST(CartesianField, GeneralVortexCount)
{
    const std::array<double, 4> g{1.0, -0.5, 2.0, 0.7};
    const std::array<Point, 4> z{Point{0, 0}, Point{1, 0.2}, Point{-0.3, 0.9}, Point{0.4, -0.6}};
    const auto v = cartesian_field(std::span<const double>(g), CartesianState{{z.begin(), z.end()}});
    const auto ref = oracle::velocity(g, z);
    Point impulse_rate = 0;
    for (int a = 0; a < 4; ++a) {
        EXPECT_LT(std::abs(v[a] - ref[a]), 1e-13);
        impulse_rate += g[a] * v[a];
    }
    EXPECT_LT(std::abs(impulse_rate), 1e-14);
}

TEST(CartesianField, RejectsCoincidentVortices)
{
    const Vorticities g(1, 1, -1);
    EXPECT_THROW(cartesian_field(g, CartesianState{{{0, 0}, {0, 0}, {1, 1}}}), CollisionError);
}

TEST(IntegrateCartesian, AgreesWithFixedStepReference)
{
    oracle::Generator gen(23);
    IntegratorConfig cfg;
    cfg.horizon = 1.0;
    for (int k = 0; k < 5; ++k) {
        const auto g = gen.mixed_vorticities();
        const auto z = gen.triangle(0.4, 0.1);
        const auto traj = integrate_cartesian(Vorticities(g), bridge::state(z), cfg);
        ASSERT_EQ(traj.halt_reason, HaltReason::HorizonReached);
        const auto ref = oracle::rk4(g, z, 1.0, 20000);
        for (int a = 0; a < 3; ++a) {
            EXPECT_LT(std::abs(traj.final_state().positions[a] - ref[a]), 1e-8);
        }
    }
}

TEST(IntegrateCartesian, ConservesInvariants)
{
    oracle::Generator gen(25);
    IntegratorConfig cfg;
    cfg.horizon = 5.0;
    for (int k = 0; k < 5; ++k) {
        const auto g = gen.mixed_vorticities();
        const auto traj = integrate_cartesian(Vorticities(g), bridge::state(gen.triangle()), cfg);
        EXPECT_LT(traj.drift.H, 1e-9);
        EXPECT_LT(traj.drift.M, 1e-9);
        EXPECT_LT(traj.drift.Z, 1e-9);
        // Drift reported by the integrator is consistent with a direct evaluation at the end.
        const auto z0 = bridge::positions(traj.samples.front().state);
        const auto z1 = bridge::positions(traj.final_state());
        EXPECT_NEAR(oracle::hamiltonian(g, z1), oracle::hamiltonian(g, z0), 1e-9);
    }
}

TEST(IntegrateCartesian, EqualVorticesRotateRigidly)
{
    // Equilateral, side 1, unit circulations: angular velocity 3 / (2 pi).
    const Vorticities g(1, 1, 1);
    const CartesianState z{{std::polar(1 / std::sqrt(3.0), 0.0), std::polar(1 / std::sqrt(3.0), 2 * pi / 3),
                            std::polar(1 / std::sqrt(3.0), 4 * pi / 3)}};
    IntegratorConfig cfg;
    cfg.horizon = 2.0;
    const auto traj = integrate_cartesian(g, z, cfg);
    const double omega = 3.0 / (2.0 * pi);
    const Point expected = z.positions[0] * std::polar(1.0, omega * 2.0);
    EXPECT_LT(std::abs(traj.final_state().positions[0] - expected), 1e-9);
}

TEST(IntegrateCartesian, HaltsBeforeTotalCollision)
{
    const Vorticities g(1, 1, -0.5);
    // b = (1, 3, 2) lies on the zero-moment plane and collapses for this orientation.
    const auto z = bridge::state(oracle::triangle({1, 3, 2}, +1));
    IntegratorConfig cfg;
    cfg.horizon = 50.0;
    const auto traj = integrate_cartesian(g, z, cfg);
    EXPECT_EQ(traj.halt_reason, HaltReason::CollisionApproach);
    EXPECT_LT(traj.final_time(), 50.0);
}

TEST(BinaryProximity, FlagsOnlyIsolatedShortSides)
{
    EXPECT_TRUE(near_binary_collision({1e-12, 1.0, 1.0}));
    EXPECT_FALSE(near_binary_collision({1e-12, 1e-12, 1e-12}));
    EXPECT_FALSE(near_binary_collision({0.5, 1.0, 1.0}));
    EXPECT_NEAR(min_side_ratio({1, 2, 3}), 1.0 / 6.0, 1e-15);
}
