#include <gtest/gtest.h>

#include <vortex3/equilibria.hpp>
#include <vortex3/regularized.hpp>

#include "bridge.hpp"
#include "frozen.hpp"
#include "oracles.hpp"

using namespace vortex3;

TEST(IsEquilibrium, EquilateralAndCollinearCases)
{
    EXPECT_EQ(is_equilibrium(Vorticities(1, -2, 0.5), ShapeState{{3, 3, 3}, Orientation::Positive}).reason,
              EquilibriumReason::Equilateral);
    // Zero total circulation: every shape of the degenerate ray is an equilibrium.
    EXPECT_EQ(is_equilibrium(Vorticities(1, 2, -3), ShapeState{{1, 4, 9}, Orientation::Collinear}).reason,
              EquilibriumReason::CollinearAdotZero);
    EXPECT_FALSE(is_equilibrium(Vorticities(1, 1, -1.0 / 3), ShapeState{{1, 2, 1.5}, Orientation::Positive}).equilibrium);
    EXPECT_THROW(is_equilibrium(Vorticities(1, 1, 1), ShapeState{{1, 1, 5}, Orientation::Positive}), DomainError);
}

TEST(CollinearAdot, FrozenValuesForThirdVorticity)
{
    const Vorticities g(1, 1, -1.0 / 3);
    const auto lo = collinear_adot(g, frozen::third_p_lo);
    const auto hi = collinear_adot(g, frozen::third_p_hi);
    EXPECT_NEAR(lo.sum_form, frozen::third_sum_at_lo, 1e-12);
    EXPECT_NEAR(hi.sum_form, frozen::third_sum_at_hi, 1e-12);
    EXPECT_EQ(hi.branch, 1);
    EXPECT_EQ(lo.branch, -1);
    EXPECT_NEAR(lo.sum_form, lo.closed_form, 1e-9 * std::abs(lo.closed_form));
    EXPECT_NEAR(hi.sum_form, hi.closed_form, 1e-9 * std::abs(hi.closed_form));
}

TEST(CollinearAdot, SumMatchesClosedFormAndAreaRate)
{
    for (const Vorticities& g : {Vorticities(1, 2, -0.3), Vorticities(2, 0.5, -0.7), Vorticities(1, 1, -1.0 / 3)}) {
        const auto region = t_region(g);
        for (double p : {region.p_lo, region.p_hi}) {
            const auto r = collinear_adot(g, p);
            EXPECT_NEAR(r.sum_form, r.closed_form, 1e-9 * std::abs(r.closed_form));
            EXPECT_NEAR(r.adot, area_rate(g, std::array<double, 3>{1, p, g.m() + g.n() * p}), 1e-12);
        }
    }
    const auto region = t_region(Vorticities(1, 2, -0.3));
    EXPECT_NEAR(std::abs(collinear_adot(Vorticities(1, 2, -0.3), region.p_hi).sum_form), frozen::mixed_sum, 1e-10);
    const auto skew = t_region(Vorticities(2, 0.5, -0.7));
    EXPECT_NEAR(std::abs(collinear_adot(Vorticities(2, 0.5, -0.7), skew.p_hi).sum_form), frozen::skewed_sum, 1e-10);
}

TEST(CollinearAdot, VanishesWhenVirialVanishes)
{
    const Vorticities g(1, 1, -0.5);
    const auto region = t_region(g);
    for (double p : {region.p_lo, region.p_hi}) {
        EXPECT_NEAR(collinear_adot(g, p).adot, 0.0, 1e-14);
    }
}

TEST(CollinearAdot, Preconditions)
{
    EXPECT_THROW(collinear_adot(Vorticities(-1, 1, 1), 1.0), PreconditionError);
    EXPECT_THROW(collinear_adot(Vorticities(1, 1, -1.0 / 3), 1.0), PreconditionError);
    EXPECT_THROW(collinear_adot(Vorticities(1.0 / 3, 1.0 / 3, -1), 1.0), PreconditionError);
}

TEST(Manifold, StrataOfEquilibria)
{
    const auto v0 = equilibrium_manifold(Vorticities(1, 1, -0.5));
    EXPECT_TRUE(v0.equilateral_ray);
    EXPECT_TRUE(v0.equilateral_in_region);
    ASSERT_EQ(v0.collinear_rays.size(), 2u);
    EXPECT_NEAR(v0.collinear_rays[0], frozen::half_p_lo, 1e-15);

    const auto line = equilibrium_manifold(Vorticities(1, 1, -2));
    EXPECT_TRUE(line.equilibrium_line);
    EXPECT_NEAR(*line.line_slope, 1.0, 1e-12);

    const auto generic = equilibrium_manifold(Vorticities(1, 1, -1.0 / 3));
    EXPECT_FALSE(generic.equilateral_in_region);
    EXPECT_TRUE(generic.collinear_rays.empty());

    EXPECT_FALSE(equilibrium_manifold(Vorticities(1, 1, 1)).mixed_signs);
}

TEST(Manifold, CollinearRaysAreStationaryUnderRegularizedFlow)
{
    const Vorticities g(1, 1, -0.5);
    for (double p : equilibrium_manifold(g).collinear_rays) {
        const ShapeState s{{1, p, g.m() + g.n() * p}, Orientation::Collinear};
        const auto r = to_regularized(s);
        const auto rate = regularized_field(g, r);
        EXPECT_NEAR(rate[0], 0.0, 1e-14);
        EXPECT_NEAR(rate[1], 0.0, 1e-14);
    }
}
