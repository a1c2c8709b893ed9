#include <gtest/gtest.h>

#include <vortex3/collapse.hpp>

#include "bridge.hpp"
#include "frozen.hpp"
#include "oracles.hpp"

using namespace vortex3;

TEST(Canonicalize, CyclicShiftToConvention)
{
    oracle::Generator gen(51);
    for (int k = 0; k < 50; ++k) {
        const Vorticities g(gen.mixed_vorticities());
        const auto [cg, shift] = canonicalize(g);
        EXPECT_TRUE(is_canonical(cg));
        EXPECT_EQ(cg, g.rotated(shift));
    }
    EXPECT_THROW(canonicalize(Vorticities(1, 2, 3)), SignConventionError);
    EXPECT_EQ(canonicalize(Vorticities(-1, 2, 3)).shift, 1u);
}

TEST(Canonicalize, RelabellingKeepsTheTriangle)
{
    const ShapeState s{{2, 3, 4}, Orientation::Positive};
    const ShapeState r = relabelled(s, 1);
    EXPECT_EQ(r.b, (std::array<double, 3>{3, 4, 2}));
    EXPECT_EQ(r.eps, s.eps);
    const Vorticities g(-1, 2, 3);
    EXPECT_NEAR(moment_of_shape(g, s.b), moment_of_shape(g.rotated(1), r.b), 1e-14);
}

TEST(TRegion, FrozenRootsForHalfVorticity)
{
    const auto region = t_region(Vorticities(1, 1, -0.5));
    ASSERT_TRUE(region.exists);
    EXPECT_NEAR(region.p_lo, frozen::half_p_lo, 1e-15);
    EXPECT_NEAR(region.p_hi, frozen::half_p_hi, 1e-13);
    const auto ref = oracle::boundary_roots(0.5, 0.5);
    EXPECT_NEAR(region.p_lo, static_cast<double>(ref.lo), 1e-15);
    EXPECT_NEAR(region.p_hi, static_cast<double>(ref.hi), 1e-13);
}

TEST(TRegion, RootsAgreeWithIndependentSolver)
{
    oracle::Generator gen(53);
    int checked = 0;
    for (int k = 0; k < 500; ++k) {
        const double m = gen.uniform(0.05, 4.0), n = gen.uniform(0.05, 4.0);
        const Vorticities g(1 / m, 1 / n, -1);
        const auto region = t_region(g);
        const auto ref = oracle::boundary_roots(m, n);
        const bool beta_positive = m + n - m * n > 0;
        EXPECT_EQ(region.exists, beta_positive);
        if (!beta_positive || std::abs(n - 1) < 1e-3 || std::abs(m - 1) < 1e-3) {
            continue;
        }
        ++checked;
        EXPECT_NEAR(region.p_lo, static_cast<double>(ref.lo), 1e-9 * static_cast<double>(ref.lo));
        EXPECT_NEAR(region.p_hi, static_cast<double>(ref.hi), 1e-9 * static_cast<double>(ref.hi));
        EXPECT_NEAR(region.p_lo * region.p_hi, (m - 1) * (m - 1) / ((n - 1) * (n - 1)),
                    1e-10 * region.p_lo * region.p_hi);
        // Interior slopes give admissible triangles, slopes outside give none.
        const double mid = std::sqrt(region.p_lo * region.p_hi);
        EXPECT_EQ(admissibility(1, mid, m + n * mid), Admissibility::Interior);
        EXPECT_EQ(admissibility(1, 2 * region.p_hi, m + n * 2 * region.p_hi), Admissibility::Outside);
    }
    EXPECT_GT(checked, 100);
}

TEST(TRegion, DegenerateAndEmptyCases)
{
    // Zero total circulation: beta = 0 and the region collapses to one ray.
    const auto line = t_region(Vorticities(1, 2, -3));
    EXPECT_TRUE(line.exists);
    EXPECT_TRUE(line.degenerate);
    EXPECT_NEAR(line.p_lo, 4.0, 1e-12);
    EXPECT_EQ(admissibility(1, 4, 9), Admissibility::Boundary);
    // m = n = 3 gives beta = -3.
    EXPECT_FALSE(t_region(Vorticities(1.0 / 3, 1.0 / 3, -1)).exists);
    EXPECT_THROW(t_region(Vorticities(-1, 1, 1)), PreconditionError);
}

TEST(OrbitCurve, LiesOnPlaneWithPrescribedEnergy)
{
    const Vorticities g(1, 2, -0.3);
    const auto region = t_region(g);
    for (double p : {region.p_lo * 1.01, 1.0, region.p_hi * 0.99}) {
        const auto b = orbit_curve(g, 0.7, p);
        EXPECT_NEAR(b[1] / b[0], p, 1e-12 * p);
        EXPECT_TRUE(on_zero_moment_plane(g, b));
        EXPECT_NEAR(b[2] / (std::pow(b[0], g.m()) * std::pow(b[1], g.n())), 0.7, 1e-12);
    }
    EXPECT_THROW(orbit_curve(Vorticities(1, 1, -0.5), 1.0, 2.0), GammaZeroError);
}

TEST(SelfSimilarRay, ConstantEnergyAlongRay)
{
    const Vorticities g(1, 1, -0.5);
    const auto ray = self_similar_ray(g, 3.0);
    for (double scale : {0.1, 1.0, 10.0}) {
        std::array<double, 3> b{};
        for (int i = 0; i < 3; ++i) {
            b[i] = scale * ray.direction[i];
        }
        EXPECT_TRUE(on_zero_moment_plane(g, b));
        EXPECT_NEAR(b[2] / (std::pow(b[0], g.m()) * std::pow(b[1], g.n())), ray.h, 1e-12 * ray.h);
    }
    EXPECT_THROW(self_similar_ray(g, 100.0), OutOfRegionError);
    EXPECT_THROW(self_similar_ray(Vorticities(1, 2, -0.3), 1.0), PreconditionError);
}

TEST(Classify, CollapseEjectionAndStrata)
{
    const Vorticities g(1, 1, -0.5);
    const auto collapse = classify(g, ShapeState{{1, 3, 2}, Orientation::Positive});
    EXPECT_EQ(collapse.kind, OrbitKind::SelfSimilarFamily);
    EXPECT_EQ(collapse.direction, CollapseDirection::Collapse);
    EXPECT_FALSE(collapse.non_collision);
    EXPECT_EQ(classify(g, ShapeState{{1, 3, 2}, Orientation::Negative}).direction, CollapseDirection::Ejection);
    EXPECT_EQ(classify(g, ShapeState{{3, 1, 2}, Orientation::Positive}).direction, CollapseDirection::Ejection);

    const auto off = classify(g, ShapeState{{1, 3, 2.5}, Orientation::Positive});
    EXPECT_TRUE(off.non_collision);
    EXPECT_FALSE(off.direction.has_value());

    EXPECT_EQ(stratum_of(Vorticities(1, 1, -1.0 / 3)), OrbitKind::BoundedCurve);
    EXPECT_EQ(stratum_of(Vorticities(2, 0.5, -0.7)), OrbitKind::UnboundedCurve);
    EXPECT_EQ(stratum_of(Vorticities(1, 2, -3)), OrbitKind::EquilibriumLine);
    EXPECT_EQ(stratum_of(Vorticities(1.0 / 3, 1.0 / 3, -1)), OrbitKind::Empty);

    const auto same = classify(Vorticities(1, 1, 1), ShapeState{{1, 1, 1}, Orientation::Positive});
    EXPECT_FALSE(same.mixed_signs);
    EXPECT_TRUE(same.non_collision);
    EXPECT_EQ(same.direction, CollapseDirection::RelativeEquilibrium);
}

TEST(Classify, RelabelledVorticitiesGiveSameAnswer)
{
    const Vorticities g(1, 1, -0.5);
    const ShapeState s{{1, 3, 2}, Orientation::Positive};
    // Put the odd vortex first: vortex k of g2 is vortex (k + 2) mod 3 of g.
    const Vorticities g2 = g.rotated(2);
    const ShapeState s2 = relabelled(s, 2);
    const auto c = classify(g2, s2);
    EXPECT_EQ(c.kind, OrbitKind::SelfSimilarFamily);
    EXPECT_EQ(c.direction, CollapseDirection::Collapse);
    EXPECT_EQ(c.shift, 1u);
}

TEST(LambdaRate, ClosedFormMatchesShapeField)
{
    const Vorticities g(1, 1, -0.5);
    oracle::Generator gen(55);
    const auto region = t_region(g);
    for (int k = 0; k < 30; ++k) {
        const double p = std::exp(gen.uniform(std::log(region.p_lo) + 0.01, std::log(region.p_hi) - 0.01));
        const Orientation eps = gen.integer(0, 1) ? Orientation::Positive : Orientation::Negative;
        const ShapeState s{{1, p, g.m() + g.n() * p}, eps};
        const auto rate = shape_field(g, s);
        EXPECT_NEAR(lambda_rate_closed_form(g, s), rate[0] + rate[1] + rate[2], 1e-12);
        const int expected = std::abs(p - 1) < 1e-12 ? 0 : (rate[0] + rate[1] + rate[2] > 0 ? 1 : -1);
        EXPECT_EQ(lambda_rate_sign(g, s), expected);
    }
    EXPECT_THROW(lambda_rate_closed_form(g, ShapeState{{1, 3, 2.5}, Orientation::Positive}), PreconditionError);
}

TEST(Gates, RelativeTolerances)
{
    EXPECT_TRUE(gamma_vanishes(Vorticities(1, 1, -0.5)));
    EXPECT_FALSE(gamma_vanishes(Vorticities(1, 1, -0.5 + 1e-6)));
    EXPECT_TRUE(beta_vanishes(Vorticities(1, 2, -3)));
    EXPECT_TRUE(on_zero_moment_plane(Vorticities(1, 1, -0.5), {1e6, 3e6, 2e6}));
    EXPECT_FALSE(on_zero_moment_plane(Vorticities(1, 1, -0.5), {1, 3, 2 + 1e-6}));
    EXPECT_TRUE(is_equilateral({2, 2, 2}));
    EXPECT_FALSE(is_equilateral({2, 2, 2.001}));
}
