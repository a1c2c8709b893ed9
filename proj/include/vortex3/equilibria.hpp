#ifndef VORTEX3_EQUILIBRIA_HPP
#define VORTEX3_EQUILIBRIA_HPP

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <vortex3/collapse.hpp>
#include <vortex3/core.hpp>
#include <vortex3/shape.hpp>

namespace vortex3 {

enum class EquilibriumReason { Equilateral, CollinearAdotZero, No };

inline std::string to_string(EquilibriumReason r)
{
    switch (r) {
    case EquilibriumReason::Equilateral: return "Equilateral";
    case EquilibriumReason::CollinearAdotZero: return "CollinearAdotZero";
    case EquilibriumReason::No: return "No";
    }
    return "?";
}

struct EquilibriumCheck {
    bool equilibrium = false;
    EquilibriumReason reason = EquilibriumReason::No;
};

//! Relative equilibria are the equilateral shapes and the collinear shapes with dA/dt = 0.
inline EquilibriumCheck is_equilibrium(const Vorticities& g, const ShapeState& s)
{
    detail::require_no_binary_collision(s.b);
    if (admissibility(s.b) == Admissibility::Outside) {
        throw DomainError("is_equilibrium needs an admissible shape");
    }
    if (is_equilateral(s.b)) {
        return {true, EquilibriumReason::Equilateral};
    }
    if (is_relative_equilibrium_shape(g, s)) {
        return {true, EquilibriumReason::CollinearAdotZero};
    }
    return {false, EquilibriumReason::No};
}

//! dA/dt at a collinear M = 0 state, evaluated two independent ways.
struct CollinearAreaRate {
    //! c dA/dt from (1/m) b_123 + (1/n) b_231 - b_312 with c = -8 pi / g3.
    double sum_form = 0;
    //! 2 eps sqrt(beta) gamma / (beta + gamma - 1).
    double closed_form = 0;
    //! eps: +1 on the root (1 + sqrt(beta))^2 / (n - 1)^2, -1 on the other root.
    int branch = 1;
    double adot = 0;
};

//! p must be a root of the boundary quadratic, i.e. the slope b2/b1 of a collinear ray of the
//! M = 0 region; g must follow the canonical sign convention.
inline CollinearAreaRate collinear_adot(const Vorticities& g, double p)
{
    if (!is_canonical(g)) {
        throw PreconditionError("collinear_adot expects the canonical sign convention");
    }
    const double m = g.m(), n = g.n(), beta = g.beta(), gamma = g.gamma();
    if (m * n == 0.0 || beta + gamma - 1.0 == 0.0) {
        throw DegenerateError("beta + gamma = 1 makes the closed form singular");
    }
    const TRegion region = t_region(g);
    if (!region.exists) {
        throw PreconditionError("no collinear M = 0 states exist when beta < 0");
    }
    const auto q = boundary_quadratic(g);
    const double residual = q[0] * p * p + q[1] * p + q[2];
    if (!(p > 0) || !std::isfinite(p) ||
        std::abs(residual) > 1e-8 * (std::abs(q[0]) * p * p + std::abs(q[1]) * p + std::abs(q[2]))) {
        throw PreconditionError("p is not a root of the boundary quadratic");
    }

    CollinearAreaRate out;
    if (!region.degenerate) {
        const double to_hi = std::isfinite(region.p_hi) ? std::abs(std::log(p / region.p_hi)) : INFINITY;
        const double to_lo = region.p_lo > 0 ? std::abs(std::log(p / region.p_lo)) : INFINITY;
        out.branch = to_hi <= to_lo ? 1 : -1;
    }

    const std::array<double, 3> b{1.0, p, m + n * p};
    auto bijk = [&](std::size_t i) {
        const std::size_t j = next(i), k = prev(i);
        return (b[i] / b[j] - b[i] / b[k]) * (b[j] / b[i] + b[k] / b[i] - 1.0);
    };
    out.sum_form = bijk(0) / m + bijk(1) / n - bijk(2);
    out.closed_form = 2.0 * out.branch * std::sqrt(std::max(beta, 0.0)) * gamma / (beta + gamma - 1.0);
    const double c = -1.0 / (area_rate_factor * g[2]);
    out.adot = out.sum_form / c;
    return out;
}

struct EquilibriumManifold {
    //! Equilateral shapes are equilibria for every choice of vorticities.
    bool equilateral_ray = true;
    //! The equilateral ray lies in the M = 0 region (gamma = 0).
    bool equilateral_in_region = false;
    //! Slopes b2/b1 (canonical labels) of collinear rays of the M = 0 region made of equilibria.
    std::vector<double> collinear_rays;
    //! The whole M = 0 region is a single line of equilibria (total circulation zero).
    bool equilibrium_line = false;
    std::optional<double> line_slope;
    bool mixed_signs = true;
    std::size_t shift = 0;
};

inline EquilibriumManifold equilibrium_manifold(const Vorticities& g)
{
    EquilibriumManifold out;
    if (!g.mixed_signs()) {
        out.mixed_signs = false;
        return out;
    }
    const auto [cg, shift] = canonicalize(g);
    out.shift = shift;
    const TRegion region = t_region(cg);
    if (!region.exists) {
        return out;
    }
    if (region.degenerate) {
        out.equilibrium_line = true;
        out.line_slope = region.p_lo;
        return out;
    }
    if (gamma_vanishes(cg)) {
        out.equilateral_in_region = true;
        out.collinear_rays = {region.p_lo, region.p_hi};
    }
    return out;
}

} // namespace vortex3

#endif // VORTEX3_EQUILIBRIA_HPP
