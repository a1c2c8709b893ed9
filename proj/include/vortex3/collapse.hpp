#ifndef VORTEX3_COLLAPSE_HPP
#define VORTEX3_COLLAPSE_HPP

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include <vortex3/core.hpp>
#include <vortex3/shape.hpp>

namespace vortex3 {

//! Relative tolerance of the codimension-one gates gamma = 0, beta = 0 and M = 0.
inline constexpr double gate_tolerance = 1e-9;
//! Relative spread of the b_i below which a shape counts as equilateral.
inline constexpr double equilateral_spread_tolerance = 1e-10;

//! Vorticities cyclically relabelled so that g1 g2 > 0 and g1 g3 < 0.
//! Canonical vortex k is original vortex (k + shift) mod 3; cyclic relabelling keeps orientation.
struct CanonicalVorticities {
    Vorticities g;
    std::size_t shift = 0;
};

inline bool is_canonical(const Vorticities& g) noexcept { return g[0] * g[1] > 0 && g[0] * g[2] < 0; }

inline CanonicalVorticities canonicalize(const Vorticities& g)
{
    if (!g.mixed_signs()) {
        throw SignConventionError("all circulations share a sign; no total collision is possible");
    }
    for (std::size_t shift = 0; shift < 3; ++shift) {
        const Vorticities r = g.rotated(shift);
        if (is_canonical(r)) {
            return {r, shift};
        }
    }
    throw SignConventionError("no cyclic relabelling reaches the sign convention"); // unreachable
}

inline ShapeState relabelled(const ShapeState& s, std::size_t shift)
{
    return {{s.b[shift % 3], s.b[(shift + 1) % 3], s.b[(shift + 2) % 3]}, s.eps};
}

inline bool gamma_vanishes(const Vorticities& g)
{
    return std::abs(g.gamma()) <= gate_tolerance * (std::abs(g.m()) + std::abs(g.n()) + 1.0);
}

inline bool beta_vanishes(const Vorticities& g)
{
    return std::abs(g.beta()) <= gate_tolerance * (std::abs(g.m()) + std::abs(g.n()) + 1.0);
}

//! M = 0 test written as b3 - m b1 - n b2 = 0 and normalized by the magnitude of its terms.
inline bool on_zero_moment_plane(const Vorticities& g, const std::array<double, 3>& b)
{
    const double m = g.m(), n = g.n();
    const double residual = b[2] - m * b[0] - n * b[1];
    return std::abs(residual) <= gate_tolerance * (b[2] + std::abs(m) * b[0] + std::abs(n) * b[1]);
}

inline bool is_equilateral(const std::array<double, 3>& b)
{
    const double hi = std::max({b[0], b[1], b[2]});
    const double lo = std::min({b[0], b[1], b[2]});
    return hi - lo <= equilateral_spread_tolerance * hi;
}

//! Coefficients (a, b, c) of a p^2 + b p + c = 0, whose roots are the slopes p = b2/b1 of the
//! collinear rays bounding the M = 0 region.
inline std::array<double, 3> boundary_quadratic(const Vorticities& g)
{
    const double m = g.m(), n = g.n();
    return {(n - 1) * (n - 1), 2.0 * (m * n - m - n - 1.0), (m - 1) * (m - 1)};
}

//! Region T = {admissible cone} ∩ {M = 0}, described by the slopes of its boundary rays.
struct TRegion {
    bool exists = false;
    bool degenerate = false;
    double p_lo = std::numeric_limits<double>::quiet_NaN();
    double p_hi = std::numeric_limits<double>::quiet_NaN();
};

//! Requires the canonical sign convention g1 g2 > 0 > g1 g3 (see canonicalize()).
inline TRegion t_region(const Vorticities& g)
{
    if (!g.mixed_signs()) {
        throw SignConventionError("all circulations share a sign; the M = 0 region is empty of collisions");
    }
    if (!is_canonical(g)) {
        throw PreconditionError("t_region expects g1 g2 > 0 and g1 g3 < 0; canonicalize() first");
    }
    const double m = g.m(), n = g.n();
    const double beta = g.beta();
    TRegion region;
    if (beta_vanishes(g)) {
        region.exists = true;
        region.degenerate = true;
        region.p_lo = region.p_hi = 1.0 / ((n - 1) * (n - 1));
        return region;
    }
    if (beta < 0) {
        return region;
    }
    region.exists = true;
    const double root = std::sqrt(beta);
    // (1 - sqrt(beta))^2 / (n - 1)^2 rewritten without cancellation using 1 - beta = (1 - m)(1 - n).
    region.p_lo = std::abs(m - 1) <= gate_tolerance ? 0.0 : (1 - m) * (1 - m) / ((1 + root) * (1 + root));
    region.p_hi = std::abs(n - 1) <= gate_tolerance ? std::numeric_limits<double>::infinity()
                                                    : (1 + root) * (1 + root) / ((n - 1) * (n - 1));
    return region;
}

//! Point (x, y, z) = (b1, b2, b3) of the M = 0, energy-h orbit at ray slope p (gamma != 0).
inline std::array<double, 3> orbit_curve(const Vorticities& g, double h, double p)
{
    if (!is_canonical(g)) {
        throw PreconditionError("orbit_curve expects the canonical sign convention");
    }
    if (gamma_vanishes(g)) {
        throw GammaZeroError("orbit curve degenerates to rays when gamma = 0; use self_similar_ray");
    }
    if (!(h > 0) || !(p > 0) || !std::isfinite(p)) {
        throw DomainError("orbit_curve needs h > 0 and 0 < p < inf");
    }
    const double m = g.m(), n = g.n(), gamma = g.gamma();
    const double x = std::exp((std::log(h) + n * std::log(p) - std::log(m + n * p)) / gamma);
    const double y = p * x;
    return {x, y, m * x + n * y};
}

struct SelfSimilarRay {
    std::array<double, 3> direction; //!< unit vector along (1, p, m + n p)
    double h = 0;                    //!< energy parameter shared by every point of the ray
};

inline SelfSimilarRay self_similar_ray(const Vorticities& g, double p)
{
    if (!is_canonical(g)) {
        throw PreconditionError("self_similar_ray expects the canonical sign convention");
    }
    if (!gamma_vanishes(g)) {
        throw PreconditionError("self-similar rays exist only when gamma = 0");
    }
    const TRegion region = t_region(g);
    const double slack = 1e-12 * std::max(1.0, p);
    if (!(p > 0) || !region.exists || p < region.p_lo - slack || p > region.p_hi + slack) {
        throw OutOfRegionError("ray slope lies outside the M = 0 region");
    }
    const double m = g.m(), n = g.n();
    const std::array<double, 3> b{1.0, p, m + n * p};
    const double norm = std::sqrt(b[0] * b[0] + b[1] * b[1] + b[2] * b[2]);
    return {{b[0] / norm, b[1] / norm, b[2] / norm}, b[2] / std::pow(p, n)};
}

enum class OrbitKind { SelfSimilarFamily, BoundedCurve, UnboundedCurve, EquilibriumLine, Empty };
enum class CollapseDirection { Collapse, Ejection, RelativeEquilibrium };

inline std::string to_string(OrbitKind k)
{
    switch (k) {
    case OrbitKind::SelfSimilarFamily: return "SelfSimilarFamily";
    case OrbitKind::BoundedCurve: return "BoundedCurve";
    case OrbitKind::UnboundedCurve: return "UnboundedCurve";
    case OrbitKind::EquilibriumLine: return "EquilibriumLine";
    case OrbitKind::Empty: return "Empty";
    }
    return "?";
}

inline std::string to_string(CollapseDirection d)
{
    switch (d) {
    case CollapseDirection::Collapse: return "Collapse";
    case CollapseDirection::Ejection: return "Ejection";
    case CollapseDirection::RelativeEquilibrium: return "RelativeEquilibrium";
    }
    return "?";
}

struct OrbitClassification {
    OrbitKind kind = OrbitKind::Empty;
    std::optional<CollapseDirection> direction;
    //! The state is off the M = 0 plane (or in an empty stratum), so it can never reach total collision.
    bool non_collision = true;
    bool mixed_signs = true;
    std::size_t shift = 0; //!< cyclic relabelling applied before the analysis
    double M = 0;
};

//! Stratum of the vorticities: Empty (beta < 0), EquilibriumLine (beta = 0),
//! SelfSimilarFamily (gamma = 0), else Bounded/UnboundedCurve by the sign of gamma.
inline OrbitKind stratum_of(const Vorticities& canonical)
{
    if (beta_vanishes(canonical)) {
        return OrbitKind::EquilibriumLine;
    }
    if (canonical.beta() < 0) {
        return OrbitKind::Empty;
    }
    if (gamma_vanishes(canonical)) {
        return OrbitKind::SelfSimilarFamily;
    }
    return canonical.gamma() > 0 ? OrbitKind::BoundedCurve : OrbitKind::UnboundedCurve;
}

//! Equilateral, or collinear with vanishing area rate.
inline bool is_relative_equilibrium_shape(const Vorticities& g, const ShapeState& s)
{
    if (is_equilateral(s.b)) {
        return true;
    }
    const bool collinear = s.eps == Orientation::Collinear || admissibility(s.b) == Admissibility::Boundary;
    const double scale = std::max({std::abs(g[0]), std::abs(g[1]), std::abs(g[2])});
    return collinear && std::abs(area_rate(g, s.b)) <= gate_tolerance * scale;
}

inline OrbitClassification classify(const Vorticities& g, const ShapeState& s)
{
    OrbitClassification out;
    out.M = moment_of_shape(g, s.b);
    const bool equilibrium = is_relative_equilibrium_shape(g, s);
    if (!g.mixed_signs()) {
        out.mixed_signs = false;
        out.kind = g.gamma() > 0 ? OrbitKind::BoundedCurve : OrbitKind::UnboundedCurve;
        if (equilibrium) {
            out.direction = CollapseDirection::RelativeEquilibrium;
        }
        return out;
    }
    const auto [cg, shift] = canonicalize(g);
    const ShapeState cs = relabelled(s, shift);
    out.shift = shift;
    out.kind = stratum_of(cg);
    const bool on_plane = on_zero_moment_plane(cg, cs.b);
    out.non_collision = !on_plane || out.kind == OrbitKind::Empty;

    if (on_plane && out.kind == OrbitKind::SelfSimilarFamily) {
        const double spread = cs.b[1] - cs.b[0];
        if (cs.eps == Orientation::Collinear || std::abs(spread) <= equilateral_spread_tolerance * (cs.b[0] + cs.b[1])) {
            out.direction = CollapseDirection::RelativeEquilibrium;
        } else {
            // sign(lambda') = sign(g3 alpha sin(theta)), and sin(theta) has the sign of b2 - b1.
            const double sign = cg[2] * sign_of(cs.eps) * spread;
            out.direction = sign < 0 ? CollapseDirection::Collapse : CollapseDirection::Ejection;
        }
    } else if (on_plane && out.kind == OrbitKind::EquilibriumLine) {
        out.direction = CollapseDirection::RelativeEquilibrium;
    } else if (equilibrium) {
        out.direction = CollapseDirection::RelativeEquilibrium;
    }
    return out;
}

namespace detail {

struct SelfSimilarContext {
    Vorticities g;
    ShapeState s;
};

inline SelfSimilarContext require_self_similar(const Vorticities& g, const ShapeState& s)
{
    const auto [cg, shift] = canonicalize(g);
    const ShapeState cs = relabelled(s, shift);
    if (!gamma_vanishes(cg)) {
        throw PreconditionError("lambda-rate formula requires gamma = 0");
    }
    if (!on_zero_moment_plane(cg, cs.b)) {
        throw PreconditionError("lambda-rate formula requires M = 0");
    }
    if (cs.eps == Orientation::Collinear) {
        throw PreconditionError("lambda-rate formula requires a non-collinear state");
    }
    return {cg, cs};
}

} // namespace detail

//! lambda' on the M = 0, gamma = 0 stratum, evaluated from the slope p = b2/b1:
//! lambda' b3 / (g3 A) = (2/pi) ((2 - m) p + m + 1)(p - 1) / p.
inline double lambda_rate_closed_form(const Vorticities& g, const ShapeState& s)
{
    const auto [cg, cs] = detail::require_self_similar(g, s);
    const double m = cg.m();
    const double p = cs.b[1] / cs.b[0];
    return shape_rate_factor * cg[2] * area(cs) / cs.b[2] * ((2.0 - m) * p + m + 1.0) * (p - 1.0) / p;
}

//! Sign of lambda' on self-similar orbits: -1 collapse, +1 ejection, 0 at the equilateral ray.
inline int lambda_rate_sign(const Vorticities& g, const ShapeState& s)
{
    const auto [cg, cs] = detail::require_self_similar(g, s);
    if (std::abs(cs.b[1] - cs.b[0]) <= equilateral_spread_tolerance * (cs.b[0] + cs.b[1])) {
        return 0;
    }
    const double rate = lambda_rate_closed_form(g, s);
    return rate > 0 ? 1 : (rate < 0 ? -1 : 0);
}

} // namespace vortex3

#endif // VORTEX3_COLLAPSE_HPP
