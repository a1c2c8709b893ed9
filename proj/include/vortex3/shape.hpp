#ifndef VORTEX3_SHAPE_HPP
#define VORTEX3_SHAPE_HPP

#include <array>
#include <cmath>
#include <optional>

#include <vortex3/cartesian.hpp>
#include <vortex3/core.hpp>
#include <vortex3/ode.hpp>

namespace vortex3 {

//! db_i/dt = shape_rate_factor * g_i * A * (1/b_j - 1/b_k), consistent with the Cartesian field.
inline constexpr double shape_rate_factor = 2.0 / pi;

//! dA/dt = area_rate_factor * sum_i g_i (1/b_j - 1/b_k)(b_j + b_k - b_i).
inline constexpr double area_rate_factor = shape_rate_factor / 16.0;

//! |alpha| below which shape integration hands over to the regularized chart.
inline constexpr double boundary_alpha_threshold = 1e-4;

//! Normalized signed area alpha = 12 A / (sqrt(3) lambda), in [-1, 1].
inline double normalized_area(const ShapeState& s) { return 12.0 * area(s) / (sqrt3 * s.lambda()); }

namespace detail {

inline void require_no_binary_collision(const std::array<double, 3>& b)
{
    for (double bi : b) {
        if (!(bi > 0.0)) {
            throw BinaryCollisionError("a squared mutual distance vanishes");
        }
    }
}

//! Column vector g_i (1/b_j - 1/b_k) shared by the shape and regularized fields.
inline std::array<double, 3> reciprocal_differences(const Vorticities& g, const std::array<double, 3>& b)
{
    std::array<double, 3> v{};
    for (std::size_t i = 0; i < 3; ++i) {
        v[i] = g[i] * (1.0 / b[next(i)] - 1.0 / b[prev(i)]);
    }
    return v;
}

} // namespace detail

//! Rates of the squared mutual distances. Not defined on collinear shapes, where the
//! square root hidden in A makes the field non-Lipschitz.
inline std::array<double, 3> shape_field(const Vorticities& g, const ShapeState& s)
{
    detail::require_no_binary_collision(s.b);
    if (s.eps == Orientation::Collinear) {
        throw BoundaryError("shape_field is singular on collinear configurations");
    }
    const double a = area(s);
    const auto v = detail::reciprocal_differences(g, s.b);
    return {shape_rate_factor * a * v[0], shape_rate_factor * a * v[1], shape_rate_factor * a * v[2]};
}

//! Rate of change of the signed area; independent of the orientation and finite on collinear shapes.
inline double area_rate(const Vorticities& g, const std::array<double, 3>& b)
{
    detail::require_no_binary_collision(b);
    const auto v = detail::reciprocal_differences(g, b);
    double sum = 0;
    for (std::size_t i = 0; i < 3; ++i) {
        sum += v[i] * (b[next(i)] + b[prev(i)] - b[i]);
    }
    return area_rate_factor * sum;
}

inline double area_rate(const Vorticities& g, const ShapeState& s) { return area_rate(g, s.b); }

//! dA/dt from differentiating Heron's formula along shape_field; requires A != 0.
inline double area_rate_chain_rule(const Vorticities& g, const ShapeState& s)
{
    const double a = area(s);
    if (a == 0.0) {
        throw BoundaryError("chain-rule area rate needs a non-degenerate triangle");
    }
    const auto rate = shape_field(g, s);
    double sum = 0;
    for (std::size_t i = 0; i < 3; ++i) {
        sum += (s.b[next(i)] + s.b[prev(i)] - s.b[i]) * rate[i];
    }
    return sum / (16.0 * a);
}

//! Integrates shape_field with the orientation held fixed. Halts with BoundaryApproach once
//! |alpha| < 1e-4, before the orientation could change.
inline Trajectory<ShapeState> integrate_shape(const Vorticities& g, const ShapeState& initial,
                                              const IntegratorConfig& cfg)
{
    detail::require_no_binary_collision(initial.b);
    if (initial.eps == Orientation::Collinear || admissibility(initial.b) != Admissibility::Interior) {
        throw BoundaryError("shape integration must start strictly inside the admissible cone");
    }
    const Orientation eps = initial.eps;

    Trajectory<ShapeState> traj;
    detail::DriftTracker tracker;
    tracker.H0 = energy_of_shape(g, initial.b);
    tracker.M0 = moment_of_shape(g, initial.b);

    auto field = [&](const std::array<double, 3>& b, std::array<double, 3>& db) {
        db = shape_field(g, ShapeState{b, eps});
    };

    struct Monitor {
        const Vorticities& g;
        Orientation eps;
        detail::DriftTracker& tracker;
        Trajectory<ShapeState>& traj;

        std::optional<HaltReason> check(double, const std::array<double, 3>& b)
        {
            traj.min_side_ratio = std::min(traj.min_side_ratio, min_side_ratio(b));
            if (near_binary_collision(b)) {
                return HaltReason::BinaryCollisionApproach;
            }
            tracker.update(energy_of_shape(g, b), moment_of_shape(g, b));
            if (std::abs(normalized_area(ShapeState{b, eps})) < boundary_alpha_threshold) {
                return HaltReason::BoundaryApproach;
            }
            return std::nullopt;
        }

        void record(double t, const std::array<double, 3>& b) { traj.samples.push_back({t, ShapeState{b, eps}}); }
    } monitor{g, eps, tracker, traj};

    const auto res = ode::integrate(field, initial.b, cfg, monitor);
    traj.halt_reason = res.reason;
    traj.stats = res.stats;
    traj.drift = tracker.drift;
    return traj;
}

} // namespace vortex3

#endif // VORTEX3_SHAPE_HPP
