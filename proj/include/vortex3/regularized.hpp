#ifndef VORTEX3_REGULARIZED_HPP
#define VORTEX3_REGULARIZED_HPP

#include <array>
#include <cmath>
#include <optional>

#include <vortex3/cartesian.hpp>
#include <vortex3/core.hpp>
#include <vortex3/ode.hpp>
#include <vortex3/shape.hpp>

namespace vortex3 {

//! Coordinates (alpha, lambda, theta) on (-1, 1) x R+ x S^1.
//!
//! alpha is the signed area normalized by its maximum sqrt(3) lambda / 12, lambda = b1 + b2 + b3,
//! and theta is the polar angle of (b1, b2, b3) in the disc {lambda = const} of the admissible cone,
//! measured from the direction of (lambda/2, lambda/2, 0). alpha = 0 is the collinear set, which
//! the chart covers smoothly; |alpha| = 1 (equilateral shapes) is excluded.
struct RegularizedState {
    double alpha = 0;
    double lambda = 1;
    double theta = 0;
};

using Matrix3 = std::array<std::array<double, 3>, 3>;

//! to_regularized refuses shapes with 1 - |alpha| below this.
inline constexpr double equilateral_tolerance = 1e-10;
//! integrate_regularized stops once 1 - |alpha| falls below this.
inline constexpr double equilateral_approach_threshold = 1e-8;
//! from_regularized treats b_i <= binary_collision_floor * lambda as a collision.
inline constexpr double binary_collision_floor = 1e-14;

inline double canonical_angle(double theta)
{
    double t = std::fmod(theta, 2.0 * pi);
    if (t < 0) {
        t += 2.0 * pi;
    }
    return t >= 2.0 * pi ? 0.0 : t;
}

inline void validate(const RegularizedState& r)
{
    if (!(std::abs(r.alpha) < 1.0)) {
        throw DomainError("alpha must lie strictly inside (-1, 1)");
    }
    if (!(r.lambda > 0.0) || !std::isfinite(r.lambda)) {
        throw DomainError("lambda must be positive and finite");
    }
    if (!std::isfinite(r.theta)) {
        throw DomainError("theta must be finite");
    }
}

//! b_i as functions of (alpha, lambda, theta), without any domain checks.
inline std::array<double, 3> shape_triple(const RegularizedState& r) noexcept
{
    const double s = std::sqrt(std::max(0.0, 1.0 - r.alpha * r.alpha));
    const double c = std::cos(r.theta);
    const double sn = std::sin(r.theta);
    return {r.lambda / 6.0 * (2.0 + s * (c - sqrt3 * sn)), r.lambda / 6.0 * (2.0 + s * (c + sqrt3 * sn)),
            r.lambda / 3.0 * (1.0 - s * c)};
}

inline RegularizedState to_regularized(const ShapeState& s)
{
    detail::require_no_binary_collision(s.b);
    const double lambda = s.lambda();
    const double alpha = normalized_area(s);
    const double x = lambda - 3.0 * s.b[2];
    const double y = sqrt3 * (s.b[1] - s.b[0]);
    if (1.0 - std::abs(alpha) < equilateral_tolerance || (x == 0.0 && y == 0.0)) {
        throw EquilateralError("theta is undefined at equilateral configurations");
    }
    return {std::clamp(alpha, -1.0, 1.0), lambda, canonical_angle(std::atan2(y, x))};
}

inline ShapeState from_regularized(const RegularizedState& r)
{
    validate(r);
    const auto b = shape_triple(r);
    for (double bi : b) {
        // Round-off level sides count as zero: theta = 2 pi / 3 does not give an exact 0.
        if (!(bi > binary_collision_floor * r.lambda)) {
            throw BinaryCollisionError("regularized state lies on the binary-collision set");
        }
    }
    return {b, orientation_from(r.alpha)};
}

//! The matrix B with D(alpha, lambda, theta)/D(b1, b2, b3) = sqrt(1 - alpha^2) / (alpha lambda) * B.
inline Matrix3 matrix_b(const RegularizedState& r)
{
    const double a = r.alpha;
    const double s2 = 1.0 - a * a;
    const double s = std::sqrt(s2);
    const double c = std::cos(r.theta);
    const double sn = std::sin(r.theta);
    const double row2 = a * r.lambda / s;
    return {{
        {s + sqrt3 * sn - c, s - sqrt3 * sn - c, s + 2.0 * c},
        {row2, row2, row2},
        {-a * (sqrt3 * sn + 3.0 * c) / (sqrt3 * s2), -a * (sqrt3 * sn - 3.0 * c) / (sqrt3 * s2), 2.0 * a * sn / s2},
    }};
}

//! Rates (alpha', lambda', theta'); smooth across alpha = 0 away from the binary-collision set.
inline std::array<double, 3> regularized_field(const Vorticities& g, const RegularizedState& r)
{
    validate(r);
    const auto b = shape_triple(r);
    if (min_side_ratio(b) < binary_ratio_threshold) {
        throw BinaryCollisionError("regularized field is singular at binary collisions");
    }
    const auto v = detail::reciprocal_differences(g, b);
    const Matrix3 B = matrix_b(r);
    const double prefactor = sqrt3 * std::sqrt(1.0 - r.alpha * r.alpha) * shape_rate_factor / 12.0;
    std::array<double, 3> rate{};
    for (std::size_t row = 0; row < 3; ++row) {
        rate[row] = prefactor * (B[row][0] * v[0] + B[row][1] * v[1] + B[row][2] * v[2]);
    }
    return rate;
}

//! Central-difference Jacobian D(b1, b2, b3)/D(alpha, lambda, theta) with one Richardson step.
inline Matrix3 transform_jacobian(const RegularizedState& r)
{
    validate(r);
    const std::array<double, 3> x{r.alpha, r.lambda, r.theta};
    const std::array<double, 3> step{std::min(1e-3, (1.0 - std::abs(r.alpha)) / 4.0), 1e-3 * r.lambda, 1e-3};
    Matrix3 J{};
    for (std::size_t col = 0; col < 3; ++col) {
        auto central = [&](double h) {
            auto plus = x, minus = x;
            plus[col] += h;
            minus[col] -= h;
            const auto bp = shape_triple({plus[0], plus[1], plus[2]});
            const auto bm = shape_triple({minus[0], minus[1], minus[2]});
            return std::array<double, 3>{(bp[0] - bm[0]) / (2 * h), (bp[1] - bm[1]) / (2 * h),
                                         (bp[2] - bm[2]) / (2 * h)};
        };
        const auto coarse = central(step[col]);
        const auto fine = central(step[col] / 2);
        for (std::size_t row = 0; row < 3; ++row) {
            J[row][col] = (4.0 * fine[row] - coarse[row]) / 3.0;
        }
    }
    return J;
}

inline double determinant(const Matrix3& m)
{
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

//! Numerical determinant of D(b)/D(alpha, lambda, theta); expected sqrt(3) alpha lambda^2 / 18.
inline double jacobian_det_check(const RegularizedState& r) { return determinant(transform_jacobian(r)); }

inline double jacobian_det_closed_form(const RegularizedState& r)
{
    return sqrt3 * r.alpha * r.lambda * r.lambda / 18.0;
}

//! Integrates regularized_field. Crosses alpha = 0 without special handling; halts near the
//! binary-collision set (min b_i / lambda < 1e-9) or near |alpha| = 1.
inline Trajectory<RegularizedState> integrate_regularized(const Vorticities& g, const RegularizedState& initial,
                                                          const IntegratorConfig& cfg)
{
    validate(initial);
    Trajectory<RegularizedState> traj;
    detail::DriftTracker tracker;
    {
        const auto b = shape_triple(initial);
        detail::require_no_binary_collision(b);
        tracker.H0 = energy_of_shape(g, b);
        tracker.M0 = moment_of_shape(g, b);
    }

    using Vec = std::array<double, 3>;
    auto field = [&](const Vec& y, Vec& dy) { dy = regularized_field(g, {y[0], y[1], y[2]}); };

    struct Monitor {
        const Vorticities& g;
        detail::DriftTracker& tracker;
        Trajectory<RegularizedState>& traj;

        std::optional<HaltReason> check(double, const Vec& y)
        {
            const auto b = shape_triple({y[0], y[1], y[2]});
            const double ratio = min_side_ratio(b);
            traj.min_side_ratio = std::min(traj.min_side_ratio, ratio);
            if (ratio < binary_ratio_threshold) {
                return HaltReason::BinaryCollisionApproach;
            }
            tracker.update(energy_of_shape(g, b), moment_of_shape(g, b));
            if (1.0 - std::abs(y[0]) < equilateral_approach_threshold) {
                return HaltReason::EquilateralApproach;
            }
            return std::nullopt;
        }

        void record(double t, const Vec& y) { traj.samples.push_back({t, {y[0], y[1], canonical_angle(y[2])}}); }
    } monitor{g, tracker, traj};

    const auto res = ode::integrate(field, Vec{initial.alpha, initial.lambda, initial.theta}, cfg, monitor);
    traj.halt_reason = res.reason;
    traj.stats = res.stats;
    traj.drift = tracker.drift;
    return traj;
}

} // namespace vortex3

#endif // VORTEX3_REGULARIZED_HPP
