#ifndef VORTEX3_CARTESIAN_HPP
#define VORTEX3_CARTESIAN_HPP

#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include <vortex3/core.hpp>
#include <vortex3/ode.hpp>

namespace vortex3 {

//! Velocities of N point vortices:
//! dz_a/dt = i/(2 pi) sum_{b != a} g_b (z_a - z_b) / |z_a - z_b|^2.
inline std::vector<Point> cartesian_field(std::span<const double> g, const CartesianState& state)
{
    const std::size_t n = state.size();
    if (g.size() != n) {
        throw DomainError("number of circulations does not match number of vortices");
    }
    require_distinct(state);
    std::vector<Point> velocity(n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            const Point d = state.positions[a] - state.positions[b];
            const Point k = Point{0, 1} * d / (2.0 * pi * std::norm(d));
            velocity[a] += g[b] * k;
            velocity[b] -= g[a] * k;
        }
    }
    return velocity;
}

inline std::vector<Point> cartesian_field(const Vorticities& g, const CartesianState& state)
{
    return cartesian_field(g.span(), state);
}

//! Conserved quantities for any N: H = -1/(2 pi) sum g_a g_b ln l_ab, M = sum g_a g_b l_ab^2.
inline InvariantSet cartesian_invariants(std::span<const double> g, const CartesianState& state)
{
    InvariantSet inv;
    double energy = 0;
    for (std::size_t a = 0; a < state.size(); ++a) {
        inv.I += g[a] * std::norm(state.positions[a]);
        inv.Z += g[a] * state.positions[a];
        for (std::size_t b = a + 1; b < state.size(); ++b) {
            const double l2 = std::norm(state.positions[a] - state.positions[b]);
            energy += g[a] * g[b] * std::log(l2);
            inv.M += g[a] * g[b] * l2;
            inv.V += g[a] * g[b];
        }
    }
    inv.H = -energy / (4.0 * pi);
    return inv;
}

//! Sum of squared mutual distances; equals b1 + b2 + b3 for three vortices.
inline double squared_size(const CartesianState& state)
{
    double sum = 0;
    for (std::size_t a = 0; a < state.size(); ++a) {
        for (std::size_t b = a + 1; b < state.size(); ++b) {
            sum += std::norm(state.positions[a] - state.positions[b]);
        }
    }
    return sum;
}

inline constexpr double binary_ratio_threshold = 1e-9;
inline constexpr double binary_partner_threshold = 1e-3;

//! True when one side ratio b_i / lambda is below 1e-9 while the other two stay above 1e-3.
inline bool near_binary_collision(const std::array<double, 3>& b)
{
    const double lambda = b[0] + b[1] + b[2];
    for (std::size_t i = 0; i < 3; ++i) {
        if (b[i] / lambda < binary_ratio_threshold && b[next(i)] / lambda > binary_partner_threshold &&
            b[prev(i)] / lambda > binary_partner_threshold) {
            return true;
        }
    }
    return false;
}

inline double min_side_ratio(const std::array<double, 3>& b)
{
    return std::min({b[0], b[1], b[2]}) / (b[0] + b[1] + b[2]);
}

namespace detail {

inline CartesianState unpack(const std::vector<double>& y)
{
    CartesianState s;
    s.positions.resize(y.size() / 2);
    for (std::size_t a = 0; a < s.positions.size(); ++a) {
        s.positions[a] = {y[2 * a], y[2 * a + 1]};
    }
    return s;
}

inline std::vector<double> pack(const CartesianState& s)
{
    std::vector<double> y(2 * s.size());
    for (std::size_t a = 0; a < s.size(); ++a) {
        y[2 * a] = s.positions[a].real();
        y[2 * a + 1] = s.positions[a].imag();
    }
    return y;
}

struct DriftTracker {
    double H0 = 0, M0 = 0;
    Point Z0{};
    InvariantDrift drift;

    void reset(const InvariantSet& inv)
    {
        H0 = inv.H;
        M0 = inv.M;
        Z0 = inv.Z;
    }

    void update(double H, double M, std::optional<Point> Z = std::nullopt)
    {
        drift.H = std::max(drift.H, std::abs(H - H0) / std::max(1.0, std::abs(H0)));
        drift.M = std::max(drift.M, std::abs(M - M0) / std::max(1.0, std::abs(M0)));
        if (Z) {
            drift.Z = std::max(drift.Z, std::abs(*Z - Z0));
        }
    }
};

} // namespace detail

//! Integrates the N-vortex equations with adaptive Dormand-Prince 5(4), monitoring H, M and Z.
inline Trajectory<CartesianState> integrate_cartesian(std::span<const double> g, const CartesianState& initial,
                                                      const IntegratorConfig& cfg)
{
    if (g.size() != initial.size() || initial.size() < 2) {
        throw DomainError("integrate_cartesian needs one circulation per vortex and at least two vortices");
    }
    require_distinct(initial);
    const std::vector<double> circulation(g.begin(), g.end());
    const double guard =
        cfg.halt_min_distance >= 0 ? cfg.halt_min_distance : 1e-6 * std::sqrt(squared_size(initial));

    Trajectory<CartesianState> traj;
    detail::DriftTracker tracker;
    tracker.reset(cartesian_invariants(circulation, initial));

    auto field = [&](const std::vector<double>& y, std::vector<double>& dy) {
        const auto v = cartesian_field(circulation, detail::unpack(y));
        for (std::size_t a = 0; a < v.size(); ++a) {
            dy[2 * a] = v[a].real();
            dy[2 * a + 1] = v[a].imag();
        }
    };

    struct Monitor {
        const std::vector<double>& g;
        double guard;
        detail::DriftTracker& tracker;
        Trajectory<CartesianState>& traj;

        std::optional<HaltReason> check(double, const std::vector<double>& y)
        {
            const CartesianState s = detail::unpack(y);
            std::optional<HaltReason> halt;
            if (s.size() == 3) {
                const ShapeState shape{{std::norm(s.positions[1] - s.positions[2]),
                                        std::norm(s.positions[2] - s.positions[0]),
                                        std::norm(s.positions[0] - s.positions[1])}};
                traj.min_side_ratio = std::min(traj.min_side_ratio, min_side_ratio(shape.b));
                if (near_binary_collision(shape.b)) {
                    halt = HaltReason::BinaryCollisionApproach;
                }
            }
            if (min_pairwise_distance(s) < guard) {
                return halt ? halt : HaltReason::CollisionApproach;
            }
            if (halt) {
                return halt;
            }
            const InvariantSet inv = cartesian_invariants(g, s);
            tracker.update(inv.H, inv.M, inv.Z);
            return std::nullopt;
        }

        void record(double t, const std::vector<double>& y) { traj.samples.push_back({t, detail::unpack(y)}); }
    } monitor{circulation, guard, tracker, traj};

    const auto res = ode::integrate(field, detail::pack(initial), cfg, monitor);
    traj.halt_reason = res.reason;
    traj.stats = res.stats;
    traj.drift = tracker.drift;
    return traj;
}

inline Trajectory<CartesianState> integrate_cartesian(const Vorticities& g, const CartesianState& initial,
                                                      const IntegratorConfig& cfg)
{
    return integrate_cartesian(g.span(), initial, cfg);
}

} // namespace vortex3

#endif // VORTEX3_CARTESIAN_HPP
