#ifndef VORTEX3_ODE_HPP
#define VORTEX3_ODE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <vortex3/errors.hpp>

namespace vortex3 {

enum class HaltReason {
    HorizonReached,
    CollisionApproach,       //!< vortices closer than the configured guard distance
    BinaryCollisionApproach, //!< one b_i / lambda below 1e-9 while the others stay away
    BoundaryApproach,        //!< shape coordinates near a collinear configuration
    EquilateralApproach,     //!< regularized coordinates near |alpha| = 1
    StepFailure,
};

inline std::string to_string(HaltReason r)
{
    switch (r) {
    case HaltReason::HorizonReached: return "HorizonReached";
    case HaltReason::CollisionApproach: return "CollisionApproach";
    case HaltReason::BinaryCollisionApproach: return "BinaryCollisionApproach";
    case HaltReason::BoundaryApproach: return "BoundaryApproach";
    case HaltReason::EquilateralApproach: return "EquilateralApproach";
    case HaltReason::StepFailure: return "StepFailure";
    }
    return "?";
}

struct IntegratorConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double max_step = std::numeric_limits<double>::infinity();
    double horizon = 10.0;
    //! Negative selects the default 1e-6 * sqrt(lambda_0).
    double halt_min_distance = -1.0;
    //! Times in (0, horizon] at which a sample is forced.
    std::vector<double> output_times;
    //! Record every accepted step in addition to the output times.
    bool record_steps = true;
    std::size_t max_steps = 20'000'000;

    void validate() const
    {
        if (!(rel_tol > 0 && rel_tol < 1) || !(abs_tol > 0 && abs_tol < 1)) {
            throw DomainError("integrator tolerances must lie in (0, 1)");
        }
        if (!(horizon > 0) || !std::isfinite(horizon)) {
            throw DomainError("integration horizon must be positive and finite");
        }
        if (!(max_step > 0)) {
            throw DomainError("max_step must be positive");
        }
        for (std::size_t i = 0; i < output_times.size(); ++i) {
            if (!(output_times[i] > 0) || (i > 0 && !(output_times[i] > output_times[i - 1]))) {
                throw DomainError("output times must be positive and strictly increasing");
            }
        }
    }
};

template <class State>
struct Sample {
    double t;
    State state;
};

//! Largest deviation of the conserved quantities from their initial values:
//! H and M relative to max(1, |initial|), Z absolute.
struct InvariantDrift {
    double H = 0;
    double M = 0;
    double Z = 0;
};

struct StepStats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t evaluations = 0;
};

template <class State>
struct Trajectory {
    std::vector<Sample<State>> samples;
    HaltReason halt_reason = HaltReason::HorizonReached;
    InvariantDrift drift;
    //! Smallest min_i b_i / lambda seen at accepted steps (three-vortex runs only).
    double min_side_ratio = std::numeric_limits<double>::infinity();
    StepStats stats;

    double final_time() const { return samples.back().t; }
    const State& final_state() const { return samples.back().state; }
};

namespace ode {

// Dormand-Prince 5(4) tableau.
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                        a65 = -5103.0 / 18656;
inline constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                        a76 = 11.0 / 84;
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                        e6 = 22.0 / 525, e7 = -1.0 / 40;

// PI controller constants (Hairer, Norsett & Wanner).
inline constexpr double safety = 0.9;
inline constexpr double pi_beta = 0.04;
inline constexpr double pi_alpha = 0.2 - 0.75 * pi_beta;
inline constexpr double shrink_limit = 0.2; // h_new >= 0.2 h
inline constexpr double grow_limit = 10.0;  // h_new <= 10 h

template <class Vec>
struct Result {
    HaltReason reason = HaltReason::HorizonReached;
    double t = 0;
    Vec y;
    StepStats stats;
};

namespace detail {

template <class Vec>
double error_norm(const Vec& err, const Vec& y0, const Vec& y1, double rtol, double atol)
{
    double sum = 0;
    for (std::size_t i = 0; i < y0.size(); ++i) {
        const double sk = atol + rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
        const double q = err[i] / sk;
        sum += q * q;
    }
    return std::sqrt(sum / static_cast<double>(y0.size()));
}

template <class Vec, class Field>
double initial_step(Field& f, const Vec& y0, const Vec& f0, double rtol, double atol, double hmax, StepStats& stats)
{
    double d0 = 0, d1 = 0;
    for (std::size_t i = 0; i < y0.size(); ++i) {
        const double sk = atol + rtol * std::abs(y0[i]);
        d0 += (y0[i] / sk) * (y0[i] / sk);
        d1 += (f0[i] / sk) * (f0[i] / sk);
    }
    const double dim = static_cast<double>(y0.size());
    d0 = std::sqrt(d0 / dim);
    d1 = std::sqrt(d1 / dim);
    double h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h = std::min(h, hmax);

    Vec y1 = y0;
    for (std::size_t i = 0; i < y0.size(); ++i) {
        y1[i] = y0[i] + h * f0[i];
    }
    Vec f1 = f0;
    try {
        f(y1, f1);
        ++stats.evaluations;
    } catch (const Error&) {
        return h * 1e-3;
    }
    double d2 = 0;
    for (std::size_t i = 0; i < y0.size(); ++i) {
        const double sk = atol + rtol * std::abs(y0[i]);
        d2 += ((f1[i] - f0[i]) / sk) * ((f1[i] - f0[i]) / sk);
    }
    d2 = std::sqrt(d2 / dim) / h;
    const double dmax = std::max(d1, d2);
    const double h1 = dmax <= 1e-15 ? std::max(1e-6, h * 1e-3) : std::pow(0.01 / dmax, 0.2);
    return std::min({100 * h, h1, hmax});
}

} // namespace detail

//! Adaptive Dormand-Prince 5(4) integration of the autonomous system y' = f(y) on [0, horizon].
//!
//! `f(y, dy)` may throw vortex3::Error when a stage leaves the field's domain; the step is
//! then rejected and retried with a smaller size. `monitor.check(t, y)` runs at t = 0 and after
//! every accepted step and may stop the run; `monitor.record(t, y)` is called for the initial
//! point, for accepted steps when `cfg.record_steps`, at every output time, and at the final point.
template <class Vec, class Field, class Monitor>
Result<Vec> integrate(Field&& f, Vec y, const IntegratorConfig& cfg, Monitor&& monitor)
{
    cfg.validate();
    Result<Vec> res;
    StepStats& stats = res.stats;
    const double t_end = cfg.horizon;
    double t = 0;
    double last_recorded = -std::numeric_limits<double>::infinity();
    auto emit = [&](double when, const Vec& state) {
        if (when > last_recorded) {
            monitor.record(when, state);
            last_recorded = when;
        }
    };

    if (auto halt = monitor.check(t, y)) {
        emit(t, y);
        res.reason = *halt;
        res.t = t;
        res.y = y;
        return res;
    }
    emit(t, y);

    Vec k1 = y, k2 = y, k3 = y, k4 = y, k5 = y, k6 = y, k7 = y, ytmp = y, y5 = y, err = y;
    const std::size_t dim = y.size();
    f(y, k1);
    ++stats.evaluations;

    const double hmax = std::min(cfg.max_step, t_end);
    double h = detail::initial_step(f, y, k1, cfg.rel_tol, cfg.abs_tol, hmax, stats);
    double facold = 1e-4;
    bool last_rejected = false;
    std::size_t next_output = 0;
    while (next_output < cfg.output_times.size() && cfg.output_times[next_output] <= 0) {
        ++next_output;
    }

    auto stage = [&](Vec& out, auto&& combine) {
        for (std::size_t i = 0; i < dim; ++i) {
            ytmp[i] = combine(i);
        }
        f(ytmp, out);
        ++stats.evaluations;
    };

    while (t < t_end) {
        if (stats.accepted + stats.rejected >= cfg.max_steps) {
            res.reason = HaltReason::StepFailure;
            break;
        }
        if (!(h >= 1e-14 * std::max(1.0, std::abs(t)))) {
            res.reason = HaltReason::StepFailure;
            break;
        }
        h = std::min(h, hmax);

        // Land exactly on the next output time or the horizon.
        double target = t_end;
        bool at_output = false;
        if (next_output < cfg.output_times.size() && cfg.output_times[next_output] < t_end) {
            target = cfg.output_times[next_output];
            at_output = true;
        }
        bool clipped = false;
        if (t + h >= target - 1e-14 * std::max(1.0, std::abs(target))) {
            h = target - t;
            clipped = true;
        }

        double err_norm = 0;
        bool stage_failed = false;
        try {
            stage(k2, [&](std::size_t i) { return y[i] + h * a21 * k1[i]; });
            stage(k3, [&](std::size_t i) { return y[i] + h * (a31 * k1[i] + a32 * k2[i]); });
            stage(k4, [&](std::size_t i) { return y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]); });
            stage(k5, [&](std::size_t i) {
                return y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
            });
            stage(k6, [&](std::size_t i) {
                return y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
            });
            for (std::size_t i = 0; i < dim; ++i) {
                y5[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
            }
            f(y5, k7);
            ++stats.evaluations;
            for (std::size_t i = 0; i < dim; ++i) {
                err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            }
            err_norm = detail::error_norm(err, y, y5, cfg.rel_tol, cfg.abs_tol);
        } catch (const Error&) {
            stage_failed = true;
        }

        if (stage_failed || !std::isfinite(err_norm)) {
            ++stats.rejected;
            h *= shrink_limit;
            last_rejected = true;
            continue;
        }

        const double fac11 = std::pow(err_norm, pi_alpha);
        if (err_norm <= 1.0) {
            double fac = fac11 / std::pow(facold, pi_beta);
            fac = std::clamp(fac / safety, 1.0 / grow_limit, 1.0 / shrink_limit);
            double hnew = h / fac;
            facold = std::max(err_norm, 1e-4);
            ++stats.accepted;
            t = clipped ? target : t + h;
            std::swap(y, y5);
            std::swap(k1, k7);
            if (last_rejected) {
                hnew = std::min(hnew, h);
            }
            last_rejected = false;
            const bool hit_output = clipped && at_output;
            if (hit_output) {
                ++next_output;
            }
            if (auto halt = monitor.check(t, y)) {
                emit(t, y);
                res.reason = *halt;
                res.t = t;
                res.y = y;
                return res;
            }
            if (cfg.record_steps || hit_output || t >= t_end) {
                emit(t, y);
            }
            h = hnew;
        } else {
            ++stats.rejected;
            h /= std::min(1.0 / shrink_limit, fac11 / safety);
            last_rejected = true;
        }
    }

    emit(t, y);
    res.t = t;
    res.y = y;
    return res;
}

} // namespace ode
} // namespace vortex3

#endif // VORTEX3_ODE_HPP
