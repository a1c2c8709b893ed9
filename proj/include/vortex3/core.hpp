#ifndef VORTEX3_CORE_HPP
#define VORTEX3_CORE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include <vortex3/errors.hpp>

namespace vortex3 {

using Point = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double sqrt3 = std::numbers::sqrt3;

//! Relative tolerance of the cone residual (normalized by lambda^2) below which a
//! shape is considered collinear.
inline constexpr double boundary_tolerance = 1e-9;

// Cyclic successors of index i in (0,1,2); (i, next(i), prev(i)) is always a cyclic triple.
constexpr std::size_t next(std::size_t i) noexcept { return (i + 1) % 3; }
constexpr std::size_t prev(std::size_t i) noexcept { return (i + 2) % 3; }

//! The three circulations of a planar 3-vortex system, all nonzero.
class Vorticities {
public:
    Vorticities(double g1, double g2, double g3) : g_{g1, g2, g3}
    {
        for (double g : g_) {
            if (!std::isfinite(g) || g == 0.0) {
                throw DomainError("vorticities must be finite and nonzero");
            }
        }
    }

    explicit Vorticities(const std::array<double, 3>& g) : Vorticities(g[0], g[1], g[2]) {}

    double operator[](std::size_t i) const { return g_[i]; }
    const std::array<double, 3>& values() const noexcept { return g_; }
    std::span<const double> span() const noexcept { return g_; }

    double g1() const noexcept { return g_[0]; }
    double g2() const noexcept { return g_[1]; }
    double g3() const noexcept { return g_[2]; }

    //! Total circulation Gamma.
    double total() const noexcept { return g_[0] + g_[1] + g_[2]; }
    //! Sum of pairwise products; a constant of the motion.
    double virial() const noexcept { return g_[0] * g_[1] + g_[1] * g_[2] + g_[2] * g_[0]; }

    double m() const noexcept { return -g_[2] / g_[0]; }
    double n() const noexcept { return -g_[2] / g_[1]; }
    double beta() const noexcept { return m() + n() - m() * n(); }
    double gamma() const noexcept { return 1.0 - m() - n(); }

    bool mixed_signs() const noexcept
    {
        return !((g_[0] > 0 && g_[1] > 0 && g_[2] > 0) || (g_[0] < 0 && g_[1] < 0 && g_[2] < 0));
    }

    //! Negated circulations: the same orbits traversed backwards in time.
    Vorticities reversed() const { return {-g_[0], -g_[1], -g_[2]}; }

    //! Vortex k of the result is vortex (k + shift) mod 3 of this one.
    Vorticities rotated(std::size_t shift) const
    {
        return {g_[shift % 3], g_[(shift + 1) % 3], g_[(shift + 2) % 3]};
    }

    friend bool operator==(const Vorticities&, const Vorticities&) = default;

private:
    std::array<double, 3> g_;
};

//! Orientation of the vortex triangle (sign of its oriented area).
enum class Orientation : int { Negative = -1, Collinear = 0, Positive = 1 };

constexpr int sign_of(Orientation o) noexcept { return static_cast<int>(o); }

constexpr Orientation orientation_from(double signed_value) noexcept
{
    return signed_value > 0 ? Orientation::Positive
                            : (signed_value < 0 ? Orientation::Negative : Orientation::Collinear);
}

constexpr Orientation flipped(Orientation o) noexcept
{
    return static_cast<Orientation>(-static_cast<int>(o));
}

struct CartesianState {
    std::vector<Point> positions;

    std::size_t size() const noexcept { return positions.size(); }
};

//! Squared mutual distances b_i = |z_j - z_k|^2 plus the orientation of the triangle.
struct ShapeState {
    std::array<double, 3> b{};
    Orientation eps = Orientation::Positive;

    double lambda() const noexcept { return b[0] + b[1] + b[2]; }

    friend bool operator==(const ShapeState&, const ShapeState&) = default;
};

struct InvariantSet {
    double H = 0; //!< energy
    double M = 0; //!< sum of g_a g_b l_ab^2
    double I = 0; //!< moment of inertia about the origin
    Point Z{};    //!< linear impulse
    double V = 0; //!< virial
};

enum class Admissibility { Interior, Boundary, Outside };

inline std::string to_string(Admissibility a)
{
    switch (a) {
    case Admissibility::Interior: return "Interior";
    case Admissibility::Boundary: return "Boundary";
    case Admissibility::Outside: return "Outside";
    }
    return "?";
}

//! 2(b1 b2 + b1 b3 + b2 b3) - (b1^2 + b2^2 + b3^2), equal to 16 A^2.
constexpr double cone_residual(const std::array<double, 3>& b) noexcept
{
    return 2.0 * (b[0] * b[1] + b[0] * b[2] + b[1] * b[2]) - (b[0] * b[0] + b[1] * b[1] + b[2] * b[2]);
}

inline Admissibility admissibility(const std::array<double, 3>& b)
{
    for (double bi : b) {
        if (!(bi > 0.0)) {
            throw DomainError("admissibility requires positive squared distances");
        }
    }
    const double lambda = b[0] + b[1] + b[2];
    const double r = cone_residual(b) / (lambda * lambda);
    if (std::abs(r) <= boundary_tolerance) {
        return Admissibility::Boundary;
    }
    return r > 0 ? Admissibility::Interior : Admissibility::Outside;
}

inline Admissibility admissibility(double b1, double b2, double b3) { return admissibility({b1, b2, b3}); }

//! Signed area of the triangle: 4A = eps sqrt(lambda^2 - 2 sum b_i^2).
inline double area(const ShapeState& s)
{
    const double lambda = s.lambda();
    const double r = cone_residual(s.b);
    if (r < -boundary_tolerance * lambda * lambda) {
        throw DomainError("shape lies outside the admissible cone");
    }
    return sign_of(s.eps) * 0.25 * std::sqrt(std::max(r, 0.0));
}

inline double min_pairwise_distance(const CartesianState& state)
{
    double d = INFINITY;
    for (std::size_t a = 0; a < state.size(); ++a) {
        for (std::size_t b = a + 1; b < state.size(); ++b) {
            d = std::min(d, std::abs(state.positions[a] - state.positions[b]));
        }
    }
    return d;
}

inline void require_distinct(const CartesianState& state)
{
    for (std::size_t a = 0; a < state.size(); ++a) {
        for (std::size_t b = a + 1; b < state.size(); ++b) {
            if (state.positions[a] == state.positions[b]) {
                throw CollisionError("vortices " + std::to_string(a + 1) + " and " + std::to_string(b + 1) +
                                     " coincide");
            }
        }
    }
}

inline ShapeState shape_of(const CartesianState& state)
{
    if (state.size() != 3) {
        throw DomainError("shape_of requires exactly three vortices");
    }
    require_distinct(state);
    const auto& z = state.positions;
    // w_i = z_j - z_k
    const std::array<Point, 3> w{z[1] - z[2], z[2] - z[0], z[0] - z[1]};
    ShapeState s;
    for (std::size_t i = 0; i < 3; ++i) {
        s.b[i] = std::norm(w[i]);
    }
    // 2A = Im(conj(w_2) w_3)
    s.eps = orientation_from((std::conj(w[1]) * w[2]).imag());
    return s;
}

//! Energy -1/(4 pi) sum g_i g_j ln b_k over cyclic (k, i, j).
inline double energy_of_shape(const Vorticities& g, const std::array<double, 3>& b)
{
    double sum = 0;
    for (std::size_t k = 0; k < 3; ++k) {
        sum += g[next(k)] * g[prev(k)] * std::log(b[k]);
    }
    return -sum / (4.0 * pi);
}

inline double moment_of_shape(const Vorticities& g, const std::array<double, 3>& b)
{
    double sum = 0;
    for (std::size_t k = 0; k < 3; ++k) {
        sum += g[next(k)] * g[prev(k)] * b[k];
    }
    return sum;
}

inline InvariantSet invariants_of(const Vorticities& g, const CartesianState& state)
{
    const ShapeState s = shape_of(state);
    InvariantSet inv;
    inv.H = energy_of_shape(g, s.b);
    inv.M = moment_of_shape(g, s.b);
    for (std::size_t a = 0; a < 3; ++a) {
        inv.I += g[a] * std::norm(state.positions[a]);
        inv.Z += g[a] * state.positions[a];
    }
    inv.V = g.virial();
    return inv;
}

//! h = exp(-4 pi H / (g1 g2)), so that b3 = h b1^m b2^n on every orbit.
inline double energy_parameter(const Vorticities& g, double H)
{
    return std::exp(-4.0 * pi * H / (g[0] * g[1]));
}

//! Triangle realizing a shape: z1 at the origin, z2 on the positive real axis.
inline CartesianState realize(const ShapeState& s)
{
    for (double bi : s.b) {
        if (!(bi > 0.0)) {
            throw BinaryCollisionError("cannot realize a shape with a vanishing side");
        }
    }
    if (admissibility(s.b) == Admissibility::Outside) {
        throw DomainError("cannot realize a shape outside the admissible cone");
    }
    const double side3 = std::sqrt(s.b[2]);
    const double x = (s.b[2] + s.b[1] - s.b[0]) / (2.0 * side3);
    const double y = sign_of(s.eps) * std::sqrt(std::max(s.b[1] - x * x, 0.0));
    return CartesianState{{Point{0, 0}, Point{side3, 0}, Point{x, y}}};
}

//! Translate so that Z = 0 when Gamma != 0, or the centroid sits at the origin otherwise.
inline CartesianState recentered(std::span<const double> g, CartesianState state)
{
    double total = 0;
    Point center{};
    for (std::size_t a = 0; a < state.size(); ++a) {
        total += g[a];
        center += g[a] * state.positions[a];
    }
    if (std::abs(total) > 1e-12 * std::abs(g[0])) {
        center /= total;
    } else {
        center = {};
        for (const Point& z : state.positions) {
            center += z;
        }
        center /= static_cast<double>(state.size());
    }
    for (Point& z : state.positions) {
        z -= center;
    }
    return state;
}

} // namespace vortex3

#endif // VORTEX3_CORE_HPP
