#ifndef VORTEX3_TESTS_BRIDGE_HPP
#define VORTEX3_TESTS_BRIDGE_HPP

#include <vortex3/vortex3.hpp>

#include "oracles.hpp"

namespace bridge {

inline vortex3::CartesianState state(const oracle::Positions& z) { return {{z[0], z[1], z[2]}}; }

inline oracle::Positions positions(const vortex3::CartesianState& s)
{
    return {s.positions.at(0), s.positions.at(1), s.positions.at(2)};
}

inline vortex3::Vorticities vorticities(const oracle::Triple& g) { return vortex3::Vorticities(g); }

inline double relative(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

inline std::vector<double> uniform_times(double horizon, std::size_t count)
{
    std::vector<double> t;
    for (std::size_t k = 1; k <= count; ++k) {
        t.push_back(horizon * static_cast<double>(k) / static_cast<double>(count));
    }
    return t;
}

} // namespace bridge

#endif // VORTEX3_TESTS_BRIDGE_HPP
