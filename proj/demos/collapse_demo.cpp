// Self-similar total collapse of (1, 1, -1/2) from a triangle on the zero-moment plane.
#include <cstdio>

#include <vortex3/vortex3.hpp>

using namespace vortex3;

int main()
{
    const Vorticities g(1.0, 1.0, -0.5);
    const ShapeState s0{{1.0, 3.0, 2.0}, Orientation::Positive};

    const auto c = classify(g, s0);
    std::printf("kind %s, direction %s, M = %g\n", to_string(c.kind).c_str(),
                c.direction ? to_string(*c.direction).c_str() : "-", c.M);

    IntegratorConfig cfg;
    cfg.horizon = 20.0;
    const auto traj = integrate_cartesian(g, recentered(g.span(), realize(s0)), cfg);
    const double lambda0 = s0.lambda();
    for (std::size_t k = 0; k < traj.samples.size(); k += traj.samples.size() / 10 + 1) {
        const auto& [t, z] = traj.samples[k];
        const auto s = shape_of(z);
        std::printf("t = %8.5f  lambda/lambda0 = %.6e  b2/b1 = %.9f  b3/b1 = %.9f\n", t, s.lambda() / lambda0,
                    s.b[1] / s.b[0], s.b[2] / s.b[0]);
    }
    std::printf("halted: %s at t = %.6f\n", to_string(traj.halt_reason).c_str(), traj.final_time());
}
