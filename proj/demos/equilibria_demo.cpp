// Relative equilibria on the zero-moment region for a few vorticity triples.
#include <cstdio>

#include <vortex3/vortex3.hpp>

using namespace vortex3;

int main()
{
    const Vorticities cases[] = {{1.0, 1.0, -0.5}, {1.0, 1.0, -2.0}, {1.0, 1.0, -1.0 / 3.0}, {2.0, 0.5, -0.7}};
    for (const auto& g : cases) {
        const auto eq = equilibrium_manifold(g);
        const auto [cg, shift] = canonicalize(g);
        const auto region = t_region(cg);
        std::printf("g = (%g, %g, %g)  stratum %s\n", g[0], g[1], g[2], to_string(stratum_of(cg)).c_str());
        if (!region.exists) {
            std::printf("  zero-moment region is empty\n");
            continue;
        }
        std::printf("  p in [%.10g, %.10g]\n", region.p_lo, region.p_hi);
        if (eq.equilibrium_line) {
            std::printf("  whole region is a line of equilibria, slope %.10g\n", *eq.line_slope);
            continue;
        }
        for (double p : {region.p_lo, region.p_hi}) {
            const auto rate = collinear_adot(cg, p);
            std::printf("  collinear root p = %.10g: dA/dt = %.6e (closed form agrees to %.2e)\n", p, rate.adot,
                        std::abs(rate.sum_form - rate.closed_form));
        }
    }
}
