#ifndef VORTEX3_VORTEX3_HPP
#define VORTEX3_VORTEX3_HPP

#include <vortex3/cartesian.hpp>
#include <vortex3/collapse.hpp>
#include <vortex3/core.hpp>
#include <vortex3/equilibria.hpp>
#include <vortex3/errors.hpp>
#include <vortex3/ode.hpp>
#include <vortex3/regularized.hpp>
#include <vortex3/shape.hpp>

#endif // VORTEX3_VORTEX3_HPP
