#pragma once

#include "symbolbench/dynamics/trajectory.hpp"

namespace symbolbench::dynamics {

/// Pointwise time-derivative estimates on a possibly non-uniform grid:
/// three-point central differences at interior points, second-order
/// one-sided stencils at both ends. Exact for polynomials of degree <= 2.
/// Requires at least three points and strictly increasing times.
std::vector<std::vector<double>> estimate_derivatives(const Trajectory& traj);

}  // namespace symbolbench::dynamics
