#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "symbolbench/dynamics/fit.hpp"
#include "symbolbench/dynamics/trajectory.hpp"

namespace symbolbench::dynamics {

struct IntegrateConfig {
  double rel_tol = 1e-6;
  double abs_tol = 1e-8;
  std::uint64_t max_rhs_evals = 2'000'000;  // hard budget per attempt
  double state_limit = 1e12;                // |x_i| beyond this counts as blow-up
};

/// Signals a rejected candidate: blow-up, non-finite state, or an exhausted
/// step budget on both the explicit and the stiff path.
class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Integrates the fitted system from `x0`, reporting the solution exactly at
/// the requested times (strictly increasing, times[0] = t0). Uses an
/// adaptive Dormand-Prince scheme and falls back to a Rosenbrock stiff
/// scheme with a finite-difference Jacobian when the explicit scheme
/// exhausts its step budget.
Trajectory integrate_ode(const FittedModel& model, const std::vector<double>& x0,
                         const std::vector<double>& times,
                         const IntegrateConfig& cfg = {});

}  // namespace symbolbench::dynamics
