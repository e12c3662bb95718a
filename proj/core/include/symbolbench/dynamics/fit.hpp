#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "symbolbench/dynamics/trajectory.hpp"
#include "symbolbench/expr/alg_ast.hpp"

namespace symbolbench::dynamics {

struct FitConfig {
  int num_starts = 6;       // {+1, -1, +0.1, -0.1} then seeded random starts
  int max_iterations = 200;
  double tolerance = 1e-12;  // relative residual improvement stop
  std::uint64_t seed = 0;
};

/// A system together with fitted coefficient values. `coefficients` holds
/// one entry per distinct placeholder index, ordered by index; `slots` maps
/// vector position to placeholder index.
struct FittedModel {
  expr::AlgebraicSystem system;
  std::vector<int> slots;
  std::vector<double> coefficients;
  double residual = 0.0;  // mean squared error in derivative space
  int iterations = 0;
  bool converged = false;

  /// Coefficients expanded into dense storage indexed by placeholder index.
  std::vector<double> dense_coefficients() const;
};

/// Fits placeholder coefficients by minimizing the mean squared error
/// between finite-difference derivative estimates of `traj` and the
/// pointwise evaluation of `system`. Multi-start Levenberg-Marquardt with a
/// closed-form least-squares shortcut when the system is linear in its
/// placeholders. Deterministic under a fixed seed.
///
/// Throws std::invalid_argument on a dimension mismatch and FitError when
/// every start evaluates to non-finite residuals (structurally invalid
/// candidate).
FittedModel fit_coefficients(const expr::AlgebraicSystem& system,
                             const Trajectory& traj, const FitConfig& cfg = {});

class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Process-wide count of fit_coefficients invocations. Lets callers assert
/// that evaluation paths which must not refit (e.g. holdout scoring) really
/// do not.
std::uint64_t fit_call_count();

}  // namespace symbolbench::dynamics
