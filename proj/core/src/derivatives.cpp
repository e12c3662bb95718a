#include "symbolbench/dynamics/derivatives.hpp"

#include <cmath>
#include <stdexcept>

namespace symbolbench::dynamics {

void Trajectory::validate() const {
  if (times.size() != values.size()) {
    throw std::invalid_argument("trajectory: times/values length mismatch");
  }
  const size_t d = values.empty() ? 0 : values.front().size();
  for (size_t t = 0; t < times.size(); ++t) {
    if (!std::isfinite(times[t])) {
      throw std::invalid_argument("trajectory: non-finite time");
    }
    if (t > 0 && !(times[t] > times[t - 1])) {
      throw std::invalid_argument("trajectory: times must be strictly increasing");
    }
    if (values[t].size() != d) {
      throw std::invalid_argument("trajectory: ragged value rows");
    }
    for (double v : values[t]) {
      if (!std::isfinite(v)) {
        throw std::invalid_argument("trajectory: non-finite value");
      }
    }
  }
}

std::vector<std::vector<double>> estimate_derivatives(const Trajectory& traj) {
  const int n = traj.length();
  if (n < 3) throw std::invalid_argument("estimate_derivatives: need at least 3 points");
  for (int t = 1; t < n; ++t) {
    if (!(traj.times[t] > traj.times[t - 1])) {
      throw std::invalid_argument("estimate_derivatives: duplicate or decreasing timestamps");
    }
  }
  const int d = traj.dim();
  std::vector<std::vector<double>> out(n, std::vector<double>(d, 0.0));

  for (int j = 0; j < d; ++j) {
    // Left end: second-order one-sided over (t0, t1, t2).
    {
      const double h1 = traj.times[1] - traj.times[0];
      const double h2 = traj.times[2] - traj.times[1];
      const double w0 = -(2.0 * h1 + h2) / (h1 * (h1 + h2));
      const double w1 = (h1 + h2) / (h1 * h2);
      const double w2 = -h1 / (h2 * (h1 + h2));
      out[0][j] = w0 * traj.values[0][j] + w1 * traj.values[1][j] + w2 * traj.values[2][j];
    }
    // Interior: non-uniform three-point central formula.
    for (int t = 1; t + 1 < n; ++t) {
      const double h1 = traj.times[t] - traj.times[t - 1];
      const double h2 = traj.times[t + 1] - traj.times[t];
      const double wm = -h2 / (h1 * (h1 + h2));
      const double wc = (h2 - h1) / (h1 * h2);
      const double wp = h1 / (h2 * (h1 + h2));
      out[t][j] = wm * traj.values[t - 1][j] + wc * traj.values[t][j] +
                  wp * traj.values[t + 1][j];
    }
    // Right end: mirrored one-sided stencil over (t_{n-3}, t_{n-2}, t_{n-1}).
    {
      const double h1 = traj.times[n - 2] - traj.times[n - 3];
      const double h2 = traj.times[n - 1] - traj.times[n - 2];
      const double w0 = h2 / (h1 * (h1 + h2));
      const double w1 = -(h1 + h2) / (h1 * h2);
      const double w2 = (h1 + 2.0 * h2) / (h2 * (h1 + h2));
      out[n - 1][j] = w0 * traj.values[n - 3][j] + w1 * traj.values[n - 2][j] +
                      w2 * traj.values[n - 1][j];
    }
  }
  return out;
}

}  // namespace symbolbench::dynamics
