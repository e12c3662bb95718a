#pragma once

#include <cstdint>
#include <vector>

namespace symbolbench::dynamics {

/// Continuous multivariate time series: strictly increasing times and one
/// D-dimensional row of values per time point.
struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> values;  // values[t][j]

  int length() const { return static_cast<int>(times.size()); }
  int dim() const { return values.empty() ? 0 : static_cast<int>(values.front().size()); }

  /// Throws std::invalid_argument on ragged rows, non-monotone times or
  /// non-finite entries.
  void validate() const;
};

/// One synchronous Boolean orbit: a sequence of binary states.
using BoolOrbit = std::vector<std::vector<std::uint8_t>>;

}  // namespace symbolbench::dynamics
