#pragma once

#include <compare>
#include <set>

namespace symbolbench::expr {

/// Directed lagged edge: source at time t - lag influences target at time t.
struct LaggedEdge {
  int source = 0;
  int lag = 1;
  int target = 0;

  auto operator<=>(const LaggedEdge&) const = default;
};

/// Lagged structural causal graph over D variables.
struct ScmGraph {
  int dim = 0;
  int max_lag = 1;
  std::set<LaggedEdge> edges;

  bool operator==(const ScmGraph&) const = default;

  /// Throws std::invalid_argument when an edge index or lag is out of range.
  void validate() const;
};

}  // namespace symbolbench::expr
