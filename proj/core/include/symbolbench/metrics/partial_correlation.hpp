#pragma once

#include <optional>
#include <vector>

#include "symbolbench/dynamics/trajectory.hpp"
#include "symbolbench/expr/scm_graph.hpp"

namespace symbolbench::metrics {

struct PartialCorrelation {
  double r = 0.0;
  bool degenerate = false;   // a residual had (near-)zero variance
  bool regularized = false;  // rank-deficient conditioning, pseudo-inverse used
};

/// Pearson correlation of the residuals of `x` and `y` after
/// ordinary-least-squares projection onto the conditioning vectors plus an
/// intercept. With an empty conditioning set this reduces to the plain
/// Pearson correlation. Throws when the sample count is not more than the
/// conditioning size plus two.
PartialCorrelation partial_correlation(
    const std::vector<double>& x, const std::vector<double>& y,
    const std::vector<std::vector<double>>& conditioning);

/// Mean absolute partial correlation over the graph's edges, each edge
/// conditioned on the child's other parents at their lags. Rows are
/// lag-aligned by dropping the first max_lag time steps. Returns nullopt on
/// an empty edge set; throws when the trajectory is too short.
std::optional<double> ci_score(const expr::ScmGraph& graph,
                               const dynamics::Trajectory& traj);

/// Per-edge breakdown used by tests and reports; order matches graph.edges.
std::vector<double> ci_edge_values(const expr::ScmGraph& graph,
                                   const dynamics::Trajectory& traj);

}  // namespace symbolbench::metrics
