#include "symbolbench/metrics/partial_correlation.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace symbolbench::metrics {

namespace {

// Residual of v after OLS projection onto [1, Z]. Uses a rank-revealing
// decomposition; the minimum-norm solution doubles as the pseudo-inverse
// route for rank-deficient Z.
Eigen::VectorXd ols_residual(const Eigen::VectorXd& v, const Eigen::MatrixXd& design,
                             bool* regularized) {
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(design);
  if (cod.rank() < design.cols() && regularized) *regularized = true;
  Eigen::VectorXd beta = cod.solve(v);
  return v - design * beta;
}

}  // namespace

PartialCorrelation partial_correlation(
    const std::vector<double>& x, const std::vector<double>& y,
    const std::vector<std::vector<double>>& conditioning) {
  const size_t n = x.size();
  if (y.size() != n) {
    throw std::invalid_argument("partial_correlation: x/y length mismatch");
  }
  for (const auto& z : conditioning) {
    if (z.size() != n) {
      throw std::invalid_argument("partial_correlation: conditioning length mismatch");
    }
  }
  if (n <= conditioning.size() + 2) {
    throw std::invalid_argument("partial_correlation: insufficient samples");
  }

  Eigen::VectorXd vx = Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(n));
  Eigen::VectorXd vy = Eigen::Map<const Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(n));

  Eigen::MatrixXd design(n, conditioning.size() + 1);
  design.col(0).setOnes();
  for (size_t c = 0; c < conditioning.size(); ++c) {
    design.col(static_cast<Eigen::Index>(c) + 1) =
        Eigen::Map<const Eigen::VectorXd>(conditioning[c].data(), static_cast<Eigen::Index>(n));
  }

  PartialCorrelation out;
  Eigen::VectorXd rx = ols_residual(vx, design, &out.regularized);
  Eigen::VectorXd ry = ols_residual(vy, design, &out.regularized);

  const double nx = rx.norm();
  const double ny = ry.norm();
  // Scale-aware zero test: an exactly explained vector leaves only rounding
  // noise behind.
  const double eps = 1e-10;
  if (nx <= eps * std::max(1.0, vx.norm()) || ny <= eps * std::max(1.0, vy.norm())) {
    out.r = 0.0;
    out.degenerate = true;
    return out;
  }
  out.r = rx.dot(ry) / (nx * ny);
  // Rounding can push the ratio a hair outside [-1, 1].
  out.r = std::clamp(out.r, -1.0, 1.0);
  return out;
}

std::vector<double> ci_edge_values(const expr::ScmGraph& graph,
                                   const dynamics::Trajectory& traj) {
  graph.validate();
  if (traj.dim() != graph.dim) {
    throw std::invalid_argument("ci_score: trajectory/graph dimension mismatch");
  }
  const int t_len = traj.length();
  const int rows = t_len - graph.max_lag;
  // Aligned sample count, minus room for the regression itself.
  if (rows < graph.max_lag + 8) {
    throw std::invalid_argument("ci_score: trajectory shorter than max_lag plus minimum samples");
  }

  auto lagged_column = [&](int var, int lag) {
    std::vector<double> col(static_cast<size_t>(rows));
    for (int r = 0; r < rows; ++r) {
      col[static_cast<size_t>(r)] = traj.values[r + graph.max_lag - lag][var];
    }
    return col;
  };

  std::vector<double> values;
  values.reserve(graph.edges.size());
  for (const auto& edge : graph.edges) {
    std::vector<double> x = lagged_column(edge.source, edge.lag);
    std::vector<double> y = lagged_column(edge.target, 0);
    std::vector<std::vector<double>> conditioning;
    for (const auto& other : graph.edges) {
      if (other.target == edge.target && !(other == edge)) {
        conditioning.push_back(lagged_column(other.source, other.lag));
      }
    }
    PartialCorrelation pc = partial_correlation(x, y, conditioning);
    values.push_back(std::abs(pc.r));
  }
  return values;
}

std::optional<double> ci_score(const expr::ScmGraph& graph,
                               const dynamics::Trajectory& traj) {
  if (graph.edges.empty()) return std::nullopt;
  std::vector<double> values = ci_edge_values(graph, traj);
  double total = 0.0;
  for (double v : values) total += v;
  return total / static_cast<double>(values.size());
}

}  // namespace symbolbench::metrics
