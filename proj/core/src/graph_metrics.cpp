#include "symbolbench/metrics/graph_metrics.hpp"

#include <stdexcept>

namespace symbolbench::metrics {

EdgeMetrics scm_edge_metrics(const expr::ScmGraph& pred, const expr::ScmGraph& truth) {
  if (pred.dim != truth.dim) {
    throw std::invalid_argument("scm_edge_metrics: dimension mismatch");
  }

  int tp = 0;
  for (const auto& e : pred.edges) tp += truth.edges.count(e) ? 1 : 0;
  const int fp = static_cast<int>(pred.edges.size()) - tp;
  const int fn = static_cast<int>(truth.edges.size()) - tp;

  EdgeMetrics out;
  out.complexity = static_cast<int>(pred.edges.size());
  out.shd = fp + fn;
  out.precision = pred.edges.empty() ? 0.0 : static_cast<double>(tp) / pred.edges.size();
  out.recall = truth.edges.empty() ? 0.0 : static_cast<double>(tp) / truth.edges.size();
  out.fdr = 1.0 - out.precision;
  const double denom = out.precision + out.recall;
  out.f1 = denom == 0.0 ? 0.0 : 2.0 * out.precision * out.recall / denom;
  return out;
}

}  // namespace symbolbench::metrics
