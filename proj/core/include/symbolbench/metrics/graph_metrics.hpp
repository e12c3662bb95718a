#pragma once

#include "symbolbench/expr/scm_graph.hpp"

namespace symbolbench::metrics {

struct EdgeMetrics {
  double f1 = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double fdr = 0.0;  // 1 - precision
  int shd = 0;       // size of the symmetric difference of edge sets
  int complexity = 0;  // |pred.edges|
};

/// Classification metrics over lagged edge triples (source, lag, target).
/// Throws on a dimension mismatch.
EdgeMetrics scm_edge_metrics(const expr::ScmGraph& pred, const expr::ScmGraph& truth);

}  // namespace symbolbench::metrics
