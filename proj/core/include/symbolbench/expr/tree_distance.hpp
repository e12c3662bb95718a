#pragma once

#include <string>
#include <vector>

#include "symbolbench/expr/alg_ast.hpp"
#include "symbolbench/expr/bool_ast.hpp"

namespace symbolbench::expr {

/// Ordered labeled tree used by the edit-distance machinery.
struct LabeledTree {
  std::string label;
  std::vector<LabeledTree> children;
};

/// Converts an expression into its labeled-tree view. Coefficient
/// placeholders map to one uniform label so the metric ignores indexing;
/// product signs are part of the product label.
LabeledTree to_labeled_tree(const AlgExpr& node);
LabeledTree to_labeled_tree(const BoolExpr& node);

/// Minimal number of unit-cost node insertions, deletions and relabelings
/// transforming `a` into `b` (Zhang-Shasha over ordered trees).
int tree_edit_distance(const LabeledTree& a, const LabeledTree& b);

int tree_edit_distance(const AlgExpr& a, const AlgExpr& b);
int tree_edit_distance(const BoolExpr& a, const BoolExpr& b);

/// Systems are compared equation by index; extra equations on either side
/// cost their full node count.
int tree_edit_distance(const AlgebraicSystem& a, const AlgebraicSystem& b);
int tree_edit_distance(const BooleanNetwork& a, const BooleanNetwork& b);

int node_count(const LabeledTree& t);

}  // namespace symbolbench::expr
