#pragma once

#include <string>
#include <vector>

namespace symbolbench::expr {

enum class BoolKind { Var, Not, And, Or };

/// Boolean update-rule expression. AND/OR are flattened n-ary, NOT is unary.
struct BoolExpr {
  BoolKind kind = BoolKind::Var;
  int index = -1;  // Var
  std::vector<BoolExpr> args;

  bool operator==(const BoolExpr&) const = default;

  static BoolExpr var(int idx);
  static BoolExpr negate(BoolExpr arg);
  static BoolExpr conj(std::vector<BoolExpr> args);
  static BoolExpr disj(std::vector<BoolExpr> args);
};

/// Synchronous Boolean network: rule i defines x_i at the next step.
struct BooleanNetwork {
  int dim = 0;
  std::vector<BoolExpr> rules;

  bool operator==(const BooleanNetwork&) const = default;
};

BoolExpr normalize(BoolExpr node);

/// Prints in the dataset style, e.g. "x1 = ( x3 AND x5 ) AND NOT x2"
/// (1-based variable names). Parsing the result reproduces the tree.
std::string to_string(const BoolExpr& node);
std::vector<std::string> to_rule_lines(const BooleanNetwork& net);

}  // namespace symbolbench::expr
