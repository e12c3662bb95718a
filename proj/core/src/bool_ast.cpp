#include "symbolbench/expr/bool_ast.hpp"

#include <utility>

namespace symbolbench::expr {

BoolExpr BoolExpr::var(int idx) {
  BoolExpr e;
  e.kind = BoolKind::Var;
  e.index = idx;
  return e;
}

BoolExpr BoolExpr::negate(BoolExpr arg) {
  BoolExpr e;
  e.kind = BoolKind::Not;
  e.args.push_back(std::move(arg));
  return e;
}

BoolExpr BoolExpr::conj(std::vector<BoolExpr> args) {
  BoolExpr e;
  e.kind = BoolKind::And;
  e.args = std::move(args);
  return e;
}

BoolExpr BoolExpr::disj(std::vector<BoolExpr> args) {
  BoolExpr e;
  e.kind = BoolKind::Or;
  e.args = std::move(args);
  return e;
}

BoolExpr normalize(BoolExpr node) {
  for (auto& child : node.args) child = normalize(std::move(child));
  if (node.kind == BoolKind::And || node.kind == BoolKind::Or) {
    std::vector<BoolExpr> flat;
    flat.reserve(node.args.size());
    for (auto& child : node.args) {
      if (child.kind == node.kind) {
        for (auto& grand : child.args) flat.push_back(std::move(grand));
      } else {
        flat.push_back(std::move(child));
      }
    }
    if (flat.size() == 1) return std::move(flat.front());
    node.args = std::move(flat);
  }
  return node;
}

namespace {

// Precedence: Or < And < Not < Var.
int prec(BoolKind k) {
  switch (k) {
    case BoolKind::Or: return 1;
    case BoolKind::And: return 2;
    case BoolKind::Not: return 3;
    case BoolKind::Var: return 4;
  }
  return 0;
}

std::string print(const BoolExpr& e, int parent_prec) {
  std::string out;
  switch (e.kind) {
    case BoolKind::Var:
      out = "x" + std::to_string(e.index + 1);
      break;
    case BoolKind::Not:
      out = "NOT " + print(e.args[0], prec(BoolKind::Not));
      break;
    case BoolKind::And:
    case BoolKind::Or: {
      const char* joiner = e.kind == BoolKind::And ? " AND " : " OR ";
      for (size_t i = 0; i < e.args.size(); ++i) {
        if (i > 0) out += joiner;
        out += print(e.args[i], prec(e.kind));
      }
      break;
    }
  }
  if (prec(e.kind) < parent_prec) return "( " + out + " )";
  return out;
}

}  // namespace

std::string to_string(const BoolExpr& node) { return print(node, 0); }

std::vector<std::string> to_rule_lines(const BooleanNetwork& net) {
  std::vector<std::string> lines;
  lines.reserve(net.rules.size());
  for (size_t i = 0; i < net.rules.size(); ++i) {
    lines.push_back("x" + std::to_string(i + 1) + " = " +
                    to_string(net.rules[i]));
  }
  return lines;
}

}  // namespace symbolbench::expr
