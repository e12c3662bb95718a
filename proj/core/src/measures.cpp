#include "symbolbench/expr/measures.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <vector>

namespace symbolbench::expr {

void ScmGraph::validate() const {
  if (dim <= 0) throw std::invalid_argument("ScmGraph: dimension must be positive");
  if (max_lag <= 0) throw std::invalid_argument("ScmGraph: max_lag must be positive");
  for (const auto& e : edges) {
    if (e.source < 0 || e.source >= dim || e.target < 0 || e.target >= dim) {
      throw std::invalid_argument("ScmGraph: edge variable index out of range");
    }
    if (e.lag < 1 || e.lag > max_lag) {
      throw std::invalid_argument("ScmGraph: edge lag out of [1, max_lag]");
    }
  }
}

int complexity(const AlgExpr& node) {
  int ops = 0;
  switch (node.kind) {
    case AlgKind::Literal:
    case AlgKind::Coeff:
    case AlgKind::Var:
      break;
    case AlgKind::Sum:
    case AlgKind::Product:
      ops += static_cast<int>(node.args.size()) - 1;
      break;
    case AlgKind::Divide:
    case AlgKind::Power:
    case AlgKind::Call:
      ops += 1;
      break;
  }
  for (const auto& child : node.args) ops += complexity(child);
  return ops;
}

int complexity(const AlgebraicSystem& system) {
  int ops = 0;
  for (const auto& eq : system.equations) ops += complexity(eq);
  return ops;
}

int complexity(const BoolExpr& node) {
  int ops = 0;
  switch (node.kind) {
    case BoolKind::Var:
      break;
    case BoolKind::Not:
      ops += 1;
      break;
    case BoolKind::And:
    case BoolKind::Or:
      ops += static_cast<int>(node.args.size()) - 1;
      break;
  }
  for (const auto& child : node.args) ops += complexity(child);
  return ops;
}

int complexity(const BooleanNetwork& net) {
  int ops = 0;
  for (const auto& rule : net.rules) ops += complexity(rule);
  return ops;
}

namespace {

template <typename Node>
void collect_vars(const Node& node, std::set<int>& out);

template <>
void collect_vars(const AlgExpr& node, std::set<int>& out) {
  if (node.kind == AlgKind::Var) out.insert(node.index);
  for (const auto& child : node.args) collect_vars(child, out);
}

template <>
void collect_vars(const BoolExpr& node, std::set<int>& out) {
  if (node.kind == BoolKind::Var) out.insert(node.index);
  for (const auto& child : node.args) collect_vars(child, out);
}

}  // namespace

std::set<int> free_variables(const AlgExpr& node) {
  std::set<int> out;
  collect_vars(node, out);
  return out;
}

std::set<int> free_variables(const AlgebraicSystem& system) {
  std::set<int> out;
  for (const auto& eq : system.equations) collect_vars(eq, out);
  return out;
}

std::set<int> free_variables(const BoolExpr& node) {
  std::set<int> out;
  collect_vars(node, out);
  return out;
}

std::set<int> free_variables(const BooleanNetwork& net) {
  std::set<int> out;
  for (const auto& rule : net.rules) collect_vars(rule, out);
  return out;
}

namespace {

void collect_placeholders(const AlgExpr& node, std::set<int>& out) {
  if (node.kind == AlgKind::Coeff) out.insert(node.index);
  for (const auto& child : node.args) collect_placeholders(child, out);
}

void renumber(AlgExpr& node, std::map<int, int>& remap, int& next) {
  if (node.kind == AlgKind::Coeff) {
    if (node.index < 0) {
      // Unindexed placeholder: always fresh, never shared.
      node.index = next++;
    } else {
      auto [it, inserted] = remap.try_emplace(node.index, next);
      if (inserted) ++next;
      node.index = it->second;
    }
  }
  for (auto& child : node.args) renumber(child, remap, next);
}

}  // namespace

std::set<int> placeholder_indices(const AlgExpr& node) {
  std::set<int> out;
  collect_placeholders(node, out);
  return out;
}

std::set<int> placeholder_indices(const AlgebraicSystem& system) {
  std::set<int> out;
  for (const auto& eq : system.equations) collect_placeholders(eq, out);
  return out;
}

AlgebraicSystem renumber_placeholders(AlgebraicSystem system) {
  std::map<int, int> remap;
  int next = 0;
  for (auto& eq : system.equations) renumber(eq, remap, next);
  return system;
}

namespace {

// Canonical keys are built bottom-up; commutative children are sorted by
// their key strings, and coefficient indices are erased so that two
// structures differing only in placeholder numbering collide.
std::string key(const AlgExpr& node) {
  switch (node.kind) {
    case AlgKind::Literal: {
      char buf[40];
      std::snprintf(buf, sizeof(buf), "L%.17g", node.literal);
      return buf;
    }
    case AlgKind::Coeff:
      return "C";
    case AlgKind::Var:
      return "X" + std::to_string(node.index);
    case AlgKind::Sum:
    case AlgKind::Product: {
      std::vector<std::string> child_keys;
      child_keys.reserve(node.args.size());
      for (const auto& child : node.args) child_keys.push_back(key(child));
      std::sort(child_keys.begin(), child_keys.end());
      std::string out = node.kind == AlgKind::Sum ? "S(" : (node.negated ? "P-(" : "P(");
      for (size_t i = 0; i < child_keys.size(); ++i) {
        if (i > 0) out += ",";
        out += child_keys[i];
      }
      return out + ")";
    }
    case AlgKind::Divide:
      return "D(" + key(node.args[0]) + "," + key(node.args[1]) + ")";
    case AlgKind::Power:
      return "W(" + key(node.args[0]) + "," + key(node.args[1]) + ")";
    case AlgKind::Call:
      return std::string("F") + fn_name(node.fn) + "(" + key(node.args[0]) + ")";
  }
  return "?";
}

std::string key(const BoolExpr& node) {
  switch (node.kind) {
    case BoolKind::Var:
      return "X" + std::to_string(node.index);
    case BoolKind::Not:
      return "N(" + key(node.args[0]) + ")";
    case BoolKind::And:
    case BoolKind::Or: {
      std::vector<std::string> child_keys;
      child_keys.reserve(node.args.size());
      for (const auto& child : node.args) child_keys.push_back(key(child));
      std::sort(child_keys.begin(), child_keys.end());
      std::string out = node.kind == BoolKind::And ? "A(" : "O(";
      for (size_t i = 0; i < child_keys.size(); ++i) {
        if (i > 0) out += ",";
        out += child_keys[i];
      }
      return out + ")";
    }
  }
  return "?";
}

}  // namespace

std::string canonical_key(const AlgExpr& node) { return key(node); }

std::string canonical_key(const AlgebraicSystem& system) {
  std::string out = "sys" + std::to_string(system.dim) + "[";
  for (size_t i = 0; i < system.equations.size(); ++i) {
    if (i > 0) out += ";";
    out += key(system.equations[i]);
  }
  return out + "]";
}

std::string canonical_key(const BoolExpr& node) { return key(node); }

std::string canonical_key(const BooleanNetwork& net) {
  std::string out = "bn" + std::to_string(net.dim) + "[";
  for (size_t i = 0; i < net.rules.size(); ++i) {
    if (i > 0) out += ";";
    out += key(net.rules[i]);
  }
  return out + "]";
}

std::string canonical_key(const ScmGraph& graph) {
  std::string out = "scm" + std::to_string(graph.dim) + "[";
  bool first = true;
  for (const auto& e : graph.edges) {
    if (!first) out += ";";
    first = false;
    out += std::to_string(e.source) + "," + std::to_string(e.lag) + "," +
           std::to_string(e.target);
  }
  return out + "]";
}

}  // namespace symbolbench::expr
