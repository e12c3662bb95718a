#pragma once

#include <cmath>
#include <cstdint>
#include <span>

#include "symbolbench/expr/alg_ast.hpp"
#include "symbolbench/expr/bool_ast.hpp"

namespace symbolbench::expr {

/// Evaluates a tree at state `x` with dense coefficient storage indexed by
/// placeholder index. Domain violations (log of a non-positive value,
/// division by zero, ...) propagate as non-finite results; nothing is
/// clamped.
inline double evaluate(const AlgExpr& node, std::span<const double> x,
                       std::span<const double> coeffs) {
  switch (node.kind) {
    case AlgKind::Literal:
      return node.literal;
    case AlgKind::Coeff:
      return node.index >= 0 && node.index < static_cast<int>(coeffs.size())
                 ? coeffs[node.index]
                 : std::nan("");
    case AlgKind::Var:
      return node.index >= 0 && node.index < static_cast<int>(x.size())
                 ? x[node.index]
                 : std::nan("");
    case AlgKind::Sum: {
      double acc = 0.0;
      for (const auto& child : node.args) acc += evaluate(child, x, coeffs);
      return acc;
    }
    case AlgKind::Product: {
      double acc = node.negated ? -1.0 : 1.0;
      for (const auto& child : node.args) acc *= evaluate(child, x, coeffs);
      return acc;
    }
    case AlgKind::Divide:
      return evaluate(node.args[0], x, coeffs) / evaluate(node.args[1], x, coeffs);
    case AlgKind::Power:
      return std::pow(evaluate(node.args[0], x, coeffs),
                      evaluate(node.args[1], x, coeffs));
    case AlgKind::Call: {
      double v = evaluate(node.args[0], x, coeffs);
      switch (node.fn) {
        case UnaryFn::Sin: return std::sin(v);
        case UnaryFn::Cos: return std::cos(v);
        case UnaryFn::Tan: return std::tan(v);
        case UnaryFn::Exp: return std::exp(v);
        case UnaryFn::Log: return std::log(v);
        case UnaryFn::Sqrt: return std::sqrt(v);
        case UnaryFn::Abs: return std::abs(v);
        case UnaryFn::Cot: return std::cos(v) / std::sin(v);
      }
      return std::nan("");
    }
  }
  return std::nan("");
}

inline bool evaluate(const BoolExpr& node, std::span<const std::uint8_t> state) {
  switch (node.kind) {
    case BoolKind::Var:
      return state[node.index] != 0;
    case BoolKind::Not:
      return !evaluate(node.args[0], state);
    case BoolKind::And:
      for (const auto& child : node.args) {
        if (!evaluate(child, state)) return false;
      }
      return true;
    case BoolKind::Or:
      for (const auto& child : node.args) {
        if (evaluate(child, state)) return true;
      }
      return false;
  }
  return false;
}

}  // namespace symbolbench::expr
