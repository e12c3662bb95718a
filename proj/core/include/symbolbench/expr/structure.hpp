#pragma once

#include <string>
#include <variant>

#include "symbolbench/expr/alg_ast.hpp"
#include "symbolbench/expr/bool_ast.hpp"
#include "symbolbench/expr/measures.hpp"
#include "symbolbench/expr/scm_graph.hpp"

namespace symbolbench::expr {

/// Any proposable structure, across the three task families.
using Structure = std::variant<AlgebraicSystem, BooleanNetwork, ScmGraph>;

inline std::string canonical_key(const Structure& s) {
  return std::visit([](const auto& v) { return canonical_key(v); }, s);
}

inline int structure_complexity(const Structure& s) {
  if (const auto* sys = std::get_if<AlgebraicSystem>(&s)) return complexity(*sys);
  if (const auto* net = std::get_if<BooleanNetwork>(&s)) return complexity(*net);
  return static_cast<int>(std::get<ScmGraph>(s).edges.size());
}

/// Candidate wire text: pipe-joined equations for systems, newline-joined
/// rule lines for networks, and a [[source,lag,target],...] list for graphs.
std::string to_text(const Structure& s);

}  // namespace symbolbench::expr
