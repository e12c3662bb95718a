#pragma once

#include <set>
#include <string>

#include "symbolbench/expr/alg_ast.hpp"
#include "symbolbench/expr/bool_ast.hpp"
#include "symbolbench/expr/scm_graph.hpp"

namespace symbolbench::expr {

/// Operation count of a normalized structure. Flattened n-ary sums,
/// products, ANDs and ORs contribute (arity - 1); division, power, unary
/// functions and NOT contribute 1 each; a sign folded into a product is
/// free.
int complexity(const AlgExpr& node);
int complexity(const AlgebraicSystem& system);
int complexity(const BoolExpr& node);
int complexity(const BooleanNetwork& net);

/// Variable indices appearing anywhere in the structure.
std::set<int> free_variables(const AlgExpr& node);
std::set<int> free_variables(const AlgebraicSystem& system);
std::set<int> free_variables(const BoolExpr& node);
std::set<int> free_variables(const BooleanNetwork& net);

/// Sorted distinct placeholder indices of a system.
std::set<int> placeholder_indices(const AlgExpr& node);
std::set<int> placeholder_indices(const AlgebraicSystem& system);

/// Renumbers all placeholders to fresh indices 0..K-1 left to right (shared
/// indices stay shared).
AlgebraicSystem renumber_placeholders(AlgebraicSystem system);

/// Deduplication key: deterministic, invariant under commutative reordering
/// and coefficient reindexing. Equal keys identify structurally equal
/// candidates.
std::string canonical_key(const AlgExpr& node);
std::string canonical_key(const AlgebraicSystem& system);
std::string canonical_key(const BoolExpr& node);
std::string canonical_key(const BooleanNetwork& net);
std::string canonical_key(const ScmGraph& graph);

}  // namespace symbolbench::expr
