#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "symbolbench/expr/alg_ast.hpp"
#include "symbolbench/expr/bool_ast.hpp"

namespace symbolbench::expr {

/// Raised on any malformed candidate text. `position` is a byte offset into
/// the offending input (or -1 when the error is not positional, e.g. an
/// equation-count mismatch).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, long position = -1)
      : std::runtime_error(std::move(message)), position_(position) {}
  long position() const { return position_; }

 private:
  long position_;
};

/// Parses a `|`-separated system of algebraic expressions, one per
/// dimension. Bare `c` placeholders receive fresh indices left to right
/// across the whole system, skipping indices already used explicitly.
AlgebraicSystem parse_algebraic(const std::string& text, int dim);

/// Parses a single expression (dimension still bounds variable indices).
AlgExpr parse_algebraic_expr(const std::string& text, int dim);

/// Parses Boolean update rules, one `x<i> = <expr>` line per variable.
/// Rule names are 1-based in the text and 0-based internally; the order of
/// the lines defines the rule order.
BooleanNetwork parse_boolean(const std::vector<std::string>& lines, int dim);

BoolExpr parse_boolean_expr(const std::string& text, int dim);

}  // namespace symbolbench::expr
