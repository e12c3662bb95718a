#pragma once

#include <string>
#include <vector>

namespace symbolbench::expr {

/// Unary functions allowed in the algebraic DSL.
enum class UnaryFn { Sin, Cos, Tan, Exp, Log, Sqrt, Abs, Cot };

const char* fn_name(UnaryFn fn);

enum class AlgKind {
  Literal,  // real constant
  Coeff,    // fittable coefficient placeholder c_<index>
  Var,      // state variable x_<index>
  Sum,      // n-ary, flattened
  Product,  // n-ary, flattened, carries an optional folded sign
  Divide,   // binary
  Power,    // binary
  Call,     // unary function application
};

/// One node of an algebraic expression tree. Value type; immutable by
/// convention after normalize().
struct AlgExpr {
  AlgKind kind = AlgKind::Literal;
  double literal = 0.0;        // Literal
  int index = -1;              // Coeff / Var
  UnaryFn fn = UnaryFn::Sin;   // Call
  bool negated = false;        // Product only: leading -1 folded in
  std::vector<AlgExpr> args;

  bool operator==(const AlgExpr&) const = default;

  static AlgExpr lit(double v);
  static AlgExpr coeff(int idx);
  static AlgExpr var(int idx);
  static AlgExpr sum(std::vector<AlgExpr> terms);
  static AlgExpr product(std::vector<AlgExpr> factors, bool neg = false);
  static AlgExpr divide(AlgExpr num, AlgExpr den);
  static AlgExpr power(AlgExpr base, AlgExpr exponent);
  static AlgExpr call(UnaryFn f, AlgExpr arg);
};

/// A system of D expressions, one per state derivative dx_i/dt.
struct AlgebraicSystem {
  int dim = 0;
  std::vector<AlgExpr> equations;

  bool operator==(const AlgebraicSystem&) const = default;
};

/// Rewrites a tree into normal form: nested sums/products are flattened,
/// unary minus is folded into product signs or literals, and a division
/// whose numerator carries a sign has the sign hoisted above the division.
/// No arithmetic simplification is performed.
AlgExpr normalize(AlgExpr node);

/// Canonical printer. Parsing the result reproduces the tree exactly
/// (coefficients are always printed with explicit indices).
std::string to_string(const AlgExpr& node);
std::string to_string(const AlgebraicSystem& system);  // equations joined by " | "

}  // namespace symbolbench::expr
