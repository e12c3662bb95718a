#include "symbolbench/expr/alg_ast.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <utility>

namespace symbolbench::expr {

const char* fn_name(UnaryFn fn) {
  switch (fn) {
    case UnaryFn::Sin: return "sin";
    case UnaryFn::Cos: return "cos";
    case UnaryFn::Tan: return "tan";
    case UnaryFn::Exp: return "exp";
    case UnaryFn::Log: return "log";
    case UnaryFn::Sqrt: return "sqrt";
    case UnaryFn::Abs: return "abs";
    case UnaryFn::Cot: return "cot";
  }
  return "?";
}

AlgExpr AlgExpr::lit(double v) {
  AlgExpr e;
  e.kind = AlgKind::Literal;
  e.literal = v;
  return e;
}

AlgExpr AlgExpr::coeff(int idx) {
  AlgExpr e;
  e.kind = AlgKind::Coeff;
  e.index = idx;
  return e;
}

AlgExpr AlgExpr::var(int idx) {
  AlgExpr e;
  e.kind = AlgKind::Var;
  e.index = idx;
  return e;
}

AlgExpr AlgExpr::sum(std::vector<AlgExpr> terms) {
  AlgExpr e;
  e.kind = AlgKind::Sum;
  e.args = std::move(terms);
  return e;
}

AlgExpr AlgExpr::product(std::vector<AlgExpr> factors, bool neg) {
  AlgExpr e;
  e.kind = AlgKind::Product;
  e.negated = neg;
  e.args = std::move(factors);
  return e;
}

AlgExpr AlgExpr::divide(AlgExpr num, AlgExpr den) {
  AlgExpr e;
  e.kind = AlgKind::Divide;
  e.args.push_back(std::move(num));
  e.args.push_back(std::move(den));
  return e;
}

AlgExpr AlgExpr::power(AlgExpr base, AlgExpr exponent) {
  AlgExpr e;
  e.kind = AlgKind::Power;
  e.args.push_back(std::move(base));
  e.args.push_back(std::move(exponent));
  return e;
}

AlgExpr AlgExpr::call(UnaryFn f, AlgExpr arg) {
  AlgExpr e;
  e.kind = AlgKind::Call;
  e.fn = f;
  e.args.push_back(std::move(arg));
  return e;
}

AlgExpr normalize(AlgExpr node) {
  for (auto& child : node.args) child = normalize(std::move(child));

  switch (node.kind) {
    case AlgKind::Sum: {
      std::vector<AlgExpr> flat;
      flat.reserve(node.args.size());
      for (auto& child : node.args) {
        if (child.kind == AlgKind::Sum) {
          for (auto& grand : child.args) flat.push_back(std::move(grand));
        } else {
          flat.push_back(std::move(child));
        }
      }
      if (flat.size() == 1) return std::move(flat.front());
      node.args = std::move(flat);
      return node;
    }
    case AlgKind::Product: {
      bool neg = node.negated;
      std::vector<AlgExpr> flat;
      flat.reserve(node.args.size());
      for (auto& child : node.args) {
        if (child.kind == AlgKind::Product) {
          neg ^= child.negated;
          for (auto& grand : child.args) flat.push_back(std::move(grand));
        } else {
          flat.push_back(std::move(child));
        }
      }
      if (flat.size() == 1 && !neg) return std::move(flat.front());
      node.negated = neg;
      node.args = std::move(flat);
      return node;
    }
    case AlgKind::Divide: {
      // Hoist a signed numerator above the division so the sign has one
      // canonical position.
      if (node.args[0].kind == AlgKind::Product && node.args[0].negated) {
        node.args[0].negated = false;
        node.args[0] = normalize(std::move(node.args[0]));
        return AlgExpr::product({std::move(node)}, true);
      }
      return node;
    }
    default:
      return node;
  }
}

namespace {

std::string format_literal(double v) {
  if (v == static_cast<long long>(v) && std::abs(v) < 1e15) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(v));
    return buf;
  }
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  // Trim to the shortest representation that round-trips.
  for (int prec = 1; prec < 17; ++prec) {
    char probe[40];
    std::snprintf(probe, sizeof(probe), "%.*g", prec, v);
    if (std::strtod(probe, nullptr) == v) return probe;
  }
  return buf;
}

bool is_atom(const AlgExpr& e) {
  switch (e.kind) {
    case AlgKind::Coeff:
    case AlgKind::Var:
    case AlgKind::Call:
      return true;
    case AlgKind::Literal:
      return e.literal >= 0.0;
    default:
      return false;
  }
}

std::string print(const AlgExpr& e);

std::string parenthesize(const AlgExpr& e) { return "(" + print(e) + ")"; }

// True when the printed form starts with a minus sign.
bool prints_negative(const AlgExpr& e) {
  return (e.kind == AlgKind::Product && e.negated) ||
         (e.kind == AlgKind::Literal && e.literal < 0.0);
}

std::string print_product_factor(const AlgExpr& f, bool first) {
  // Sums always need parens inside a product; a division needs them when it
  // is not the leading factor (otherwise "a*b/c" would re-associate);
  // signed factors keep their sign inside parens.
  if (f.kind == AlgKind::Sum || prints_negative(f) ||
      (f.kind == AlgKind::Divide && !first)) {
    return parenthesize(f);
  }
  return print(f);
}

std::string print_unsigned(const AlgExpr& e) {
  if (e.kind == AlgKind::Product && e.negated) {
    AlgExpr copy = e;
    copy.negated = false;
    if (copy.args.size() == 1) {
      const AlgExpr& inner = copy.args.front();
      // A bare negated wrapper prints as the inner node (sign handled by
      // the caller), with parens when precedence demands.
      if (inner.kind == AlgKind::Sum) return parenthesize(inner);
      return print(inner);
    }
    return print(copy);
  }
  if (e.kind == AlgKind::Literal && e.literal < 0.0) {
    return format_literal(-e.literal);
  }
  return print(e);
}

std::string print(const AlgExpr& e) {
  switch (e.kind) {
    case AlgKind::Literal:
      return e.literal < 0.0 ? "-" + format_literal(-e.literal)
                             : format_literal(e.literal);
    case AlgKind::Coeff:
      return "c_" + std::to_string(e.index);
    case AlgKind::Var:
      return "x_" + std::to_string(e.index);
    case AlgKind::Sum: {
      std::string out;
      for (size_t i = 0; i < e.args.size(); ++i) {
        const AlgExpr& term = e.args[i];
        if (i == 0) {
          out = print(term);
        } else if (prints_negative(term)) {
          out += " - " + print_unsigned(term);
        } else {
          out += " + " + print(term);
        }
      }
      return out;
    }
    case AlgKind::Product: {
      std::string out = e.negated ? "-" : "";
      for (size_t i = 0; i < e.args.size(); ++i) {
        if (i > 0) out += "*";
        out += print_product_factor(e.args[i], i == 0);
      }
      return out;
    }
    case AlgKind::Divide: {
      const AlgExpr& num = e.args[0];
      const AlgExpr& den = e.args[1];
      std::string lhs = (num.kind == AlgKind::Sum || prints_negative(num))
                            ? parenthesize(num)
                            : print(num);
      std::string rhs = is_atom(den) ? print(den) : parenthesize(den);
      return lhs + "/" + rhs;
    }
    case AlgKind::Power: {
      const AlgExpr& base = e.args[0];
      const AlgExpr& exponent = e.args[1];
      std::string lhs = is_atom(base) ? print(base) : parenthesize(base);
      std::string rhs =
          is_atom(exponent) ? print(exponent) : parenthesize(exponent);
      return lhs + "**" + rhs;
    }
    case AlgKind::Call:
      return std::string(fn_name(e.fn)) + "(" + print(e.args[0]) + ")";
  }
  return "?";
}

}  // namespace

std::string to_string(const AlgExpr& node) { return print(node); }

std::string to_string(const AlgebraicSystem& system) {
  std::string out;
  for (size_t i = 0; i < system.equations.size(); ++i) {
    if (i > 0) out += " | ";
    out += print(system.equations[i]);
  }
  return out;
}

}  // namespace symbolbench::expr
