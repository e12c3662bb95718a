#include <cctype>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <utility>

#include "symbolbench/expr/parse.hpp"

namespace symbolbench::expr {

namespace {

struct Cursor {
  std::string text;  // owned: callers may hand in temporaries
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  bool consume(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  bool consume(const char* s) {
    skip_ws();
    size_t n = std::char_traits<char>::length(s);
    if (text.compare(pos, n, s) == 0) {
      pos += n;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) {
    throw ParseError(what + " at position " + std::to_string(pos),
                     static_cast<long>(pos));
  }
};

struct AlgParser {
  Cursor cur;
  int dim;
  // Distinct placeholder state for bare-`c` index assignment.
  std::set<int> used_indices;
  int next_auto = 0;
  std::vector<AlgExpr*> bare_placeholders;  // filled after tree is stable

  explicit AlgParser(const std::string& text, int dim_) : cur{text}, dim(dim_) {}

  AlgExpr negate(AlgExpr e) {
    if (e.kind == AlgKind::Literal) {
      e.literal = -e.literal;
      return e;
    }
    if (e.kind == AlgKind::Product) {
      e.negated = !e.negated;
      return e;
    }
    return AlgExpr::product({std::move(e)}, true);
  }

  AlgExpr parse_expr() {
    std::vector<AlgExpr> terms;
    terms.push_back(parse_term());
    while (true) {
      if (cur.consume('+')) {
        terms.push_back(parse_term());
      } else if (cur.peek() == '-') {
        cur.consume('-');
        terms.push_back(negate(parse_term()));
      } else {
        break;
      }
    }
    if (terms.size() == 1) return std::move(terms.front());
    return AlgExpr::sum(std::move(terms));
  }

  AlgExpr parse_term() {
    AlgExpr lhs = parse_unary();
    std::vector<AlgExpr> factors;
    factors.push_back(std::move(lhs));
    while (true) {
      cur.skip_ws();
      if (cur.pos < cur.text.size() && cur.text[cur.pos] == '*' &&
          !(cur.pos + 1 < cur.text.size() && cur.text[cur.pos + 1] == '*')) {
        ++cur.pos;
        factors.push_back(parse_unary());
      } else if (cur.peek() == '/') {
        cur.consume('/');
        AlgExpr den = parse_unary();
        AlgExpr num = factors.size() == 1
                          ? std::move(factors.front())
                          : AlgExpr::product(std::move(factors));
        factors.clear();
        factors.push_back(AlgExpr::divide(std::move(num), std::move(den)));
      } else {
        break;
      }
    }
    if (factors.size() == 1) return std::move(factors.front());
    return AlgExpr::product(std::move(factors));
  }

  AlgExpr parse_unary() {
    if (cur.consume('+')) return parse_unary();
    if (cur.peek() == '-') {
      cur.consume('-');
      return negate(parse_unary());
    }
    return parse_power();
  }

  AlgExpr parse_power() {
    AlgExpr base = parse_atom();
    cur.skip_ws();
    if (cur.consume("**") || cur.consume('^')) {
      AlgExpr exponent = parse_unary();
      return AlgExpr::power(std::move(base), std::move(exponent));
    }
    return base;
  }

  std::optional<int> parse_subscript() {
    // `_<digits>`; returns nullopt when no underscore follows.
    if (cur.pos < cur.text.size() && cur.text[cur.pos] == '_') {
      size_t p = cur.pos + 1;
      // Accept an optional {..} wrapper as emitted by some formatters.
      bool braced = p < cur.text.size() && cur.text[p] == '{';
      if (braced) ++p;
      size_t start = p;
      while (p < cur.text.size() && std::isdigit(static_cast<unsigned char>(cur.text[p]))) ++p;
      if (p == start) cur.fail("expected index digits after '_'");
      int value = std::atoi(cur.text.substr(start, p - start).c_str());
      if (braced) {
        if (p >= cur.text.size() || cur.text[p] != '}') cur.fail("expected '}'");
        ++p;
      }
      cur.pos = p;
      return value;
    }
    return std::nullopt;
  }

  AlgExpr parse_atom() {
    cur.skip_ws();
    if (cur.eof()) cur.fail("unexpected end of expression");
    char c = cur.text[cur.pos];

    if (c == '(') {
      ++cur.pos;
      AlgExpr inner = parse_expr();
      if (!cur.consume(')')) cur.fail("expected ')'");
      return inner;
    }

    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      char* end = nullptr;
      double value = std::strtod(cur.text.c_str() + cur.pos, &end);
      if (end == cur.text.c_str() + cur.pos) cur.fail("malformed number");
      cur.pos = static_cast<size_t>(end - cur.text.c_str());
      return AlgExpr::lit(value);
    }

    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t start = cur.pos;
      while (cur.pos < cur.text.size() &&
             std::isalpha(static_cast<unsigned char>(cur.text[cur.pos]))) {
        ++cur.pos;
      }
      std::string word = cur.text.substr(start, cur.pos - start);

      if (word == "x") {
        auto idx = parse_subscript();
        if (!idx) cur.fail("variable requires an index, e.g. x_0");
        if (*idx < 0 || *idx >= dim) {
          throw ParseError("variable index " + std::to_string(*idx) +
                               " out of range for dimension " + std::to_string(dim),
                           static_cast<long>(start));
        }
        return AlgExpr::var(*idx);
      }
      if (word == "c") {
        auto idx = parse_subscript();
        if (idx) {
          used_indices.insert(*idx);
          return AlgExpr::coeff(*idx);
        }
        return AlgExpr::coeff(-1);  // bare placeholder, indexed later
      }

      static const std::map<std::string, UnaryFn> kFns = {
          {"sin", UnaryFn::Sin},   {"cos", UnaryFn::Cos}, {"tan", UnaryFn::Tan},
          {"exp", UnaryFn::Exp},   {"log", UnaryFn::Log}, {"sqrt", UnaryFn::Sqrt},
          {"abs", UnaryFn::Abs},   {"cot", UnaryFn::Cot},
      };
      auto it = kFns.find(word);
      if (it == kFns.end()) {
        throw ParseError("unknown function or symbol '" + word + "' at position " +
                             std::to_string(start),
                         static_cast<long>(start));
      }
      if (!cur.consume('(')) cur.fail("expected '(' after function name");
      AlgExpr arg = parse_expr();
      if (!cur.consume(')')) cur.fail("expected ')'");
      return AlgExpr::call(it->second, std::move(arg));
    }

    cur.fail(std::string("unexpected character '") + c + "'");
  }

  void assign_bare_indices(AlgExpr& node) {
    if (node.kind == AlgKind::Coeff && node.index < 0) {
      while (used_indices.count(next_auto)) ++next_auto;
      node.index = next_auto;
      used_indices.insert(next_auto);
    }
    for (auto& child : node.args) assign_bare_indices(child);
  }
};

std::vector<std::string> split_pipes(const std::string& text) {
  std::vector<std::string> parts;
  size_t start = 0;
  while (true) {
    size_t bar = text.find('|', start);
    if (bar == std::string::npos) {
      parts.push_back(text.substr(start));
      break;
    }
    parts.push_back(text.substr(start, bar - start));
    start = bar + 1;
  }
  return parts;
}

}  // namespace

AlgebraicSystem parse_algebraic(const std::string& text, int dim) {
  if (dim <= 0) throw ParseError("dimension must be positive");
  auto parts = split_pipes(text);
  if (static_cast<int>(parts.size()) != dim) {
    throw ParseError("equation count " + std::to_string(parts.size()) +
                     " does not match dimension " + std::to_string(dim));
  }

  AlgebraicSystem system;
  system.dim = dim;

  // Parse all equations first so explicit indices anywhere in the system are
  // known before bare placeholders are numbered left to right.
  std::vector<AlgParser> parsers;
  parsers.reserve(parts.size());
  std::set<int> explicit_indices;
  for (const auto& part : parts) {
    auto& parser = parsers.emplace_back(part, dim);
    AlgExpr eq = parser.parse_expr();
    if (!parser.cur.eof()) parser.cur.fail("trailing input after expression");
    explicit_indices.insert(parser.used_indices.begin(), parser.used_indices.end());
    system.equations.push_back(normalize(std::move(eq)));
  }

  AlgParser numberer("", dim);
  numberer.used_indices = std::move(explicit_indices);
  for (auto& eq : system.equations) numberer.assign_bare_indices(eq);
  return system;
}

AlgExpr parse_algebraic_expr(const std::string& text, int dim) {
  if (dim <= 0) throw ParseError("dimension must be positive");
  AlgParser parser(text, dim);
  AlgExpr eq = parser.parse_expr();
  if (!parser.cur.eof()) parser.cur.fail("trailing input after expression");
  eq = normalize(std::move(eq));
  parser.assign_bare_indices(eq);
  return eq;
}

namespace {

struct BoolParser {
  Cursor cur;
  int dim;

  BoolParser(const std::string& text, int dim_) : cur{text}, dim(dim_) {}

  bool consume_word(const char* word) {
    cur.skip_ws();
    size_t n = std::char_traits<char>::length(word);
    if (cur.text.size() - cur.pos < n) return false;
    for (size_t i = 0; i < n; ++i) {
      if (std::toupper(static_cast<unsigned char>(cur.text[cur.pos + i])) != word[i]) return false;
    }
    size_t after = cur.pos + n;
    if (after < cur.text.size() &&
        std::isalnum(static_cast<unsigned char>(cur.text[after]))) {
      return false;
    }
    cur.pos = after;
    return true;
  }

  BoolExpr parse_or() {
    std::vector<BoolExpr> args;
    args.push_back(parse_and());
    while (consume_word("OR")) args.push_back(parse_and());
    if (args.size() == 1) return std::move(args.front());
    return BoolExpr::disj(std::move(args));
  }

  BoolExpr parse_and() {
    std::vector<BoolExpr> args;
    args.push_back(parse_not());
    while (consume_word("AND")) args.push_back(parse_not());
    if (args.size() == 1) return std::move(args.front());
    return BoolExpr::conj(std::move(args));
  }

  BoolExpr parse_not() {
    if (consume_word("NOT")) return BoolExpr::negate(parse_not());
    return parse_bool_atom();
  }

  BoolExpr parse_bool_atom() {
    if (cur.consume('(')) {
      BoolExpr inner = parse_or();
      if (!cur.consume(')')) cur.fail("expected ')'");
      return inner;
    }
    cur.skip_ws();
    if (cur.pos < cur.text.size() &&
        (cur.text[cur.pos] == 'x' || cur.text[cur.pos] == 'X')) {
      size_t start = ++cur.pos;
      while (cur.pos < cur.text.size() &&
             std::isdigit(static_cast<unsigned char>(cur.text[cur.pos]))) {
        ++cur.pos;
      }
      if (cur.pos == start) cur.fail("expected variable number after 'x'");
      int one_based = std::atoi(cur.text.substr(start, cur.pos - start).c_str());
      if (one_based < 1 || one_based > dim) {
        throw ParseError("variable x" + std::to_string(one_based) +
                             " out of range for dimension " + std::to_string(dim),
                         static_cast<long>(start));
      }
      return BoolExpr::var(one_based - 1);
    }
    cur.fail("expected variable or '('");
  }
};

}  // namespace

BooleanNetwork parse_boolean(const std::vector<std::string>& lines, int dim) {
  if (dim <= 0) throw ParseError("dimension must be positive");
  if (static_cast<int>(lines.size()) != dim) {
    throw ParseError("rule count " + std::to_string(lines.size()) +
                     " does not match dimension " + std::to_string(dim));
  }

  BooleanNetwork net;
  net.dim = dim;
  net.rules.resize(dim);
  std::vector<bool> defined(dim, false);
  for (const auto& line : lines) {
    size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError("rule line missing '=': " + line);
    }
    std::string lhs = line.substr(0, eq);
    BoolParser lhs_parser(lhs, dim);
    BoolExpr target = lhs_parser.parse_bool_atom();
    if (!lhs_parser.cur.eof() || target.kind != BoolKind::Var) {
      throw ParseError("rule left-hand side must be a single variable: " + lhs);
    }
    if (defined[target.index]) {
      throw ParseError("duplicate rule for x" + std::to_string(target.index + 1));
    }
    defined[target.index] = true;

    BoolParser rhs_parser(line.substr(eq + 1), dim);
    BoolExpr rhs = rhs_parser.parse_or();
    if (!rhs_parser.cur.eof()) rhs_parser.cur.fail("trailing input after rule");
    net.rules[target.index] = normalize(std::move(rhs));
  }
  for (int i = 0; i < dim; ++i) {
    if (!defined[i]) {
      throw ParseError("missing rule for x" + std::to_string(i + 1));
    }
  }
  return net;
}

BoolExpr parse_boolean_expr(const std::string& text, int dim) {
  BoolParser parser(text, dim);
  BoolExpr e = parser.parse_or();
  if (!parser.cur.eof()) parser.cur.fail("trailing input after expression");
  return normalize(std::move(e));
}

}  // namespace symbolbench::expr
