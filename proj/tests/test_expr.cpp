#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "support/oracles.hpp"
#include "symbolbench/expr/measures.hpp"
#include "symbolbench/expr/parse.hpp"
#include "symbolbench/expr/tree_distance.hpp"

using namespace symbolbench::expr;

namespace {

const char* kSeirRow0 =
    "-c*x_0*x_1 - c*x_0*x_2 + c*x_0 | c*x_0*x_1 + c*x_0*x_2 - c*x_1 | "
    "c*x_1 - c*x_2 - c*x_3 | -c*x_0 + c*x_2 + c*x_3";
const char* kSeirRow5 =
    "c*x_0*x_1 - c*x_2 | c*x_1*x_2 - c*x_3 | -c*x_0*x_1 + c*x_2 | "
    "c*x_0 - c*x_1 + c*x_3";

// Random normalized expression trees for property tests.
AlgExpr random_expr(std::mt19937_64& rng, int depth, int dim) {
  auto coin = [&](double p) {
    return std::uniform_real_distribution<double>(0, 1)(rng) < p;
  };
  auto pick = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  if (depth <= 1 || coin(0.25)) {
    switch (pick(0, 2)) {
      case 0: return AlgExpr::var(pick(0, dim - 1));
      case 1: return AlgExpr::coeff(pick(0, 3));
      default: return AlgExpr::lit(pick(-3, 5));
    }
  }
  switch (pick(0, 5)) {
    case 0: {
      std::vector<AlgExpr> terms;
      int n = pick(2, 3);
      for (int i = 0; i < n; ++i) terms.push_back(random_expr(rng, depth - 1, dim));
      return AlgExpr::sum(std::move(terms));
    }
    case 1: {
      std::vector<AlgExpr> factors;
      int n = pick(2, 3);
      for (int i = 0; i < n; ++i) factors.push_back(random_expr(rng, depth - 1, dim));
      return AlgExpr::product(std::move(factors), coin(0.4));
    }
    case 2:
      return AlgExpr::divide(random_expr(rng, depth - 1, dim),
                             random_expr(rng, depth - 1, dim));
    case 3:
      return AlgExpr::power(random_expr(rng, depth - 1, dim),
                            random_expr(rng, depth - 1, dim));
    default: {
      static const UnaryFn fns[] = {UnaryFn::Sin, UnaryFn::Cos, UnaryFn::Tan,
                                    UnaryFn::Exp, UnaryFn::Log, UnaryFn::Sqrt,
                                    UnaryFn::Abs, UnaryFn::Cot};
      return AlgExpr::call(fns[pick(0, 7)], random_expr(rng, depth - 1, dim));
    }
  }
}

}  // namespace

TEST_CASE("parse_algebraic: smallest well-formed input") {
  auto sys = parse_algebraic("c*x_0", 1);
  REQUIRE(sys.dim == 1);
  REQUIRE(sys.equations.size() == 1);
  const AlgExpr& eq = sys.equations[0];
  CHECK(eq.kind == AlgKind::Product);
  REQUIRE(eq.args.size() == 2);
  CHECK(eq.args[0].kind == AlgKind::Coeff);
  CHECK(eq.args[0].index == 0);
  CHECK(eq.args[1].kind == AlgKind::Var);
  CHECK(eq.args[1].index == 0);
}

TEST_CASE("parse_algebraic: 4-equation epidemic candidate") {
  auto sys = parse_algebraic(kSeirRow0, 4);
  CHECK(sys.equations.size() == 4);
  CHECK(placeholder_indices(sys).size() == 12);  // bare c's auto-indexed
  CHECK(free_variables(sys) == std::set<int>{0, 1, 2, 3});
}

TEST_CASE("parse_algebraic: errors") {
  CHECK_THROWS_AS(parse_algebraic("c*x_0 | c*x_1", 3), ParseError);  // count mismatch
  CHECK_THROWS_AS(parse_algebraic("c*x_9", 2), ParseError);          // index out of range
  CHECK_THROWS_AS(parse_algebraic("c*", 1), ParseError);             // syntax
  CHECK_THROWS_AS(parse_algebraic("foo(x_0)", 1), ParseError);       // unknown function
  CHECK_THROWS_AS(parse_algebraic("c*x_0 + ", 1), ParseError);
}

TEST_CASE("parse positions are reported") {
  try {
    parse_algebraic("c*x_0 + @", 1);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position() >= 0);
  }
}

TEST_CASE("bare and indexed placeholders mix without collision") {
  auto sys = parse_algebraic("c*x_0 + c_0*x_0 + c*x_0*x_0", 1);
  auto indices = placeholder_indices(sys);
  CHECK(indices.size() == 3);  // c_0 explicit, two fresh
  CHECK(indices.count(0) == 1);
}

TEST_CASE("unary minus folds into products") {
  auto sys = parse_algebraic("-c*x_0", 1);
  const AlgExpr& eq = sys.equations[0];
  CHECK(eq.kind == AlgKind::Product);
  CHECK(eq.negated);
  CHECK(complexity(eq) == 1);  // folded sign is free
}

TEST_CASE("caret and double-star powers are the same tree") {
  auto a = parse_algebraic("x_0^2", 1);
  auto b = parse_algebraic("x_0**2", 1);
  CHECK(a == b);
  CHECK(to_string(a) == "x_0**2");
}

TEST_CASE("complexity: published table rows reproduce exactly") {
  CHECK(complexity(parse_algebraic(kSeirRow0, 4)) == 24);
  CHECK(complexity(parse_algebraic(kSeirRow5, 4)) == 17);
}

TEST_CASE("complexity: further table rows as cross-checks") {
  CHECK(complexity(parse_algebraic(
            "c*x_0*x_1 - c*x_2 + c*x_3 | c*x_1 + c*x_2 - c*x_3 | "
            "-c*x_0 + c*x_2 + c*x_3 | c*x_0 - c*x_1 + c*x_3", 4)) == 21);
  CHECK(complexity(parse_algebraic(
            "c*x_0*x_1 - c*x_0*x_2 | c*x_0*x_2 - c*x_1 | "
            "c*x_1 + c*x_2 - c*x_3 | -c*x_0 + c*x_3", 4)) == 17);
}

TEST_CASE("complexity: single variable has no operations") {
  CHECK(complexity(parse_algebraic("x_0", 1)) == 0);
}

TEST_CASE("complexity is invariant under reordering and reindexing") {
  auto a = parse_algebraic_expr("c_0*x_0 + c_1*x_1", 2);
  auto b = parse_algebraic_expr("c_7*x_1 + c_2*x_0", 2);
  CHECK(complexity(a) == complexity(b));
}

TEST_CASE("print/parse round trip on random trees") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    AlgExpr tree = normalize(random_expr(rng, 4, 3));
    std::string printed = to_string(tree);
    CAPTURE(printed);
    AlgExpr reparsed = parse_algebraic_expr(printed, 3);
    CHECK(reparsed == tree);
  }
}

TEST_CASE("free_variables") {
  CHECK(free_variables(parse_algebraic_expr("c", 2)).empty());
  CHECK(free_variables(parse_algebraic_expr("x_0*x_0", 1)) == std::set<int>{0});
  CHECK(free_variables(parse_algebraic(kSeirRow0, 4)) == std::set<int>{0, 1, 2, 3});
}

TEST_CASE("canonical_key: commutativity and index erasure") {
  auto a = parse_algebraic_expr("c*x_0 + c_3*x_1", 2);
  auto b = parse_algebraic_expr("c*x_1 + c*x_0", 2);
  CHECK(canonical_key(a) == canonical_key(b));
  CHECK(canonical_key(parse_algebraic_expr("c*x_0", 1)) !=
        canonical_key(parse_algebraic_expr("c*x_1", 2)));
}

TEST_CASE("canonical_key: sign stays significant") {
  CHECK(canonical_key(parse_algebraic_expr("-c*x_0", 1)) !=
        canonical_key(parse_algebraic_expr("c*x_0", 1)));
}

namespace {

// Erase placeholder indices and sort commutative children: the reference
// canonicalization that keys must agree with.
AlgExpr canonicalized(AlgExpr e) {
  if (e.kind == AlgKind::Coeff) e.index = 0;
  for (auto& child : e.args) child = canonicalized(std::move(child));
  if (e.kind == AlgKind::Sum || e.kind == AlgKind::Product) {
    std::sort(e.args.begin(), e.args.end(), [](const AlgExpr& a, const AlgExpr& b) {
      return canonical_key(a) < canonical_key(b);
    });
  }
  return e;
}

}  // namespace

TEST_CASE("canonical_key: equality iff canonicalized trees match (randomized)") {
  std::mt19937_64 rng(11);
  std::vector<AlgExpr> trees;
  for (int i = 0; i < 1000; ++i) trees.push_back(normalize(random_expr(rng, 3, 2)));
  for (int i = 0; i < 1000; ++i) {
    const AlgExpr& a = trees[static_cast<size_t>(i)];
    const AlgExpr& b = trees[(static_cast<size_t>(i) * 7 + 13) % trees.size()];
    const bool keys_equal = canonical_key(a) == canonical_key(b);
    const bool trees_equal = canonicalized(a) == canonicalized(b);
    CHECK(keys_equal == trees_equal);
  }
}

TEST_CASE("tree_edit_distance: base cases") {
  auto t = parse_algebraic_expr("c*x_0 + sin(x_1)", 2);
  CHECK(tree_edit_distance(t, t) == 0);
  CHECK(tree_edit_distance(parse_algebraic_expr("sin(x_0)", 1),
                           parse_algebraic_expr("cos(x_0)", 1)) == 1);
}

TEST_CASE("tree_edit_distance: systems compared equation by index") {
  auto a = parse_algebraic("c*x_0 | c*x_1", 2);
  auto b = parse_algebraic("c*x_0 | c*x_0", 2);
  CHECK(tree_edit_distance(a, a) == 0);
  CHECK(tree_edit_distance(a, b) == 1);
}

TEST_CASE("tree_edit_distance: matches exhaustive search on small trees") {
  // Full enumeration lives in the acceptance suite; spot-check a sampled
  // grid here to keep the unit run fast.
  auto trees3 = oracle::all_trees(3, {"a", "b", "c"});
  oracle::ForestEditDistance brute;
  for (size_t i = 0; i < trees3.size(); i += 3) {
    for (size_t j = 0; j < trees3.size(); j += 5) {
      CHECK(tree_edit_distance(trees3[i], trees3[j]) == brute(trees3[i], trees3[j]));
    }
  }
}

TEST_CASE("tree_edit_distance: metric axioms on sampled triples") {
  std::mt19937_64 rng(23);
  std::vector<LabeledTree> trees;
  for (int i = 0; i < 30; ++i) {
    trees.push_back(to_labeled_tree(normalize(random_expr(rng, 3, 2))));
  }
  for (int trial = 0; trial < 120; ++trial) {
    const auto& a = trees[static_cast<size_t>(trial * 3 + 1) % trees.size()];
    const auto& b = trees[static_cast<size_t>(trial * 5 + 2) % trees.size()];
    const auto& c = trees[static_cast<size_t>(trial * 7 + 3) % trees.size()];
    const int ab = tree_edit_distance(a, b);
    const int ba = tree_edit_distance(b, a);
    const int ac = tree_edit_distance(a, c);
    const int cb = tree_edit_distance(c, b);
    CHECK(ab >= 0);
    CHECK(ab == ba);
    CHECK(ab <= ac + cb);
  }
  CHECK(tree_edit_distance(trees[0], trees[0]) == 0);
}

TEST_CASE("parse_boolean: identity and errors") {
  auto net = parse_boolean({"x1 = x1"}, 1);
  CHECK(net.rules[0] == BoolExpr::var(0));
  CHECK_THROWS_AS(parse_boolean({"x1 = x9"}, 1), ParseError);
  CHECK_THROWS_AS(parse_boolean({"x1 = x1", "x1 = x1"}, 2), ParseError);  // duplicate
  CHECK_THROWS_AS(parse_boolean({"x1 = x1"}, 2), ParseError);             // missing rule
  CHECK_THROWS_AS(parse_boolean({"x1 = x1 AND"}, 1), ParseError);
}

TEST_CASE("parse_boolean: cortical network round trip") {
  std::vector<std::string> lines = {
      "x1 = ( NOT ( x3 OR x5 ) OR NOT ( x5 OR x3 ) )",
      "x2 = ( x1 AND NOT ( ( x3 OR x5 ) OR x4 ) )",
      "x3 = ( ( x3 AND x5 ) AND NOT x2 )",
      "x4 = ( x5 AND NOT ( x2 OR x1 ) )",
      "x5 = ( x3 AND NOT x2 )",
  };
  auto net = parse_boolean(lines, 5);
  REQUIRE(net.rules.size() == 5);
  auto printed = to_rule_lines(net);
  CHECK(parse_boolean(printed, 5) == net);
  CHECK(canonical_key(parse_boolean(printed, 5)) == canonical_key(net));
}

TEST_CASE("boolean canonical_key sorts commutative children") {
  auto a = parse_boolean_expr("x1 AND x2", 2);
  auto b = parse_boolean_expr("x2 AND x1", 2);
  CHECK(canonical_key(a) == canonical_key(b));
  CHECK(canonical_key(a) != canonical_key(parse_boolean_expr("x1 OR x2", 2)));
}

TEST_CASE("scm graph validation and key") {
  ScmGraph g;
  g.dim = 3;
  g.max_lag = 2;
  g.edges = {{0, 1, 1}, {2, 2, 0}};
  g.validate();
  ScmGraph reordered = g;
  CHECK(canonical_key(g) == canonical_key(reordered));

  ScmGraph bad = g;
  bad.edges.insert({0, 3, 1});  // lag out of range
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
