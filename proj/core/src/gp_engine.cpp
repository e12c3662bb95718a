#include "symbolbench/gp/engine.hpp"

#include <stdexcept>

namespace symbolbench::gp {

using expr::AlgExpr;
using expr::AlgKind;
using expr::AlgebraicSystem;
using expr::BoolExpr;
using expr::BoolKind;
using expr::BooleanNetwork;
using expr::UnaryFn;

void GpConfig::validate() const {
  if (population <= 0) throw std::invalid_argument("gp: population must be positive");
  if (generations < 0) throw std::invalid_argument("gp: generations must be non-negative");
  if (tournament <= 0) throw std::invalid_argument("gp: tournament size must be positive");
  if (p_crossover < 0.0 || p_crossover > 1.0) {
    throw std::invalid_argument("gp: p_crossover outside [0, 1]");
  }
  if (p_mutation < 0.0 || p_mutation > 1.0) {
    throw std::invalid_argument("gp: p_mutation outside [0, 1]");
  }
  if (depth_cap < 2) throw std::invalid_argument("gp: depth cap must be at least 2");
  if (result_top_k <= 0) throw std::invalid_argument("gp: result_top_k must be positive");
}

int tree_depth(const AlgExpr& node) {
  int deepest = 0;
  for (const auto& child : node.args) deepest = std::max(deepest, tree_depth(child));
  return deepest + 1;
}

int tree_depth(const BoolExpr& node) {
  int deepest = 0;
  for (const auto& child : node.args) deepest = std::max(deepest, tree_depth(child));
  return deepest + 1;
}

int tree_depth(const AlgebraicSystem& system) {
  int deepest = 0;
  for (const auto& eq : system.equations) deepest = std::max(deepest, tree_depth(eq));
  return deepest;
}

int tree_depth(const BooleanNetwork& net) {
  int deepest = 0;
  for (const auto& rule : net.rules) deepest = std::max(deepest, tree_depth(rule));
  return deepest;
}

namespace {

template <typename Node>
void collect(Node& root, int depth, std::vector<std::pair<Node*, int>>& out) {
  out.push_back({&root, depth});
  for (auto& child : root.args) collect(child, depth + 1, out);
}

double uniform(std::mt19937_64& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// ---- algebraic trees -------------------------------------------------------

AlgExpr random_alg_terminal(std::mt19937_64& rng, int dim) {
  if (uniform(rng) < 0.6) return AlgExpr::var(uniform_int(rng, 0, dim - 1));
  return AlgExpr::coeff(-1);  // fresh placeholder, renumbered later
}

AlgExpr random_alg_tree(std::mt19937_64& rng, int dim, int depth, bool full,
                        bool use_functions) {
  if (depth <= 1 || (!full && depth < 3 && uniform(rng) < 0.3)) {
    return random_alg_terminal(rng, dim);
  }
  const int child_depth = depth - 1;
  auto child = [&] { return random_alg_tree(rng, dim, child_depth, full, use_functions); };

  const double roll = uniform(rng);
  if (use_functions && roll < 0.12) {
    static const UnaryFn fns[] = {UnaryFn::Sin, UnaryFn::Cos, UnaryFn::Exp, UnaryFn::Log};
    return AlgExpr::call(fns[uniform_int(rng, 0, 3)], child());
  }
  if (roll < 0.35) {
    return AlgExpr::sum({child(), child()});
  }
  if (roll < 0.55) {
    // Subtraction: sum with the second term's sign folded in.
    AlgExpr rhs = AlgExpr::product({child()}, true);
    return AlgExpr::sum({child(), std::move(rhs)});
  }
  if (roll < 0.9) {
    return AlgExpr::product({child(), child()});
  }
  return AlgExpr::divide(child(), child());
}

void relabel_alg(AlgExpr& node, std::mt19937_64& rng, int dim) {
  switch (node.kind) {
    case AlgKind::Var:
      if (dim > 1) {
        int next = uniform_int(rng, 0, dim - 2);
        node.index = next >= node.index ? next + 1 : next;
      } else {
        node = AlgExpr::coeff(-1);
      }
      break;
    case AlgKind::Coeff:
      node = AlgExpr::var(uniform_int(rng, 0, dim - 1));
      break;
    case AlgKind::Literal:
      node = AlgExpr::coeff(-1);
      break;
    case AlgKind::Sum:
      node.kind = AlgKind::Product;
      node.negated = false;
      break;
    case AlgKind::Product:
      node.kind = AlgKind::Sum;
      node.negated = false;
      break;
    case AlgKind::Divide:
      node.kind = AlgKind::Product;
      node.negated = false;
      break;
    case AlgKind::Power:
      node.kind = AlgKind::Divide;
      break;
    case AlgKind::Call: {
      static const UnaryFn fns[] = {UnaryFn::Sin, UnaryFn::Cos, UnaryFn::Tan,
                                    UnaryFn::Exp, UnaryFn::Log, UnaryFn::Sqrt,
                                    UnaryFn::Abs, UnaryFn::Cot};
      UnaryFn next = fns[uniform_int(rng, 0, 7)];
      node.fn = next == node.fn ? fns[(uniform_int(rng, 0, 6) + 1) % 8] : next;
      break;
    }
  }
}

AlgebraicSystem finalize(AlgebraicSystem s) {
  for (auto& eq : s.equations) eq = expr::normalize(std::move(eq));
  return expr::renumber_placeholders(std::move(s));
}

}  // namespace

AlgebraicSystem AlgTreeOps::random_structure(std::mt19937_64& rng, int target_depth,
                                             bool full) const {
  AlgebraicSystem s;
  s.dim = dim;
  s.equations.reserve(dim);
  for (int i = 0; i < dim; ++i) {
    s.equations.push_back(random_alg_tree(rng, dim, target_depth, full, use_functions));
  }
  return finalize(std::move(s));
}

AlgebraicSystem AlgTreeOps::mutate(const AlgebraicSystem& parent, std::mt19937_64& rng,
                                   int depth_cap) const {
  AlgebraicSystem child = parent;

  std::vector<std::pair<AlgExpr*, int>> nodes;
  for (auto& eq : child.equations) collect(eq, 1, nodes);
  if (nodes.empty()) return parent;
  auto [node, node_depth] = nodes[static_cast<size_t>(uniform_int(
      rng, 0, static_cast<int>(nodes.size()) - 1))];

  switch (uniform_int(rng, 0, 3)) {
    case 0: {  // subtree replacement
      int budget = std::max(1, depth_cap - node_depth + 1);
      *node = random_alg_tree(rng, dim, std::min(budget, 4), false, use_functions);
      break;
    }
    case 1:
      relabel_alg(*node, rng, dim);
      break;
    case 2:  // placeholder insertion
      *node = AlgExpr::product({AlgExpr::coeff(-1), std::move(*node)});
      break;
    case 3: {  // placeholder removal
      std::vector<AlgExpr*> removable;
      for (auto& [candidate, depth] : nodes) {
        if (candidate->kind != AlgKind::Product || candidate->args.size() < 2) continue;
        for (auto& arg : candidate->args) {
          if (arg.kind == AlgKind::Coeff) {
            removable.push_back(candidate);
            break;
          }
        }
      }
      if (removable.empty()) return parent;  // no-op fallback
      AlgExpr* host = removable[static_cast<size_t>(uniform_int(
          rng, 0, static_cast<int>(removable.size()) - 1))];
      for (size_t i = 0; i < host->args.size(); ++i) {
        if (host->args[i].kind == AlgKind::Coeff) {
          host->args.erase(host->args.begin() + static_cast<long>(i));
          break;
        }
      }
      break;
    }
  }

  child = finalize(std::move(child));
  if (tree_depth(child) > depth_cap) return parent;  // no-op fallback
  return child;
}

std::pair<AlgebraicSystem, AlgebraicSystem> AlgTreeOps::crossover(
    const AlgebraicSystem& a, const AlgebraicSystem& b, std::mt19937_64& rng,
    int depth_cap) const {
  if (a.dim != b.dim) throw std::invalid_argument("crossover: dimension mismatch");

  for (int attempt = 0; attempt < 8; ++attempt) {
    AlgebraicSystem ca = a;
    AlgebraicSystem cb = b;
    const int eq = uniform_int(rng, 0, a.dim - 1);

    std::vector<std::pair<AlgExpr*, int>> na, nb;
    collect(ca.equations[eq], 1, na);
    collect(cb.equations[eq], 1, nb);
    auto [pa, da] = na[static_cast<size_t>(uniform_int(rng, 0, static_cast<int>(na.size()) - 1))];
    auto [pb, db] = nb[static_cast<size_t>(uniform_int(rng, 0, static_cast<int>(nb.size()) - 1))];

    if (da - 1 + tree_depth(*pb) > depth_cap || db - 1 + tree_depth(*pa) > depth_cap) {
      continue;
    }
    std::swap(*pa, *pb);
    ca = finalize(std::move(ca));
    cb = finalize(std::move(cb));
    if (tree_depth(ca) > depth_cap || tree_depth(cb) > depth_cap) continue;
    return {std::move(ca), std::move(cb)};
  }
  return {a, b};  // no feasible exchange found
}

// ---- Boolean trees ---------------------------------------------------------

namespace {

BoolExpr random_bool_tree(std::mt19937_64& rng, int dim, int depth, bool full) {
  if (depth <= 1 || (!full && depth < 3 && uniform(rng) < 0.3)) {
    return BoolExpr::var(uniform_int(rng, 0, dim - 1));
  }
  const int child_depth = depth - 1;
  auto child = [&] { return random_bool_tree(rng, dim, child_depth, full); };
  const double roll = uniform(rng);
  if (roll < 0.25) return BoolExpr::negate(child());
  if (roll < 0.65) return BoolExpr::conj({child(), child()});
  return BoolExpr::disj({child(), child()});
}

BooleanNetwork finalize(BooleanNetwork n) {
  for (auto& rule : n.rules) rule = expr::normalize(std::move(rule));
  return n;
}

}  // namespace

BooleanNetwork BoolTreeOps::random_structure(std::mt19937_64& rng, int target_depth,
                                             bool full) const {
  BooleanNetwork n;
  n.dim = dim;
  n.rules.reserve(dim);
  for (int i = 0; i < dim; ++i) {
    n.rules.push_back(random_bool_tree(rng, dim, target_depth, full));
  }
  return finalize(std::move(n));
}

BooleanNetwork BoolTreeOps::mutate(const BooleanNetwork& parent, std::mt19937_64& rng,
                                   int depth_cap) const {
  BooleanNetwork child = parent;

  std::vector<std::pair<BoolExpr*, int>> nodes;
  for (auto& rule : child.rules) collect(rule, 1, nodes);
  if (nodes.empty()) return parent;
  auto [node, node_depth] = nodes[static_cast<size_t>(uniform_int(
      rng, 0, static_cast<int>(nodes.size()) - 1))];

  switch (uniform_int(rng, 0, 3)) {
    case 0: {
      int budget = std::max(1, depth_cap - node_depth + 1);
      *node = random_bool_tree(rng, dim, std::min(budget, 4), false);
      break;
    }
    case 1:
      if (node->kind == BoolKind::Var) {
        if (dim > 1) {
          int next = uniform_int(rng, 0, dim - 2);
          node->index = next >= node->index ? next + 1 : next;
        }
      } else if (node->kind == BoolKind::And) {
        node->kind = BoolKind::Or;
      } else if (node->kind == BoolKind::Or) {
        node->kind = BoolKind::And;
      }
      break;
    case 2:
      *node = BoolExpr::negate(std::move(*node));
      break;
    case 3: {
      std::vector<BoolExpr*> nots;
      for (auto& [candidate, depth] : nodes) {
        if (candidate->kind == BoolKind::Not) nots.push_back(candidate);
      }
      if (nots.empty()) return parent;
      BoolExpr* host = nots[static_cast<size_t>(uniform_int(
          rng, 0, static_cast<int>(nots.size()) - 1))];
      *host = std::move(host->args.front());
      break;
    }
  }

  child = finalize(std::move(child));
  if (tree_depth(child) > depth_cap) return parent;
  return child;
}

std::pair<BooleanNetwork, BooleanNetwork> BoolTreeOps::crossover(
    const BooleanNetwork& a, const BooleanNetwork& b, std::mt19937_64& rng,
    int depth_cap) const {
  if (a.dim != b.dim) throw std::invalid_argument("crossover: dimension mismatch");

  for (int attempt = 0; attempt < 8; ++attempt) {
    BooleanNetwork ca = a;
    BooleanNetwork cb = b;
    const int rule = uniform_int(rng, 0, a.dim - 1);

    std::vector<std::pair<BoolExpr*, int>> na, nb;
    collect(ca.rules[rule], 1, na);
    collect(cb.rules[rule], 1, nb);
    auto [pa, da] = na[static_cast<size_t>(uniform_int(rng, 0, static_cast<int>(na.size()) - 1))];
    auto [pb, db] = nb[static_cast<size_t>(uniform_int(rng, 0, static_cast<int>(nb.size()) - 1))];

    if (da - 1 + tree_depth(*pb) > depth_cap || db - 1 + tree_depth(*pa) > depth_cap) {
      continue;
    }
    std::swap(*pa, *pb);
    ca = finalize(std::move(ca));
    cb = finalize(std::move(cb));
    if (tree_depth(ca) > depth_cap || tree_depth(cb) > depth_cap) continue;
    return {std::move(ca), std::move(cb)};
  }
  return {a, b};
}

}  // namespace symbolbench::gp
