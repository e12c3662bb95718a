#include "symbolbench/expr/tree_distance.hpp"

#include <algorithm>
#include <cstdio>

namespace symbolbench::expr {

LabeledTree to_labeled_tree(const AlgExpr& node) {
  LabeledTree t;
  switch (node.kind) {
    case AlgKind::Literal: {
      char buf[40];
      std::snprintf(buf, sizeof(buf), "lit:%.17g", node.literal);
      t.label = buf;
      break;
    }
    case AlgKind::Coeff:
      t.label = "c";
      break;
    case AlgKind::Var:
      t.label = "x" + std::to_string(node.index);
      break;
    case AlgKind::Sum:
      t.label = "+";
      break;
    case AlgKind::Product:
      t.label = node.negated ? "*-" : "*";
      break;
    case AlgKind::Divide:
      t.label = "/";
      break;
    case AlgKind::Power:
      t.label = "**";
      break;
    case AlgKind::Call:
      t.label = fn_name(node.fn);
      break;
  }
  t.children.reserve(node.args.size());
  for (const auto& child : node.args) t.children.push_back(to_labeled_tree(child));
  return t;
}

LabeledTree to_labeled_tree(const BoolExpr& node) {
  LabeledTree t;
  switch (node.kind) {
    case BoolKind::Var:
      t.label = "x" + std::to_string(node.index);
      break;
    case BoolKind::Not:
      t.label = "NOT";
      break;
    case BoolKind::And:
      t.label = "AND";
      break;
    case BoolKind::Or:
      t.label = "OR";
      break;
  }
  t.children.reserve(node.args.size());
  for (const auto& child : node.args) t.children.push_back(to_labeled_tree(child));
  return t;
}

int node_count(const LabeledTree& t) {
  int n = 1;
  for (const auto& child : t.children) n += node_count(child);
  return n;
}

namespace {

// Postorder flattening with leftmost-leaf-descendant indices and LR
// keyroots, as required by the Zhang-Shasha dynamic program.
struct Flat {
  std::vector<const std::string*> labels;  // postorder
  std::vector<int> lld;                    // leftmost leaf descendant
  std::vector<int> keyroots;

  explicit Flat(const LabeledTree& root) {
    walk(root);
    std::vector<bool> seen(labels.size(), false);
    for (int i = static_cast<int>(labels.size()) - 1; i >= 0; --i) {
      if (!seen[lld[i]]) {
        keyroots.push_back(i);
        seen[lld[i]] = true;
      }
    }
    std::sort(keyroots.begin(), keyroots.end());
  }

  int walk(const LabeledTree& node) {
    int first_leaf = -1;
    for (const auto& child : node.children) {
      int child_lld = walk(child);
      if (first_leaf < 0) first_leaf = child_lld;
    }
    int id = static_cast<int>(labels.size());
    if (first_leaf < 0) first_leaf = id;
    labels.push_back(&node.label);
    lld.push_back(first_leaf);
    return first_leaf;
  }
};

}  // namespace

int tree_edit_distance(const LabeledTree& a, const LabeledTree& b) {
  Flat fa(a);
  Flat fb(b);
  const int n = static_cast<int>(fa.labels.size());
  const int m = static_cast<int>(fb.labels.size());

  std::vector<std::vector<int>> treedist(n, std::vector<int>(m, 0));
  std::vector<std::vector<int>> forest(n + 1, std::vector<int>(m + 1, 0));

  for (int i : fa.keyroots) {
    for (int j : fb.keyroots) {
      const int ioff = fa.lld[i];
      const int joff = fb.lld[j];
      const int rows = i - ioff + 1;
      const int cols = j - joff + 1;

      forest[0][0] = 0;
      for (int di = 1; di <= rows; ++di) forest[di][0] = forest[di - 1][0] + 1;
      for (int dj = 1; dj <= cols; ++dj) forest[0][dj] = forest[0][dj - 1] + 1;

      for (int di = 1; di <= rows; ++di) {
        for (int dj = 1; dj <= cols; ++dj) {
          const int ai = ioff + di - 1;
          const int bj = joff + dj - 1;
          if (fa.lld[ai] == ioff && fb.lld[bj] == joff) {
            const int relabel = (*fa.labels[ai] == *fb.labels[bj]) ? 0 : 1;
            forest[di][dj] = std::min({forest[di - 1][dj] + 1,
                                       forest[di][dj - 1] + 1,
                                       forest[di - 1][dj - 1] + relabel});
            treedist[ai][bj] = forest[di][dj];
          } else {
            const int fi = fa.lld[ai] - ioff;
            const int fj = fb.lld[bj] - joff;
            forest[di][dj] = std::min({forest[di - 1][dj] + 1,
                                       forest[di][dj - 1] + 1,
                                       forest[fi][fj] + treedist[ai][bj]});
          }
        }
      }
    }
  }
  return treedist[n - 1][m - 1];
}

int tree_edit_distance(const AlgExpr& a, const AlgExpr& b) {
  return tree_edit_distance(to_labeled_tree(a), to_labeled_tree(b));
}

int tree_edit_distance(const BoolExpr& a, const BoolExpr& b) {
  return tree_edit_distance(to_labeled_tree(a), to_labeled_tree(b));
}

namespace {

template <typename System, typename Part>
int system_distance(const System& a, const System& b,
                    const std::vector<Part>& pa, const std::vector<Part>& pb) {
  (void)a;
  (void)b;
  int total = 0;
  const size_t shared = std::min(pa.size(), pb.size());
  for (size_t i = 0; i < shared; ++i) {
    total += tree_edit_distance(pa[i], pb[i]);
  }
  for (size_t i = shared; i < pa.size(); ++i) {
    total += node_count(to_labeled_tree(pa[i]));
  }
  for (size_t i = shared; i < pb.size(); ++i) {
    total += node_count(to_labeled_tree(pb[i]));
  }
  return total;
}

}  // namespace

int tree_edit_distance(const AlgebraicSystem& a, const AlgebraicSystem& b) {
  return system_distance(a, b, a.equations, b.equations);
}

int tree_edit_distance(const BooleanNetwork& a, const BooleanNetwork& b) {
  return system_distance(a, b, a.rules, b.rules);
}

}  // namespace symbolbench::expr
