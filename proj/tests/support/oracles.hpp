// Independent oracles used by tests: these re-derive expected values along
// a different route than the implementation under test and must stay free
// of the corresponding production code paths.
#pragma once

#include <Eigen/Dense>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "symbolbench/expr/eval.hpp"
#include "symbolbench/expr/tree_distance.hpp"

namespace oracle {

// ---- exhaustive edit-script search over ordered labeled forests ------------
//
// Classic forest recursion: at each step either delete the rightmost root,
// insert the rightmost root of the target, or match the two rightmost roots
// and recurse into their child forests. Memoized on forest encodings; every
// alignment is explored.
class ForestEditDistance {
 public:
  using Tree = symbolbench::expr::LabeledTree;
  using Forest = std::vector<const Tree*>;

  int operator()(const Tree& a, const Tree& b) {
    memo_.clear();
    return dist({&a}, {&b});
  }

 private:
  static std::string encode(const Forest& f) {
    std::string out;
    for (const Tree* t : f) {
      out += t->label;
      out += '(';
      Forest children;
      for (const auto& c : t->children) children.push_back(&c);
      out += encode(children);
      out += ')';
    }
    return out;
  }

  static int size(const Forest& f) {
    int n = 0;
    for (const Tree* t : f) {
      Forest children;
      for (const auto& c : t->children) children.push_back(&c);
      n += 1 + size(children);
    }
    return n;
  }

  int dist(const Forest& a, const Forest& b) {
    if (a.empty()) return size(b);
    if (b.empty()) return size(a);
    std::string key = encode(a) + "|" + encode(b);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    const Tree* ra = a.back();
    const Tree* rb = b.back();
    Forest rest_a(a.begin(), a.end() - 1);
    Forest rest_b(b.begin(), b.end() - 1);
    Forest ca;
    for (const auto& c : ra->children) ca.push_back(&c);
    Forest cb;
    for (const auto& c : rb->children) cb.push_back(&c);

    // delete rightmost root of a
    Forest a_minus = rest_a;
    a_minus.insert(a_minus.end(), ca.begin(), ca.end());
    int best = dist(a_minus, b) + 1;
    // insert rightmost root of b
    Forest b_minus = rest_b;
    b_minus.insert(b_minus.end(), cb.begin(), cb.end());
    best = std::min(best, dist(a, b_minus) + 1);
    // match the two rightmost roots
    best = std::min(best, dist(ca, cb) + dist(rest_a, rest_b) +
                              (ra->label == rb->label ? 0 : 1));

    memo_[key] = best;
    return best;
  }

  std::map<std::string, int> memo_;
};

// Enumerates all ordered trees with exactly n nodes over the given labels.
inline std::vector<symbolbench::expr::LabeledTree> all_trees(
    int n, const std::vector<std::string>& labels) {
  using Tree = symbolbench::expr::LabeledTree;
  if (n == 0) return {};
  std::vector<Tree> out;
  if (n == 1) {
    for (const auto& label : labels) out.push_back(Tree{label, {}});
    return out;
  }
  // Partition n-1 nodes among an ordered list of child subtrees: the first
  // child takes k nodes, the rest forms a forest on n-1-k nodes attached to
  // the same root. Enumerate via: root + list of child trees.
  // forests[m] = all ordered forests with m nodes.
  std::vector<std::vector<std::vector<Tree>>> forests(n);  // forests[m] = list of forests
  forests[0] = {{}};
  for (int m = 1; m < n; ++m) {
    for (int first = 1; first <= m; ++first) {
      for (const auto& tree : all_trees(first, labels)) {
        for (const auto& rest : forests[m - first]) {
          std::vector<Tree> forest{tree};
          forest.insert(forest.end(), rest.begin(), rest.end());
          forests[m].push_back(std::move(forest));
        }
      }
    }
  }
  for (const auto& label : labels) {
    for (const auto& children : forests[n - 1]) {
      out.push_back(Tree{label, children});
    }
  }
  return out;
}

// ---- per-rule truth-table evaluation for Boolean networks ------------------
//
// Own evaluation recursion (not the production evaluator): each rule is
// expanded into its full truth table over all 2^d assignments, and stepping
// is a table lookup.
inline bool eval_rule(const symbolbench::expr::BoolExpr& e, std::uint32_t assignment) {
  using symbolbench::expr::BoolKind;
  switch (e.kind) {
    case BoolKind::Var:
      return (assignment >> e.index) & 1u;
    case BoolKind::Not:
      return !eval_rule(e.args[0], assignment);
    case BoolKind::And: {
      bool acc = true;
      for (const auto& c : e.args) acc = acc && eval_rule(c, assignment);
      return acc;
    }
    case BoolKind::Or: {
      bool acc = false;
      for (const auto& c : e.args) acc = acc || eval_rule(c, assignment);
      return acc;
    }
  }
  return false;
}

struct TruthTables {
  int dim;
  std::vector<std::vector<std::uint8_t>> tables;  // tables[rule][assignment]

  explicit TruthTables(const symbolbench::expr::BooleanNetwork& net) : dim(net.dim) {
    tables.resize(net.rules.size());
    for (size_t i = 0; i < net.rules.size(); ++i) {
      tables[i].resize(1u << dim);
      for (std::uint32_t a = 0; a < (1u << dim); ++a) {
        tables[i][a] = eval_rule(net.rules[i], a) ? 1 : 0;
      }
    }
  }

  std::vector<std::uint8_t> step(const std::vector<std::uint8_t>& state) const {
    std::uint32_t assignment = 0;
    for (int j = 0; j < dim; ++j) {
      assignment |= static_cast<std::uint32_t>(state[static_cast<size_t>(j)] ? 1 : 0) << j;
    }
    std::vector<std::uint8_t> next(static_cast<size_t>(dim));
    for (int i = 0; i < dim; ++i) next[static_cast<size_t>(i)] = tables[static_cast<size_t>(i)][assignment];
    return next;
  }
};

// ---- partial correlation via the precision-matrix route --------------------
//
// Independent algebraic route: the partial correlation of x and y given Z
// equals -P_xy / sqrt(P_xx * P_yy) where P is the inverse covariance of
// [x, y, Z].
inline double precision_partial_correlation(
    const std::vector<double>& x, const std::vector<double>& y,
    const std::vector<std::vector<double>>& conditioning) {
  const int n = static_cast<int>(x.size());
  const int k = static_cast<int>(conditioning.size());
  Eigen::MatrixXd data(n, 2 + k);
  for (int i = 0; i < n; ++i) {
    data(i, 0) = x[static_cast<size_t>(i)];
    data(i, 1) = y[static_cast<size_t>(i)];
    for (int c = 0; c < k; ++c) data(i, 2 + c) = conditioning[static_cast<size_t>(c)][static_cast<size_t>(i)];
  }
  Eigen::RowVectorXd mean = data.colwise().mean();
  Eigen::MatrixXd centered = data.rowwise() - mean;
  Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(n - 1);
  Eigen::MatrixXd precision = cov.inverse();
  return -precision(0, 1) / std::sqrt(precision(0, 0) * precision(1, 1));
}

}  // namespace oracle
