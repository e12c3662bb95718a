#include "symbolbench/metrics/scores.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace symbolbench::metrics {

const char* task_name(TaskKind task) {
  switch (task) {
    case TaskKind::Cde: return "cde";
    case TaskKind::Bn: return "bn";
    case TaskKind::Scm: return "scm";
  }
  return "?";
}

std::optional<TaskKind> task_from_name(const std::string& name) {
  if (name == "cde") return TaskKind::Cde;
  if (name == "bn") return TaskKind::Bn;
  if (name == "scm") return TaskKind::Scm;
  return std::nullopt;
}

double ranking_value(const ScoreCard& card, bool ci_lower_is_better) {
  if (card.failed) return -std::numeric_limits<double>::infinity();
  if (card.task == TaskKind::Scm && ci_lower_is_better) return -card.primary;
  return card.primary;
}

std::optional<double> r_squared(const dynamics::Trajectory& truth,
                                const dynamics::Trajectory& pred) {
  const int n = truth.length();
  const int d = truth.dim();
  if (pred.length() != n || pred.dim() != d) {
    throw std::invalid_argument("r_squared: shape mismatch");
  }
  if (n == 0 || d == 0) throw std::invalid_argument("r_squared: empty trajectory");

  double total = 0.0;
  for (int j = 0; j < d; ++j) {
    double mean = 0.0;
    for (int t = 0; t < n; ++t) mean += truth.values[t][j];
    mean /= n;

    double ss_res = 0.0;
    double ss_tot = 0.0;
    for (int t = 0; t < n; ++t) {
      const double r = truth.values[t][j] - pred.values[t][j];
      const double m = truth.values[t][j] - mean;
      ss_res += r * r;
      ss_tot += m * m;
    }
    if (ss_tot == 0.0) {
      if (ss_res == 0.0) {
        total += 1.0;  // constant column reproduced exactly
        continue;
      }
      return std::nullopt;
    }
    total += 1.0 - ss_res / ss_tot;
  }
  double value = total / d;
  if (!std::isfinite(value)) return std::nullopt;
  return value;
}

Sr2Acc sr2_and_acc(const std::vector<double>& per_sample_r2, double threshold) {
  if (per_sample_r2.empty()) {
    throw std::invalid_argument("sr2_and_acc: empty score list");
  }
  Sr2Acc out;
  for (double r2 : per_sample_r2) {
    if (r2 > 0.0) out.sr2 += r2;
    if (r2 > threshold) out.acc += 1.0;
  }
  out.sr2 /= static_cast<double>(per_sample_r2.size());
  out.acc /= static_cast<double>(per_sample_r2.size());
  return out;
}

BnScores bn_transition_scores(
    const std::vector<std::vector<std::uint8_t>>& truth_transitions,
    const std::vector<std::vector<std::uint8_t>>& pred_transitions) {
  if (truth_transitions.size() != pred_transitions.size()) {
    throw std::invalid_argument("bn_transition_scores: transition count mismatch");
  }
  if (truth_transitions.empty()) {
    throw std::invalid_argument("bn_transition_scores: no transitions");
  }

  std::uint64_t tp = 0, fp = 0, fn = 0, tn = 0;
  double f1_sum = 0.0;
  std::uint64_t cells = 0;

  for (size_t t = 0; t < truth_transitions.size(); ++t) {
    const auto& truth_row = truth_transitions[t];
    const auto& pred_row = pred_transitions[t];
    if (truth_row.size() != pred_row.size()) {
      throw std::invalid_argument("bn_transition_scores: row width mismatch");
    }
    for (size_t i = 0; i < truth_row.size(); ++i) {
      const std::uint8_t a = truth_row[i];
      const std::uint8_t b = pred_row[i];
      if (a > 1 || b > 1) {
        throw std::invalid_argument("bn_transition_scores: non-binary entry");
      }
      // Confusion counts of the positive class for this (node, transition)
      // cell; with one bit per cell the counts are 0/1.
      const std::uint64_t cell_tp = (a == 1 && b == 1) ? 1 : 0;
      const std::uint64_t cell_fp = (a == 0 && b == 1) ? 1 : 0;
      const std::uint64_t cell_fn = (a == 1 && b == 0) ? 1 : 0;
      tp += cell_tp;
      fp += cell_fp;
      fn += cell_fn;
      tn += (a == 0 && b == 0) ? 1 : 0;
      const std::uint64_t denom = 2 * cell_tp + cell_fp + cell_fn;
      f1_sum += denom == 0 ? 1.0 : (2.0 * cell_tp) / static_cast<double>(denom);
      ++cells;
    }
  }

  BnScores out;
  out.macro_f1 = f1_sum / static_cast<double>(cells);
  out.precision = tp + fp == 0 ? 1.0 : static_cast<double>(tp) / (tp + fp);
  out.recall = tp + fn == 0 ? 1.0 : static_cast<double>(tp) / (tp + fn);
  out.accuracy = static_cast<double>(tp + tn) / static_cast<double>(cells);
  const double specificity = tn + fp == 0 ? 1.0 : static_cast<double>(tn) / (tn + fp);
  out.bookmaker = out.recall + specificity - 1.0;
  return out;
}

std::optional<double> complexity_accuracy_correlation(
    const std::vector<std::pair<double, double>>& records) {
  const size_t n = records.size();
  if (n < 3) return std::nullopt;

  double mean_x = 0.0, mean_y = 0.0;
  for (const auto& [x, y] : records) {
    mean_x += x;
    mean_y += y;
  }
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);

  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (const auto& [x, y] : records) {
    sxx += (x - mean_x) * (x - mean_x);
    syy += (y - mean_y) * (y - mean_y);
    sxy += (x - mean_x) * (y - mean_y);
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace symbolbench::metrics
