#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "symbolbench/dynamics/trajectory.hpp"
#include "symbolbench/metrics/scorecard.hpp"

namespace symbolbench::metrics {

/// Coefficient of determination averaged over dimensions, each about the
/// truth column's mean. A constant truth column scores 1 when predictions
/// match it exactly and otherwise poisons the result (nullopt). Throws on a
/// shape mismatch.
std::optional<double> r_squared(const dynamics::Trajectory& truth,
                                const dynamics::Trajectory& pred);

struct Sr2Acc {
  double sr2 = 0.0;  // mean of R^2 clipped below zero by the indicator
  double acc = 0.0;  // fraction of samples above the threshold
};

/// Aggregates per-sample R^2 values; failed samples must be passed as any
/// value <= 0 (the indicator already discards them). Throws on empty input.
Sr2Acc sr2_and_acc(const std::vector<double>& per_sample_r2, double threshold);

struct BnScores {
  double precision = 0.0;
  double recall = 0.0;
  double macro_f1 = 0.0;
  double accuracy = 0.0;
  double bookmaker = 0.0;  // recall + specificity - 1, pooled counts
};

/// Per-node-per-transition confusion counts of the positive class. The
/// macro-F1 double sum treats a cell with TP+FP+FN = 0 as a perfect
/// negative (contributes 1). Precision/recall/accuracy/bookmaker pool the
/// counts over all cells. Throws on shape mismatch or non-binary entries.
BnScores bn_transition_scores(
    const std::vector<std::vector<std::uint8_t>>& truth_transitions,
    const std::vector<std::vector<std::uint8_t>>& pred_transitions);

/// Pearson correlation between candidate complexity and a success
/// indicator; nullopt when fewer than 3 records or either column has zero
/// variance.
std::optional<double> complexity_accuracy_correlation(
    const std::vector<std::pair<double, double>>& records);

}  // namespace symbolbench::metrics
