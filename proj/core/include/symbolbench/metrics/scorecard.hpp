#pragma once

#include <optional>
#include <string>

namespace symbolbench::metrics {

enum class TaskKind { Cde, Bn, Scm };

const char* task_name(TaskKind task);
std::optional<TaskKind> task_from_name(const std::string& name);

/// Four-criterion rubric, each score an integer in [1, 5].
struct Rubric {
  int context_alignment = 0;
  int scientific_plausibility = 0;
  int conciseness_clarity = 0;
  int logical_coherence = 0;
  bool clamped = false;  // set when an out-of-range reply was clamped

  double mean() const {
    return (context_alignment + scientific_plausibility + conciseness_clarity +
            logical_coherence) /
           4.0;
  }

  bool operator==(const Rubric&) const = default;
};

/// Verification summary attached to every candidate. `primary` is R^2 for
/// CDEs, macro-F1 for BNs and the CI-score for SCMs; it is meaningless when
/// `failed` is set.
struct ScoreCard {
  TaskKind task = TaskKind::Cde;
  double primary = 0.0;
  bool failed = false;
  int complexity = 0;
  std::optional<int> symbolic_proximity;  // only when ground truth is known
  std::optional<Rubric> rubric;
};

/// Score used for ranking and tolerance checks: higher is always better.
/// For SCMs the direction is configurable (the CI-score can be read either
/// way); `ci_lower_is_better` flips its sign.
double ranking_value(const ScoreCard& card, bool ci_lower_is_better);

}  // namespace symbolbench::metrics
