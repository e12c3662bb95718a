#pragma once

#include <map>

#include "symbolbench/bench/runner.hpp"

namespace symbolbench::bench {

/// Per-dimension aggregate over CDE samples (scores as percentages).
struct CdeDimRow {
  int dim = 0;
  int n = 0;
  double sr2_id = 0.0;
  double acc09_id = 0.0;
  double sr2_ood = 0.0;   // over samples with holdout data
  double acc09_ood = 0.0;
  int n_ood = 0;
  double mean_complexity = 0.0;
  std::optional<double> mean_proximity;
  std::optional<double> complexity_ood_correlation;
};

struct BnAggregate {
  int n = 0;
  // Means over samples of pooled transition metrics (percentages).
  double precision_id = 0.0, recall_id = 0.0, accuracy_id = 0.0, bookmaker_id = 0.0;
  double acc50_id = 0.0, acc70_id = 0.0, acc80_id = 0.0;
  int n_ood = 0;
  double precision_ood = 0.0, recall_ood = 0.0, accuracy_ood = 0.0, bookmaker_ood = 0.0;
  double acc50_ood = 0.0, acc70_ood = 0.0, acc80_ood = 0.0;
  double mean_complexity = 0.0;
  std::optional<double> mean_proximity;
  std::optional<double> complexity_ood_correlation;
};

struct ScmAggregate {
  int n = 0;
  // Edge-set metrics against ground truth (percentages), over samples that
  // carry a truth graph.
  int n_truth = 0;
  double f1 = 0.0, precision = 0.0, recall = 0.0, fdr = 0.0;
  double acc50 = 0.0, acc70 = 0.0, acc80 = 0.0;
  double mean_shd = 0.0;
  double mean_complexity = 0.0;  // predicted edge count
  double mean_ci_id = 0.0;
  double mean_ci_ood = 0.0;
  int n_ood = 0;
};

struct ConvergencePoint {
  int epoch = 0;
  double mean_best = 0.0;  // mean best-so-far ranking value across samples
  int n = 0;
};

struct Report {
  std::vector<CdeDimRow> cde;
  std::optional<BnAggregate> bn;
  std::optional<ScmAggregate> scm;
  std::map<std::string, std::vector<ConvergencePoint>> convergence;  // by task name
};

/// Aggregates persisted results against the dataset. BN/SCM secondary
/// metrics (precision, recall, SHD, ...) are recomputed from the stored
/// best structures, so regenerating a report from the log matches the
/// live run.
Report build_report(const std::vector<RunResult>& results,
                    const std::vector<Sample>& samples);

std::string render_text(const Report& report);

/// Writes report.json and report.txt into the directory.
void write_report_files(const Report& report, const std::filesystem::path& dir);

}  // namespace symbolbench::bench
