#pragma once

#include <filesystem>

#include "symbolbench/bench/sample.hpp"
#include "symbolbench/bench/verify.hpp"
#include "symbolbench/loop/refine.hpp"

namespace symbolbench::bench {

struct BenchConfig {
  std::filesystem::path dataset_dir;
  std::filesystem::path output_dir;
  std::optional<metrics::TaskKind> task_filter;
  loop::LoopConfig loop;
  gp::GpConfig gp;
  VerifyConfig verify;
  llm::ModelConfig model;
  int parallelism = 1;
  std::uint64_t seed = 0;
  std::string config_fingerprint;  // hash of the resolved configuration
};

/// Per-sample outcome persisted to the append-only results log.
struct RunResult {
  std::string sample_id;
  metrics::TaskKind task = metrics::TaskKind::Cde;
  int dim = 1;
  int max_lag = 1;
  int attempt = 1;  // 2 after the rerun-once policy fired
  int epochs_run = 0;
  bool tolerance_met = false;
  std::uint64_t model_calls = 0;
  std::uint64_t judge_calls = 0;
  std::optional<loop::Candidate> best;            // training-data scores inside
  std::optional<metrics::ScoreCard> ood_scores;   // present iff the sample has holdout data
  std::vector<double> curve;                      // best-so-far per epoch
  std::string config_fingerprint;
  std::string transcript_file;  // relative to the output directory, may be empty
};

std::string result_to_json_line(const RunResult& result);
RunResult result_from_json_line(const std::string& line);
std::vector<RunResult> load_results_log(const std::filesystem::path& file);

/// Runs the refinement loop over every (filtered) sample, checkpointing
/// after each epoch and appending one result line per sample to
/// `<output_dir>/results.jsonl` in dataset order. Already-completed samples
/// in an existing log are skipped; samples with a checkpoint resume where
/// they stopped. Samples whose run ends with an empty pool are rerun once.
std::vector<RunResult> run_benchmark(const BenchConfig& cfg,
                                     const std::vector<Sample>& samples);

}  // namespace symbolbench::bench
