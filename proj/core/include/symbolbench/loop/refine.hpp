#pragma once

#include <functional>
#include <memory>

#include "symbolbench/bench/sample.hpp"
#include "symbolbench/bench/verify.hpp"
#include "symbolbench/gp/engine.hpp"
#include "symbolbench/llm/gateway.hpp"
#include "symbolbench/loop/candidate.hpp"

namespace symbolbench::loop {

enum class ProposalMode { Llm, Gp, HybridSeededGp, HybridGpJudged };

const char* mode_name(ProposalMode mode);
std::optional<ProposalMode> mode_from_name(const std::string& name);

struct LoopConfig {
  int max_epochs = 100;
  int max_retries = 20;  // candidate attempts per epoch (parse/transport failures)
  int top_k = 5;         // pool candidates handed to the context manager
  // Target primary score: a run stops once the best candidate reaches it
  // (R^2 / F1 at least, CI-score at most when ci_lower_is_better).
  double tolerance = 0.9;
  ProposalMode mode = ProposalMode::Llm;
  llm::Strategy strategy = llm::Strategy::Context;
  bool judge_enabled = false;
  double rubric_weight = 0.0;  // mixes mean rubric into context ranking
  bool ci_lower_is_better = true;
  int gp_pool_top_n = 5;  // GP results inserted into the pool per epoch
  int series_row_budget = 200;
  std::uint64_t seed = 0;

  void validate(metrics::TaskKind task) const;
};

struct EpochRecord {
  int epoch = 0;
  bool produced_candidate = false;
  int attempts = 0;  // proposal attempts consumed (llm modes)
};

struct RunOutcome {
  std::vector<double> best_curve;  // best-so-far ranking value after each epoch
  std::vector<EpochRecord> epochs;
  int epochs_run = 0;
  bool tolerance_met = false;
  std::uint64_t model_calls = 0;  // predictor attempts that reached the client
  std::uint64_t judge_calls = 0;
  int gp_generations_total = 0;
};

/// Sentinel curve value while the pool has no scored candidate.
inline constexpr double kNoScore = -std::numeric_limits<double>::max();

/// The closed propose -> verify -> pool -> select-context loop for one
/// sample. A single loop advances sequentially; distinct samples may run
/// their loops in parallel.
class RefineLoop {
 public:
  RefineLoop(const bench::Sample& sample, LoopConfig cfg, bench::VerifyConfig verify_cfg,
             gp::GpConfig gp_cfg, llm::ChatClient* client);
  ~RefineLoop();

  RefineLoop(const RefineLoop&) = delete;
  RefineLoop& operator=(const RefineLoop&) = delete;

  /// One pass: build context, obtain a proposal (LLM and/or GP per mode),
  /// verify and insert. Returns false when no candidate was produced
  /// (retry budget exhausted). Throws std::logic_error once the epoch
  /// budget is spent.
  bool run_epoch();

  /// Runs until the tolerance is met or the epoch budget is exhausted;
  /// `on_epoch` fires after every epoch (checkpointing hook).
  RunOutcome run(const std::function<void(const RefineLoop&)>& on_epoch = {});

  const bench::Sample& sample() const;
  const HistoryPool& pool() const;
  int epochs_run() const;
  bool tolerance_met() const;
  const Candidate* best() const;
  RunOutcome outcome() const;

  /// Loop state as a JSON string for checkpointing; restore picks up an
  /// interrupted run (pool, counters, curve).
  std::string serialize_state() const;
  void restore_state(const std::string& text);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace symbolbench::loop
