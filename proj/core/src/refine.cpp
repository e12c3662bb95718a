#include "symbolbench/loop/refine.hpp"

#include <cassert>
#include <cmath>

#include "candidate_json.hpp"
#include "symbolbench/dynamics/boolean_sim.hpp"
#include "symbolbench/dynamics/derivatives.hpp"
#include "symbolbench/metrics/scores.hpp"

namespace symbolbench::loop {

using bench::Sample;
using metrics::TaskKind;

const char* mode_name(ProposalMode mode) {
  switch (mode) {
    case ProposalMode::Llm: return "llm";
    case ProposalMode::Gp: return "gp";
    case ProposalMode::HybridSeededGp: return "hybrid_seeded_gp";
    case ProposalMode::HybridGpJudged: return "hybrid_gp_judged";
  }
  return "?";
}

std::optional<ProposalMode> mode_from_name(const std::string& name) {
  if (name == "llm") return ProposalMode::Llm;
  if (name == "gp") return ProposalMode::Gp;
  if (name == "hybrid_seeded_gp") return ProposalMode::HybridSeededGp;
  if (name == "hybrid_gp_judged") return ProposalMode::HybridGpJudged;
  return std::nullopt;
}

void LoopConfig::validate(TaskKind task) const {
  if (max_epochs <= 0) throw std::invalid_argument("loop.max_epochs must be positive");
  if (max_retries <= 0) throw std::invalid_argument("loop.max_retries must be positive");
  if (top_k < 0) throw std::invalid_argument("loop.top_k must be non-negative");
  if (gp_pool_top_n <= 0) throw std::invalid_argument("loop.gp_pool_top_n must be positive");
  if (task == TaskKind::Scm && mode != ProposalMode::Llm) {
    throw std::invalid_argument("loop.mode: graph proposals come from the llm mode only");
  }
  if (mode == ProposalMode::HybridGpJudged && !judge_enabled) {
    throw std::invalid_argument("loop.mode: hybrid_gp_judged requires judge=true");
  }
}

namespace {

// BN samples are prompted with their transition orbits rather than a
// continuous series.
std::string orbits_text(const std::vector<dynamics::BoolOrbit>& orbits,
                        int row_budget) {
  std::string out;
  int rows = 0;
  for (size_t o = 0; o < orbits.size(); ++o) {
    out += "Initial condition " + std::to_string(o + 1) + ":\n";
    for (const auto& state : orbits[o]) {
      out += "  ";
      for (size_t j = 0; j < state.size(); ++j) {
        if (j > 0) out += " ";
        out += state[j] ? "1" : "0";
      }
      out += "\n";
      if (row_budget > 0 && ++rows >= row_budget) {
        out += "  ... (truncated)\n";
        return out;
      }
    }
  }
  return out;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t h = seed ^ (0x9e3779b97f4a7c15ULL + salt);
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdULL;
  h ^= h >> 33;
  return h;
}

}  // namespace

struct RefineLoop::Impl {
  const Sample& sample;
  LoopConfig cfg;
  bench::VerifyConfig verify_cfg;
  gp::GpConfig gp_cfg;
  llm::ChatClient* client;

  HistoryPool pool;
  std::vector<double> curve;
  std::vector<EpochRecord> epochs;
  int epoch = 0;
  bool met = false;
  std::uint64_t model_calls = 0;
  std::uint64_t judge_calls = 0;
  int gp_generations_total = 0;

  std::string series_text;
  // Derivative targets for the GP fitness (CDE only), computed once.
  double derivative_variance = 0.0;

  Impl(const Sample& sample_, LoopConfig cfg_, bench::VerifyConfig vcfg, gp::GpConfig gcfg,
       llm::ChatClient* client_)
      : sample(sample_), cfg(cfg_), verify_cfg(vcfg), gp_cfg(gcfg), client(client_) {
    cfg.validate(sample.task);
    sample.validate();
    if (needs_llm() && !client) {
      throw std::invalid_argument("refine loop: this proposal mode requires a chat client");
    }

    if (sample.task == TaskKind::Bn) {
      series_text = orbits_text(sample.train_orbits, cfg.series_row_budget);
    } else {
      series_text =
          llm::serialize_timeseries(*sample.train, sample.variables, cfg.series_row_budget);
    }

    if (sample.task == TaskKind::Cde) {
      auto targets = dynamics::estimate_derivatives(*sample.train);
      double mean = 0.0;
      size_t n = 0;
      for (const auto& row : targets)
        for (double v : row) {
          mean += v;
          ++n;
        }
      mean /= static_cast<double>(n);
      for (const auto& row : targets)
        for (double v : row) derivative_variance += (v - mean) * (v - mean);
      derivative_variance /= static_cast<double>(n);
      if (derivative_variance <= 0.0) derivative_variance = 1.0;
    }
  }

  bool needs_llm() const {
    return cfg.mode == ProposalMode::Llm || cfg.mode == ProposalMode::HybridSeededGp ||
           cfg.judge_enabled;
  }

  bool meets_tolerance(const metrics::ScoreCard& card) const {
    if (card.failed) return false;
    if (card.task == TaskKind::Scm && cfg.ci_lower_is_better) {
      return card.primary <= cfg.tolerance;
    }
    return card.primary >= cfg.tolerance;
  }

  double best_ranking() const {
    const Candidate* top = pool.best(cfg.ci_lower_is_better, cfg.rubric_weight);
    return top ? metrics::ranking_value(top->scores, cfg.ci_lower_is_better) : kNoScore;
  }

  std::vector<llm::HistoryEntry> context_entries() const {
    std::vector<llm::HistoryEntry> entries;
    for (const Candidate* c :
         pool.select_context(cfg.top_k, cfg.ci_lower_is_better, cfg.rubric_weight)) {
      llm::HistoryEntry entry;
      entry.structure_text = expr::to_text(c->structure);
      entry.score = c->scores.primary;
      entry.complexity = c->scores.complexity;
      if (c->scores.rubric) entry.rubric_mean = c->scores.rubric->mean();
      entries.push_back(std::move(entry));
    }
    return entries;
  }

  std::optional<metrics::Rubric> run_judge(const expr::Structure& structure,
                                           const std::string& reasoning) {
    llm::JudgeRequest req;
    req.task = sample.task;
    req.candidate_text = expr::to_text(structure);
    req.reasoning = reasoning;
    req.domain_text = sample.domain;
    req.variable_descriptions = sample.variables;
    const std::uint64_t before = client->calls_made();
    std::optional<metrics::Rubric> rubric;
    try {
      rubric = llm::judge(*client, req);
    } catch (const llm::ReplyError&) {
      // quantitative scores stand on their own; rubric stays absent
    } catch (const llm::TransportError&) {
    }
    judge_calls += client->calls_made() - before;
    return rubric;
  }

  // One LLM proposal with the per-epoch retry budget. Returns the inserted
  // (or deduplicated) candidate count and records attempts.
  bool propose_llm(EpochRecord& record) {
    llm::PromptSpec spec;
    spec.task = sample.task;
    spec.strategy = cfg.strategy;
    spec.dim = sample.dim;
    spec.max_lag = sample.max_lag;
    spec.series_text = series_text;
    if (cfg.strategy == llm::Strategy::Context || cfg.strategy == llm::Strategy::CoT) {
      spec.domain_text = sample.domain.empty() ? "(unspecified)" : sample.domain;
      spec.variable_descriptions = sample.variables;
    }
    if (cfg.strategy != llm::Strategy::Naive) spec.history = context_entries();
    const auto messages = llm::build_prompt(spec);

    std::optional<llm::ParsedCandidate> parsed;
    while (record.attempts < cfg.max_retries && !parsed) {
      ++record.attempts;
      ++model_calls;
      std::string reply;
      try {
        reply = client->complete(messages);
      } catch (const llm::TransportError&) {
        continue;
      }
      try {
        parsed = llm::parse_candidate(reply, sample.task, sample.dim, sample.max_lag);
      } catch (const llm::ReplyError&) {
        continue;
      }
    }
    if (!parsed) return false;

    Candidate candidate = bench::verify_candidate(parsed->structure, sample, verify_cfg,
                                                  epoch, Origin::Llm, parsed->reasoning);
    if (cfg.judge_enabled && !candidate.scores.failed) {
      candidate.scores.rubric = run_judge(candidate.structure, candidate.reasoning);
    }
    pool.insert(std::move(candidate));
    return true;
  }

  template <typename Ops>
  void run_gp_engine(Ops ops, bool judged) {
    using Structure = typename Ops::Structure;

    gp::GpConfig engine_cfg = gp_cfg;
    engine_cfg.seed = mix_seed(cfg.seed, static_cast<std::uint64_t>(epoch) + 1);
    engine_cfg.result_top_k = cfg.gp_pool_top_n;
    if (!judged) engine_cfg.judge_weight = 0.0;

    std::vector<gp::Seed<Structure>> seeds;
    for (const Candidate* c :
         pool.select_context(cfg.top_k, cfg.ci_lower_is_better, cfg.rubric_weight)) {
      if (const auto* s = std::get_if<Structure>(&c->structure)) {
        seeds.push_back({*s, metrics::ranking_value(c->scores, cfg.ci_lower_is_better)});
      }
    }

    gp::FitnessFn<Structure> fitness = make_fitness<Structure>();
    gp::JudgeFn<Structure> judge_fn;
    if (judged) {
      judge_fn = [this](const Structure& s) -> std::optional<double> {
        auto rubric = run_judge(expr::Structure(s), "");
        if (!rubric) return std::nullopt;
        return rubric->mean();
      };
    }

    gp::Engine<Ops> engine(std::move(ops), engine_cfg);
    auto result = engine.evolve(seeds, fitness, judge_fn);
    gp_generations_total += result.generations_run;

    for (const auto& ind : result.top) {
      if (pool.contains(ind.key)) continue;
      Candidate candidate = bench::verify_candidate(expr::Structure(ind.structure), sample,
                                                    verify_cfg, epoch, Origin::Gp);
      if (judged && !candidate.scores.failed && ind.judge) {
        // Rubric already obtained inside the evolution loop; keep the mean.
        metrics::Rubric r;
        const int rounded = static_cast<int>(std::lround(*ind.judge));
        r.context_alignment = r.scientific_plausibility = r.conciseness_clarity =
            r.logical_coherence = std::clamp(rounded, 1, 5);
        candidate.scores.rubric = r;
      }
      pool.insert(std::move(candidate));
    }
  }

  template <typename Structure>
  gp::FitnessFn<Structure> make_fitness();

  void propose_gp(bool judged) {
    if (sample.task == TaskKind::Cde) {
      gp::AlgTreeOps ops;
      ops.dim = sample.dim;
      ops.use_functions = gp_cfg.use_functions;
      run_gp_engine(ops, judged);
    } else if (sample.task == TaskKind::Bn) {
      gp::BoolTreeOps ops;
      ops.dim = sample.dim;
      run_gp_engine(ops, judged);
    }
  }

  bool step() {
    if (epoch >= cfg.max_epochs) {
      throw std::logic_error("refine loop: epoch budget exhausted");
    }
    EpochRecord record;
    record.epoch = epoch;

    bool produced = false;
    switch (cfg.mode) {
      case ProposalMode::Llm:
        produced = propose_llm(record);
        break;
      case ProposalMode::Gp:
        propose_gp(false);
        produced = true;
        break;
      case ProposalMode::HybridSeededGp:
        produced = propose_llm(record);
        propose_gp(false);
        produced = produced || !pool.empty();
        break;
      case ProposalMode::HybridGpJudged:
        propose_gp(true);
        produced = true;
        break;
    }

    record.produced_candidate = produced;
    epochs.push_back(record);
    ++epoch;

    curve.push_back(best_ranking());
    assert(curve.size() < 2 || curve[curve.size() - 2] <= curve.back());

    const Candidate* top = pool.best(cfg.ci_lower_is_better, cfg.rubric_weight);
    if (top && meets_tolerance(top->scores)) met = true;
    return produced;
  }

  RunOutcome snapshot() const {
    RunOutcome out;
    out.best_curve = curve;
    out.epochs = epochs;
    out.epochs_run = epoch;
    out.tolerance_met = met;
    out.model_calls = model_calls;
    out.judge_calls = judge_calls;
    out.gp_generations_total = gp_generations_total;
    return out;
  }
};

// GP fitness adapters. CDE candidates are scored in derivative space (an
// R^2-like score against the finite-difference targets) to keep the
// evolution loop away from full integrations; BN candidates score their
// transition macro-F1 directly.
template <>
gp::FitnessFn<expr::AlgebraicSystem> RefineLoop::Impl::make_fitness() {
  dynamics::FitConfig gp_fit = verify_cfg.fit;
  gp_fit.num_starts = std::min(gp_fit.num_starts, 3);
  gp_fit.max_iterations = std::min(gp_fit.max_iterations, 60);
  const double variance = derivative_variance;
  const Sample& s = sample;
  return [gp_fit, variance, &s](const expr::AlgebraicSystem& sys) -> std::optional<double> {
    try {
      dynamics::FittedModel model = dynamics::fit_coefficients(sys, *s.train, gp_fit);
      return 1.0 - model.residual / variance;
    } catch (const dynamics::FitError&) {
      return std::nullopt;
    } catch (const std::invalid_argument&) {
      return std::nullopt;
    }
  };
}

template <>
gp::FitnessFn<expr::BooleanNetwork> RefineLoop::Impl::make_fitness() {
  const Sample& s = sample;
  return [&s](const expr::BooleanNetwork& net) -> std::optional<double> {
    if (net.dim != s.dim) return std::nullopt;
    std::vector<std::vector<std::uint8_t>> truth_rows, pred_rows;
    for (const auto& orbit : s.train_orbits) {
      const int steps = static_cast<int>(orbit.size()) - 1;
      auto sim = dynamics::simulate_boolean(net, {orbit.front()}, steps);
      for (int t = 1; t <= steps; ++t) {
        truth_rows.push_back(orbit[static_cast<size_t>(t)]);
        pred_rows.push_back(sim.front()[static_cast<size_t>(t)]);
      }
    }
    return metrics::bn_transition_scores(truth_rows, pred_rows).macro_f1;
  };
}

RefineLoop::RefineLoop(const Sample& sample, LoopConfig cfg, bench::VerifyConfig verify_cfg,
                       gp::GpConfig gp_cfg, llm::ChatClient* client)
    : impl_(std::make_unique<Impl>(sample, cfg, verify_cfg, gp_cfg, client)) {}

RefineLoop::~RefineLoop() = default;

bool RefineLoop::run_epoch() { return impl_->step(); }

RunOutcome RefineLoop::run(const std::function<void(const RefineLoop&)>& on_epoch) {
  while (impl_->epoch < impl_->cfg.max_epochs && !impl_->met) {
    impl_->step();
    if (on_epoch) on_epoch(*this);
  }
  // Budget accounting: proposal attempts never exceed the per-epoch retry
  // cap, and every other wire call belongs to the judge.
  assert(impl_->model_calls <=
         static_cast<std::uint64_t>(impl_->epoch) *
             static_cast<std::uint64_t>(impl_->cfg.max_retries));
  return impl_->snapshot();
}

const Sample& RefineLoop::sample() const { return impl_->sample; }
const HistoryPool& RefineLoop::pool() const { return impl_->pool; }
int RefineLoop::epochs_run() const { return impl_->epoch; }
bool RefineLoop::tolerance_met() const { return impl_->met; }

const Candidate* RefineLoop::best() const {
  return impl_->pool.best(impl_->cfg.ci_lower_is_better, impl_->cfg.rubric_weight);
}

RunOutcome RefineLoop::outcome() const { return impl_->snapshot(); }

std::string RefineLoop::serialize_state() const {
  nlohmann::json j;
  j["sample_id"] = impl_->sample.id;
  j["epoch"] = impl_->epoch;
  j["tolerance_met"] = impl_->met;
  j["model_calls"] = impl_->model_calls;
  j["judge_calls"] = impl_->judge_calls;
  j["gp_generations_total"] = impl_->gp_generations_total;
  j["curve"] = impl_->curve;
  nlohmann::json epochs = nlohmann::json::array();
  for (const auto& e : impl_->epochs) {
    epochs.push_back({{"epoch", e.epoch},
                      {"produced_candidate", e.produced_candidate},
                      {"attempts", e.attempts}});
  }
  j["epochs"] = std::move(epochs);
  nlohmann::json pool = nlohmann::json::array();
  for (const auto& c : impl_->pool.all()) pool.push_back(detail::candidate_to_json(c));
  j["pool"] = std::move(pool);
  return j.dump();
}

void RefineLoop::restore_state(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (j.value("sample_id", std::string()) != impl_->sample.id) {
    throw std::invalid_argument("restore_state: checkpoint belongs to a different sample");
  }
  impl_->epoch = j.value("epoch", 0);
  impl_->met = j.value("tolerance_met", false);
  impl_->model_calls = j.value("model_calls", std::uint64_t{0});
  impl_->judge_calls = j.value("judge_calls", std::uint64_t{0});
  impl_->gp_generations_total = j.value("gp_generations_total", 0);
  impl_->curve = j.value("curve", std::vector<double>{});
  impl_->epochs.clear();
  for (const auto& e : j.value("epochs", nlohmann::json::array())) {
    EpochRecord record;
    record.epoch = e.value("epoch", 0);
    record.produced_candidate = e.value("produced_candidate", false);
    record.attempts = e.value("attempts", 0);
    impl_->epochs.push_back(record);
  }
  impl_->pool = HistoryPool();
  for (const auto& c : j.value("pool", nlohmann::json::array())) {
    impl_->pool.insert(detail::candidate_from_json(c, impl_->sample.task,
                                                   impl_->sample.dim,
                                                   impl_->sample.max_lag));
  }
}

}  // namespace symbolbench::loop
