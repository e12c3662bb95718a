#include "symbolbench/bench/runner.hpp"

#include <atomic>
#include <condition_variable>
#include <fstream>
#include <mutex>
#include <thread>

#include "candidate_json.hpp"

namespace symbolbench::bench {

using nlohmann::json;

namespace {

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  std::uint64_t h = a ^ (0x9e3779b97f4a7c15ULL + b + (a << 6) + (a >> 2));
  h ^= h >> 30;
  h *= 0xbf58476d1ce4e5b9ULL;
  h ^= h >> 27;
  return h;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

bool mode_needs_client(const loop::LoopConfig& cfg) {
  return cfg.mode == loop::ProposalMode::Llm ||
         cfg.mode == loop::ProposalMode::HybridSeededGp || cfg.judge_enabled;
}

}  // namespace

std::string result_to_json_line(const RunResult& r) {
  json j;
  j["sample_id"] = r.sample_id;
  j["task"] = metrics::task_name(r.task);
  j["dim"] = r.dim;
  j["max_lag"] = r.max_lag;
  j["attempt"] = r.attempt;
  j["epochs_run"] = r.epochs_run;
  j["tolerance_met"] = r.tolerance_met;
  j["model_calls"] = r.model_calls;
  j["judge_calls"] = r.judge_calls;
  if (r.best) j["best"] = detail::candidate_to_json(*r.best);
  if (r.ood_scores) j["ood_scores"] = detail::scorecard_to_json(*r.ood_scores);
  j["curve"] = r.curve;
  j["config_fingerprint"] = r.config_fingerprint;
  if (!r.transcript_file.empty()) j["transcript_file"] = r.transcript_file;
  return j.dump();
}

RunResult result_from_json_line(const std::string& line) {
  json j = json::parse(line);
  RunResult r;
  r.sample_id = j.at("sample_id").get<std::string>();
  r.task = metrics::task_from_name(j.at("task").get<std::string>())
               .value_or(metrics::TaskKind::Cde);
  r.dim = j.value("dim", 1);
  r.max_lag = j.value("max_lag", 1);
  r.attempt = j.value("attempt", 1);
  r.epochs_run = j.value("epochs_run", 0);
  r.tolerance_met = j.value("tolerance_met", false);
  r.model_calls = j.value("model_calls", std::uint64_t{0});
  r.judge_calls = j.value("judge_calls", std::uint64_t{0});
  if (j.contains("best")) {
    r.best = detail::candidate_from_json(j["best"], r.task, r.dim, r.max_lag);
  }
  if (j.contains("ood_scores")) {
    r.ood_scores = detail::scorecard_from_json(j["ood_scores"]);
  }
  r.curve = j.value("curve", std::vector<double>{});
  r.config_fingerprint = j.value("config_fingerprint", std::string());
  r.transcript_file = j.value("transcript_file", std::string());
  return r;
}

std::vector<RunResult> load_results_log(const std::filesystem::path& file) {
  std::vector<RunResult> results;
  std::ifstream in(file);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    results.push_back(result_from_json_line(line));
  }
  return results;
}

namespace {

RunResult run_one_sample(const BenchConfig& cfg, const Sample& sample) {
  const auto checkpoint_path = cfg.output_dir / "checkpoints" / (sample.id + ".json");
  std::string transcript_rel;

  RunResult result;
  result.sample_id = sample.id;
  result.task = sample.task;
  result.dim = sample.dim;
  result.max_lag = sample.max_lag;
  result.config_fingerprint = cfg.config_fingerprint;

  for (int attempt = 1; attempt <= 2; ++attempt) {
    std::unique_ptr<llm::ChatClient> client;
    if (mode_needs_client(cfg.loop)) {
      transcript_rel = "transcripts/" + sample.id + ".jsonl";
      client = std::make_unique<llm::ChatClient>(cfg.model,
                                                 (cfg.output_dir / transcript_rel).string());
    }

    loop::LoopConfig loop_cfg = cfg.loop;
    loop_cfg.seed = mix(cfg.seed, mix(fnv1a(sample.id), static_cast<std::uint64_t>(attempt)));

    loop::RefineLoop refine(sample, loop_cfg, cfg.verify, cfg.gp, client.get());
    if (attempt == 1 && std::filesystem::exists(checkpoint_path)) {
      std::ifstream in(checkpoint_path);
      std::string text((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
      refine.restore_state(text);
    }

    loop::RunOutcome outcome = refine.run([&](const loop::RefineLoop& state) {
      write_file_atomic(checkpoint_path, state.serialize_state());
    });

    result.attempt = attempt;
    result.epochs_run = outcome.epochs_run;
    result.tolerance_met = outcome.tolerance_met;
    result.model_calls = outcome.model_calls;
    result.judge_calls = outcome.judge_calls;
    result.curve = outcome.best_curve;
    result.transcript_file = transcript_rel;

    if (const loop::Candidate* best = refine.best()) {
      result.best = *best;
      if (sample.has_ood() && !best->scores.failed) {
        result.ood_scores = evaluate_ood(*best, sample, cfg.verify);
      }
    }

    // Rerun-once policy: a run that never produced any candidate gets one
    // fresh attempt with a reseeded loop.
    if (!refine.pool().empty() || attempt == 2) break;
    std::filesystem::remove(checkpoint_path);
  }
  return result;
}

}  // namespace

std::vector<RunResult> run_benchmark(const BenchConfig& cfg,
                                     const std::vector<Sample>& all_samples) {
  namespace fs = std::filesystem;
  fs::create_directories(cfg.output_dir);
  fs::create_directories(cfg.output_dir / "checkpoints");
  if (mode_needs_client(cfg.loop)) fs::create_directories(cfg.output_dir / "transcripts");

  std::vector<const Sample*> samples;
  for (const auto& s : all_samples) {
    if (!cfg.task_filter || s.task == *cfg.task_filter) samples.push_back(&s);
  }

  const fs::path results_path = cfg.output_dir / "results.jsonl";
  std::vector<RunResult> done;
  if (fs::exists(results_path)) done = load_results_log(results_path);
  std::unordered_map<std::string, const RunResult*> completed;
  for (const auto& r : done) completed[r.sample_id] = &r;

  std::vector<size_t> todo;
  for (size_t i = 0; i < samples.size(); ++i) {
    if (!completed.count(samples[i]->id)) todo.push_back(i);
  }

  std::vector<std::optional<RunResult>> slots(samples.size());
  std::mutex mu;
  std::condition_variable cv;
  std::atomic<size_t> next_job{0};

  auto worker = [&] {
    while (true) {
      const size_t t = next_job.fetch_add(1);
      if (t >= todo.size()) break;
      RunResult r = run_one_sample(cfg, *samples[todo[t]]);
      {
        std::lock_guard lock(mu);
        slots[todo[t]] = std::move(r);
      }
      cv.notify_all();
    }
  };

  const int workers = std::max(1, std::min<int>(cfg.parallelism,
                                                static_cast<int>(todo.size())));
  std::vector<std::thread> threads;
  threads.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) threads.emplace_back(worker);

  // Single writer appends in dataset order so the log is deterministic.
  std::vector<RunResult> results;
  std::ofstream out(results_path, std::ios::app);
  for (size_t i = 0; i < samples.size(); ++i) {
    if (auto it = completed.find(samples[i]->id); it != completed.end()) {
      results.push_back(*it->second);
      continue;
    }
    std::unique_lock lock(mu);
    cv.wait(lock, [&] { return slots[i].has_value(); });
    RunResult r = std::move(*slots[i]);
    lock.unlock();
    out << result_to_json_line(r) << "\n";
    out.flush();
    fs::remove(cfg.output_dir / "checkpoints" / (r.sample_id + ".json"));
    results.push_back(std::move(r));
  }
  for (auto& t : threads) t.join();
  return results;
}

}  // namespace symbolbench::bench
