// symbolbench: discover governing structures (coupled ODEs, Boolean
// networks, lagged causal graphs) from time series through an iterative
// propose/verify/refine loop.
//
// Subcommands: run, verify, report, dataset-validate. Exit codes: 0 success,
// 1 validation error, 2 runtime error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "symbolbench/bench/report.hpp"
#include "symbolbench/bench/runner.hpp"
#include "symbolbench/expr/parse.hpp"
#include "symbolbench/llm/gateway.hpp"
#include "symbolbench/loop/refine.hpp"

namespace sb = symbolbench;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

json default_config() {
  return json{
      {"dataset", ""},
      {"output_dir", "runs/out"},
      {"task", nullptr},
      {"mode", "llm"},
      {"strategy", "context"},
      {"judge", false},
      {"seed", 0},
      {"parallelism", 1},
      {"series_row_budget", 200},
      {"model",
       {{"base_url", "http://127.0.0.1:8080/v1"},
        {"name", "mock"},
        {"temperature", 0.7},
        {"judge_temperature", 0.0},
        {"max_tokens", 4096},
        {"concurrency", 4},
        {"rate_limit_per_s", 0.0},
        {"transport_retries", 3},
        {"backoff_initial_ms", 200.0},
        {"timeout_s", 120},
        {"api_key_env", "SYMBOLBENCH_API_KEY"}}},
      {"loop",
       {{"max_epochs", 100},
        {"max_retries", 20},
        {"top_k", 5},
        {"tolerance", 0.9},
        {"rubric_weight", 0.0},
        {"ci_lower_is_better", true},
        {"gp_pool_top_n", 5}}},
      {"gp",
       {{"population", 200},
        {"generations", 50},
        {"tournament", 3},
        {"p_crossover", 0.9},
        {"p_mutation", 0.3},
        {"depth_cap", 8},
        {"parsimony", 0.005},
        {"judge_weight", 0.0},
        {"stop_fitness", nullptr},
        {"use_functions", false}}},
      {"fit", {{"num_starts", 6}, {"max_iterations", 200}}},
      {"integrate",
       {{"rel_tol", 1e-6}, {"abs_tol", 1e-8}, {"max_rhs_evals", 2000000}}},
  };
}

// Deep-merge `overlay` into `base` (objects merged key-wise, leaves replaced).
void merge(json& base, const json& overlay) {
  if (!overlay.is_object() || !base.is_object()) {
    base = overlay;
    return;
  }
  for (const auto& [key, value] : overlay.items()) {
    if (base.contains(key)) {
      merge(base[key], value);
    } else {
      base[key] = value;
    }
  }
}

void apply_override(json& config, const std::string& assignment) {
  size_t eq = assignment.find('=');
  if (eq == std::string::npos) {
    throw ConfigError("--set expects key=value, got '" + assignment + "'");
  }
  std::string path = assignment.substr(0, eq);
  std::string value_text = assignment.substr(eq + 1);

  json value = json::parse(value_text, nullptr, false);
  if (value.is_discarded()) value = value_text;  // plain strings stay strings

  json* node = &config;
  size_t start = 0;
  while (true) {
    size_t dot = path.find('.', start);
    std::string key = path.substr(start, dot == std::string::npos ? dot : dot - start);
    if (key.empty()) throw ConfigError("--set path has an empty segment: " + path);
    if (dot == std::string::npos) {
      (*node)[key] = value;
      return;
    }
    node = &(*node)[key];
    start = dot + 1;
  }
}

template <typename T>
T field(const json& j, const std::string& path, const char* type_name) {
  const json* node = &j;
  size_t start = 0;
  std::string walked;
  while (true) {
    size_t dot = path.find('.', start);
    std::string key = path.substr(start, dot == std::string::npos ? dot : dot - start);
    walked = walked.empty() ? key : walked + "." + key;
    if (!node->is_object() || !node->contains(key)) {
      throw ConfigError("missing config field '" + walked + "'");
    }
    node = &(*node)[key];
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  try {
    return node->get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config field '" + path + "' must be a " + type_name);
  }
}

sb::bench::BenchConfig bench_config_from_json(const json& j) {
  sb::bench::BenchConfig cfg;
  cfg.dataset_dir = field<std::string>(j, "dataset", "string");
  cfg.output_dir = field<std::string>(j, "output_dir", "string");
  if (cfg.dataset_dir.empty()) throw ConfigError("config field 'dataset' is empty");

  if (!j["task"].is_null()) {
    auto task = sb::metrics::task_from_name(field<std::string>(j, "task", "string"));
    if (!task) throw ConfigError("config field 'task' must be cde, bn or scm");
    cfg.task_filter = *task;
  }

  auto mode = sb::loop::mode_from_name(field<std::string>(j, "mode", "string"));
  if (!mode) {
    throw ConfigError(
        "config field 'mode' must be llm, gp, hybrid_seeded_gp or hybrid_gp_judged");
  }
  cfg.loop.mode = *mode;

  auto strategy = sb::llm::strategy_from_name(field<std::string>(j, "strategy", "string"));
  if (!strategy) {
    throw ConfigError("config field 'strategy' must be naive, base, context or cot");
  }
  cfg.loop.strategy = *strategy;

  cfg.loop.judge_enabled = field<bool>(j, "judge", "boolean");
  cfg.seed = field<std::uint64_t>(j, "seed", "integer");
  cfg.parallelism = field<int>(j, "parallelism", "integer");
  if (cfg.parallelism <= 0) throw ConfigError("config field 'parallelism' must be positive");
  cfg.loop.series_row_budget = field<int>(j, "series_row_budget", "integer");

  cfg.model.base_url = field<std::string>(j, "model.base_url", "string");
  cfg.model.model = field<std::string>(j, "model.name", "string");
  cfg.model.temperature = field<double>(j, "model.temperature", "number");
  cfg.model.judge_temperature = field<double>(j, "model.judge_temperature", "number");
  cfg.model.max_tokens = field<int>(j, "model.max_tokens", "integer");
  cfg.model.concurrency = field<int>(j, "model.concurrency", "integer");
  cfg.model.rate_limit_per_s = field<double>(j, "model.rate_limit_per_s", "number");
  cfg.model.transport_retries = field<int>(j, "model.transport_retries", "integer");
  cfg.model.backoff_initial_ms = field<double>(j, "model.backoff_initial_ms", "number");
  cfg.model.timeout_s = field<int>(j, "model.timeout_s", "integer");
  cfg.model.api_key_env = field<std::string>(j, "model.api_key_env", "string");

  cfg.loop.max_epochs = field<int>(j, "loop.max_epochs", "integer");
  cfg.loop.max_retries = field<int>(j, "loop.max_retries", "integer");
  cfg.loop.top_k = field<int>(j, "loop.top_k", "integer");
  cfg.loop.tolerance = field<double>(j, "loop.tolerance", "number");
  cfg.loop.rubric_weight = field<double>(j, "loop.rubric_weight", "number");
  cfg.loop.ci_lower_is_better = field<bool>(j, "loop.ci_lower_is_better", "boolean");
  cfg.loop.gp_pool_top_n = field<int>(j, "loop.gp_pool_top_n", "integer");

  cfg.gp.population = field<int>(j, "gp.population", "integer");
  cfg.gp.generations = field<int>(j, "gp.generations", "integer");
  cfg.gp.tournament = field<int>(j, "gp.tournament", "integer");
  cfg.gp.p_crossover = field<double>(j, "gp.p_crossover", "number");
  cfg.gp.p_mutation = field<double>(j, "gp.p_mutation", "number");
  cfg.gp.depth_cap = field<int>(j, "gp.depth_cap", "integer");
  cfg.gp.parsimony = field<double>(j, "gp.parsimony", "number");
  cfg.gp.judge_weight = field<double>(j, "gp.judge_weight", "number");
  cfg.gp.use_functions = field<bool>(j, "gp.use_functions", "boolean");
  if (!j["gp"]["stop_fitness"].is_null()) {
    cfg.gp.stop_fitness = field<double>(j, "gp.stop_fitness", "number");
  }

  cfg.verify.fit.num_starts = field<int>(j, "fit.num_starts", "integer");
  cfg.verify.fit.max_iterations = field<int>(j, "fit.max_iterations", "integer");
  cfg.verify.fit.seed = cfg.seed;
  cfg.verify.integrate.rel_tol = field<double>(j, "integrate.rel_tol", "number");
  cfg.verify.integrate.abs_tol = field<double>(j, "integrate.abs_tol", "number");
  cfg.verify.integrate.max_rhs_evals =
      field<std::uint64_t>(j, "integrate.max_rhs_evals", "integer");
  cfg.verify.ci_lower_is_better = cfg.loop.ci_lower_is_better;

  try {
    cfg.gp.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config section 'gp': ") + e.what());
  }
  cfg.config_fingerprint = std::to_string(fnv1a(j.dump()));
  return cfg;
}

json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json file = json::parse(in, nullptr, false);
  if (file.is_discarded()) throw ConfigError("config file is not valid JSON: " + path);
  json cfg = default_config();
  merge(cfg, file);
  return cfg;
}

void print_scorecard(const sb::metrics::ScoreCard& card, const char* label) {
  std::cout << label << ": ";
  if (card.failed) {
    std::cout << "FAILED (structure could not be scored)\n";
    return;
  }
  const char* metric = card.task == sb::metrics::TaskKind::Cde ? "R2"
                       : card.task == sb::metrics::TaskKind::Bn ? "macro-F1"
                                                                : "CI-score";
  std::cout << metric << "=" << card.primary << " complexity=" << card.complexity;
  if (card.symbolic_proximity) std::cout << " proximity=" << *card.symbolic_proximity;
  std::cout << "\n";
}

int cmd_run(const std::string& config_path, const std::vector<std::string>& overrides) {
  json config = load_config_file(config_path);
  for (const auto& assignment : overrides) apply_override(config, assignment);

  sb::bench::BenchConfig cfg = bench_config_from_json(config);
  auto samples = sb::bench::load_dataset(cfg.dataset_dir);
  // Fail early on invalid mode/task combinations before spinning anything up.
  for (const auto& s : samples) {
    if (cfg.task_filter && s.task != *cfg.task_filter) continue;
    cfg.loop.validate(s.task);
  }

  std::filesystem::create_directories(cfg.output_dir);
  {
    std::ofstream snap(cfg.output_dir / "config.resolved.json");
    snap << config.dump(2) << "\n";
  }

  auto results = sb::bench::run_benchmark(cfg, samples);
  auto report = sb::bench::build_report(results, samples);
  sb::bench::write_report_files(report, cfg.output_dir);
  std::cout << sb::bench::render_text(report);
  std::cout << "results: " << (cfg.output_dir / "results.jsonl").string() << " ("
            << results.size() << " samples)\n";
  return kExitOk;
}

int cmd_verify(const std::string& structure_text, const std::string& sample_path) {
  sb::bench::Sample sample = sb::bench::load_sample_file(sample_path);

  sb::expr::Structure structure;
  switch (sample.task) {
    case sb::metrics::TaskKind::Cde:
      structure = sb::expr::parse_algebraic(structure_text, sample.dim);
      break;
    case sb::metrics::TaskKind::Bn: {
      std::vector<std::string> lines;
      std::string current;
      for (char c : structure_text) {
        if (c == '\n' || c == ';') {
          if (!current.empty()) lines.push_back(current);
          current.clear();
        } else {
          current += c;
        }
      }
      if (!current.empty()) lines.push_back(current);
      structure = sb::expr::parse_boolean(lines, sample.dim);
      break;
    }
    case sb::metrics::TaskKind::Scm: {
      json edges = json::parse(structure_text, nullptr, false);
      if (edges.is_discarded() || !edges.is_array()) {
        throw sb::expr::ParseError("scm structure must be a JSON [[source,lag,target],...] list");
      }
      sb::expr::ScmGraph graph;
      graph.dim = sample.dim;
      graph.max_lag = sample.max_lag;
      for (const auto& e : edges) {
        graph.edges.insert({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<int>()});
      }
      graph.validate();
      structure = std::move(graph);
      break;
    }
  }

  sb::bench::VerifyConfig vcfg;
  auto candidate = sb::bench::verify_candidate(structure, sample, vcfg);
  print_scorecard(candidate.scores, "ID");
  if (sample.has_ood() && !candidate.scores.failed) {
    print_scorecard(sb::bench::evaluate_ood(candidate, sample, vcfg), "OOD");
  }
  return candidate.scores.failed ? kExitRuntime : kExitOk;
}

int cmd_report(const std::string& results_dir, std::string dataset_dir) {
  namespace fs = std::filesystem;
  const fs::path dir(results_dir);
  const fs::path log = dir / "results.jsonl";
  if (!fs::exists(log)) throw ConfigError("no results.jsonl in " + results_dir);

  if (dataset_dir.empty()) {
    const fs::path snap = dir / "config.resolved.json";
    if (!fs::exists(snap)) {
      throw ConfigError("no --dataset given and no config.resolved.json in " + results_dir);
    }
    std::ifstream in(snap);
    json config = json::parse(in);
    dataset_dir = config.value("dataset", std::string());
  }

  auto results = sb::bench::load_results_log(log);
  if (results.empty()) throw ConfigError("results log is empty: " + log.string());
  auto samples = sb::bench::load_dataset(dataset_dir);
  auto report = sb::bench::build_report(results, samples);
  sb::bench::write_report_files(report, dir);
  std::cout << sb::bench::render_text(report);
  return kExitOk;
}

int cmd_dataset_validate(const std::string& dataset_dir) {
  auto samples = sb::bench::load_dataset(dataset_dir);
  std::cout << "dataset ok: " << samples.size() << " samples\n";
  for (const auto& s : samples) {
    std::cout << "  " << s.id << " (" << sb::metrics::task_name(s.task) << ", dim "
              << s.dim << (s.has_ood() ? ", ood" : "") << ")\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symbolic-structure discovery from time series"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run the refinement loop over a dataset");
  std::string config_path;
  std::vector<std::string> overrides;
  run->add_option("-c,--config", config_path, "JSON configuration file")->required();
  run->add_option("--set", overrides, "override a config field, e.g. loop.max_epochs=5");

  auto* verify = app.add_subcommand("verify", "score a candidate structure against a sample");
  std::string structure_text, sample_path;
  verify->add_option("structure", structure_text, "candidate structure text")->required();
  verify->add_option("-s,--sample", sample_path, "sample JSON file")->required();

  auto* report = app.add_subcommand("report", "regenerate report files from a results log");
  std::string results_dir, dataset_dir;
  report->add_option("results_dir", results_dir, "run output directory")->required();
  report->add_option("-d,--dataset", dataset_dir, "dataset directory override");

  auto* validate = app.add_subcommand("dataset-validate", "check a dataset directory");
  std::string validate_dir;
  validate->add_option("dataset_dir", validate_dir, "dataset directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (run->parsed()) return cmd_run(config_path, overrides);
    if (verify->parsed()) return cmd_verify(structure_text, sample_path);
    if (report->parsed()) return cmd_report(results_dir, dataset_dir);
    if (validate->parsed()) return cmd_dataset_validate(validate_dir);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const sb::bench::SampleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const sb::expr::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}
