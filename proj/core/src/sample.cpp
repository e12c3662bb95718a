#include "symbolbench/bench/sample.hpp"

#include <algorithm>
#include <fstream>
#include <nlohmann/json.hpp>

#include "symbolbench/expr/parse.hpp"

namespace symbolbench::bench {

using nlohmann::json;

namespace {

void validate_trajectory(const Sample& s, const dynamics::Trajectory& traj,
                         const std::string& field) {
  try {
    traj.validate();
  } catch (const std::exception& e) {
    throw SampleError(s.id, field, e.what());
  }
  if (traj.dim() != s.dim) {
    throw SampleError(s.id, field,
                      "trajectory dim " + std::to_string(traj.dim()) +
                          " does not match sample dim " + std::to_string(s.dim));
  }
  if (traj.length() < 3) {
    throw SampleError(s.id, field, "trajectory needs at least 3 points");
  }
}

void validate_orbits(const Sample& s, const std::vector<dynamics::BoolOrbit>& orbits,
                     const std::string& field) {
  if (orbits.empty()) throw SampleError(s.id, field, "no orbits");
  for (size_t o = 0; o < orbits.size(); ++o) {
    const auto& orbit = orbits[o];
    const std::string where = field + "[" + std::to_string(o) + "]";
    if (orbit.size() < 2) throw SampleError(s.id, where, "orbit needs at least 2 states");
    for (const auto& state : orbit) {
      if (static_cast<int>(state.size()) != s.dim) {
        throw SampleError(s.id, where, "state length does not match sample dim");
      }
      for (auto bit : state) {
        if (bit > 1) throw SampleError(s.id, where, "non-binary state entry");
      }
    }
  }
}

}  // namespace

void Sample::validate() const {
  if (id.empty()) throw SampleError("(unnamed)", "id", "missing sample id");
  if (dim <= 0) throw SampleError(id, "dim", "dimension must be positive");

  switch (task) {
    case metrics::TaskKind::Cde:
    case metrics::TaskKind::Scm: {
      if (!train) throw SampleError(id, "train", "missing training trajectory");
      validate_trajectory(*this, *train, "train");
      for (size_t i = 0; i < ood.size(); ++i) {
        validate_trajectory(*this, ood[i], "ood[" + std::to_string(i) + "]");
      }
      if (task == metrics::TaskKind::Scm && max_lag <= 0) {
        throw SampleError(id, "max_lag", "must be positive for scm samples");
      }
      break;
    }
    case metrics::TaskKind::Bn: {
      validate_orbits(*this, train_orbits, "train_orbits");
      if (!ood_orbits.empty()) validate_orbits(*this, ood_orbits, "ood_orbits");
      break;
    }
  }

  if (ground_truth) {
    if (const auto* sys = std::get_if<expr::AlgebraicSystem>(&*ground_truth)) {
      if (sys->dim != dim) {
        throw SampleError(id, "ground_truth", "equation system dim mismatch");
      }
    } else if (const auto* net = std::get_if<expr::BooleanNetwork>(&*ground_truth)) {
      if (net->dim != dim) throw SampleError(id, "ground_truth", "network dim mismatch");
    } else if (const auto* graph = std::get_if<expr::ScmGraph>(&*ground_truth)) {
      if (graph->dim != dim) throw SampleError(id, "ground_truth", "graph dim mismatch");
    }
  }
}

namespace {

json trajectory_to_json(const dynamics::Trajectory& traj) {
  return json{{"times", traj.times}, {"values", traj.values}};
}

dynamics::Trajectory trajectory_from_json(const json& j) {
  dynamics::Trajectory traj;
  traj.times = j.at("times").get<std::vector<double>>();
  traj.values = j.at("values").get<std::vector<std::vector<double>>>();
  return traj;
}

json orbits_to_json(const std::vector<dynamics::BoolOrbit>& orbits) {
  json out = json::array();
  for (const auto& orbit : orbits) {
    json rows = json::array();
    for (const auto& state : orbit) rows.push_back(std::vector<int>(state.begin(), state.end()));
    out.push_back(std::move(rows));
  }
  return out;
}

std::vector<dynamics::BoolOrbit> orbits_from_json(const json& j) {
  std::vector<dynamics::BoolOrbit> orbits;
  for (const auto& orbit_json : j) {
    dynamics::BoolOrbit orbit;
    for (const auto& state_json : orbit_json) {
      std::vector<std::uint8_t> state;
      for (const auto& bit : state_json) state.push_back(static_cast<std::uint8_t>(bit.get<int>()));
      orbit.push_back(std::move(state));
    }
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

}  // namespace

Sample load_sample_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw SampleError(file.string(), "file", "cannot open");
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw SampleError(file.string(), "file", "malformed JSON");

  Sample s;
  s.id = j.value("id", std::string());
  auto task = metrics::task_from_name(j.value("task", std::string()));
  if (!task) throw SampleError(s.id, "task", "must be one of cde, bn, scm");
  s.task = *task;
  s.dim = j.value("dim", 0);
  s.domain = j.value("domain", std::string());
  if (j.contains("variables")) s.variables = j["variables"].get<std::vector<std::string>>();
  s.max_lag = j.value("max_lag", 1);

  try {
    if (j.contains("train")) s.train = trajectory_from_json(j["train"]);
    for (const auto& t : j.value("ood", json::array())) {
      s.ood.push_back(trajectory_from_json(t));
    }
    if (j.contains("train_orbits")) s.train_orbits = orbits_from_json(j["train_orbits"]);
    if (j.contains("ood_orbits")) s.ood_orbits = orbits_from_json(j["ood_orbits"]);
  } catch (const json::exception& e) {
    throw SampleError(s.id, "trajectories", e.what());
  }

  if (j.contains("ground_truth")) {
    const json& gt = j["ground_truth"];
    try {
      if (gt.contains("eq")) {
        s.ground_truth = expr::parse_algebraic(gt["eq"].get<std::string>(), s.dim);
      } else if (gt.contains("rules")) {
        s.ground_truth =
            expr::parse_boolean(gt["rules"].get<std::vector<std::string>>(), s.dim);
      } else if (gt.contains("edges")) {
        expr::ScmGraph graph;
        graph.dim = s.dim;
        graph.max_lag = gt.value("max_lag", s.max_lag);
        for (const auto& e : gt["edges"]) {
          graph.edges.insert({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<int>()});
        }
        graph.validate();
        s.ground_truth = std::move(graph);
      }
    } catch (const std::exception& e) {
      throw SampleError(s.id, "ground_truth", e.what());
    }
  }
  if (j.contains("truth_coefficients")) {
    s.truth_coefficients = j["truth_coefficients"].get<std::vector<double>>();
  }

  s.validate();
  return s;
}

void save_sample_file(const Sample& sample, const std::filesystem::path& file) {
  json j;
  j["id"] = sample.id;
  j["task"] = metrics::task_name(sample.task);
  j["dim"] = sample.dim;
  if (!sample.domain.empty()) j["domain"] = sample.domain;
  if (!sample.variables.empty()) j["variables"] = sample.variables;
  if (sample.task == metrics::TaskKind::Scm) j["max_lag"] = sample.max_lag;

  if (sample.train) j["train"] = trajectory_to_json(*sample.train);
  if (!sample.ood.empty()) {
    json arr = json::array();
    for (const auto& t : sample.ood) arr.push_back(trajectory_to_json(t));
    j["ood"] = std::move(arr);
  }
  if (!sample.train_orbits.empty()) j["train_orbits"] = orbits_to_json(sample.train_orbits);
  if (!sample.ood_orbits.empty()) j["ood_orbits"] = orbits_to_json(sample.ood_orbits);

  if (sample.ground_truth) {
    if (const auto* sys = std::get_if<expr::AlgebraicSystem>(&*sample.ground_truth)) {
      j["ground_truth"] = {{"eq", expr::to_string(*sys)}};
    } else if (const auto* net = std::get_if<expr::BooleanNetwork>(&*sample.ground_truth)) {
      j["ground_truth"] = {{"rules", expr::to_rule_lines(*net)}};
    } else if (const auto* graph = std::get_if<expr::ScmGraph>(&*sample.ground_truth)) {
      json edges = json::array();
      for (const auto& e : graph->edges) edges.push_back({e.source, e.lag, e.target});
      j["ground_truth"] = {{"edges", std::move(edges)}, {"max_lag", graph->max_lag}};
    }
  }
  if (sample.truth_coefficients) j["truth_coefficients"] = *sample.truth_coefficients;

  std::ofstream out(file);
  out << j.dump(2) << "\n";
}

std::vector<Sample> load_dataset(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw std::invalid_argument("load_dataset: not a directory: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::vector<Sample> samples;
  samples.reserve(files.size());
  for (const auto& file : files) samples.push_back(load_sample_file(file));
  std::sort(samples.begin(), samples.end(),
            [](const Sample& a, const Sample& b) { return a.id < b.id; });
  for (size_t i = 1; i < samples.size(); ++i) {
    if (samples[i].id == samples[i - 1].id) {
      throw SampleError(samples[i].id, "id", "duplicate sample id in dataset");
    }
  }
  return samples;
}

}  // namespace symbolbench::bench
