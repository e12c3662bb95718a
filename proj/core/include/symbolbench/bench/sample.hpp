#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "symbolbench/dynamics/trajectory.hpp"
#include "symbolbench/expr/structure.hpp"
#include "symbolbench/metrics/scorecard.hpp"

namespace symbolbench::bench {

/// One benchmark instance. CDE and SCM samples carry a training trajectory
/// and optional holdout trajectories from new initial conditions; BN
/// samples carry transition orbits grouped by initial condition.
struct Sample {
  std::string id;
  metrics::TaskKind task = metrics::TaskKind::Cde;
  int dim = 1;
  std::string domain;
  std::vector<std::string> variables;
  int max_lag = 1;  // SCM only

  std::optional<dynamics::Trajectory> train;
  std::vector<dynamics::Trajectory> ood;

  std::vector<dynamics::BoolOrbit> train_orbits;
  std::vector<dynamics::BoolOrbit> ood_orbits;

  std::optional<expr::Structure> ground_truth;
  std::optional<std::vector<double>> truth_coefficients;  // dense, CDE only

  bool has_ood() const {
    return task == metrics::TaskKind::Bn ? !ood_orbits.empty() : !ood.empty();
  }

  /// Throws SampleError naming the offending field when any invariant is
  /// violated (dimension consistency, monotone times, binary orbits, ...).
  void validate() const;
};

class SampleError : public std::runtime_error {
 public:
  SampleError(const std::string& sample_id, const std::string& field,
              const std::string& what)
      : std::runtime_error("sample '" + sample_id + "' field '" + field + "': " + what),
        sample_id_(sample_id),
        field_(field) {}
  const std::string& sample_id() const { return sample_id_; }
  const std::string& field() const { return field_; }

 private:
  std::string sample_id_;
  std::string field_;
};

Sample load_sample_file(const std::filesystem::path& file);
void save_sample_file(const Sample& sample, const std::filesystem::path& file);

/// Loads every *.json file in the directory, sorted by sample id.
std::vector<Sample> load_dataset(const std::filesystem::path& dir);

}  // namespace symbolbench::bench
