// Shared test fixtures: scalar ODE benchmark systems (skeleton text, true
// parameters, paired initial values), the 4-d epidemic system, the 5-node
// cortical Boolean network, and helpers to synthesize Sample files.
#pragma once

#include <unistd.h>

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "symbolbench/bench/sample.hpp"
#include "symbolbench/dynamics/fit.hpp"
#include "symbolbench/dynamics/integrate.hpp"
#include "symbolbench/expr/parse.hpp"

namespace fixtures {

namespace sb = symbolbench;

struct ScalarOde {
  int id;
  const char* name;
  const char* skeleton;           // DSL with explicit placeholder indices
  std::vector<double> parameters; // dense by placeholder index
  double init_id;
  double init_ood;
};

// Scalar (1-d) benchmark systems; ids match the published collection.
inline const std::vector<ScalarOde>& scalar_odes() {
  static const std::vector<ScalarOde> table = {
      {1, "rc_circuit", "(c_0 - x_0/c_1)/c_2", {0.7, 1.2, 2.31}, 10.0, 3.54},
      {2, "population_growth", "c_0*x_0", {0.23}, 4.78, 0.87},
      {3, "logistic", "c_0*x_0*(1 - x_0/c_1)", {0.79, 74.3}, 7.3, 21.0},
      {4, "rc_nonlinear", "-0.5 + 1/(exp(c_0 - x_0/c_1) + 1)", {0.5, 0.96}, 0.8, 0.02},
      {5, "falling_object", "c_0 - c_1*x_0**2", {9.81, 0.0021175}, 0.5, 73.0},
      {6, "autocatalysis", "c_0*x_0 - c_1*x_0**2", {2.1, 0.5}, 0.13, 2.24},
      {7, "gompertz", "c_0*x_0*log(c_1*x_0)", {0.032, 2.29}, 1.73, 9.5},
      {8, "allee_logistic", "c_0*x_0*(-1 + x_0/c_2)*(1 - x_0/c_1)", {0.14, 130.0, 4.4},
       6.123, 2.1},
      {9, "language_death", "c_0*(1 - x_0) - c_1*x_0", {0.32, 0.28}, 0.14, 0.55},
      {10, "language_death_refined",
       "c_0*x_0**c_1*(1 - x_0) - x_0*(1 - c_0)*(1 - x_0)**c_1", {0.2, 1.2}, 0.83, 0.34},
      {11, "critical_slowdown", "-x_0**3", {}, 3.4, 1.6},
      {12, "laser_photons", "c_0*x_0 - c_1*x_0**2", {1.8, 0.1107}, 11.0, 1.3},
      {13, "bead_on_hoop", "c_0*(c_1*cos(x_0) - 1)*sin(x_0)", {0.0981, 9.7}, 3.1, 2.4},
      {14, "budworm", "c_0*x_0*(1 - x_0/c_1) - c_3*x_0**2/(c_2**2 + x_0**2)",
       {0.78, 81.0, 21.2, 0.9}, 2.76, 23.3},
      {15, "budworm_dimensionless", "c_0*x_0*(1 - x_0/c_1) - x_0**2/(x_0**2 + 1)",
       {0.4, 95.0}, 44.3, 4.5},
      {16, "landau", "c_0*x_0 - c_1*x_0**3 - c_2*x_0**5", {0.1, -0.04, 0.001}, 0.94, 1.65},
      {17, "logistic_harvest", "c_0*x_0*(1 - x_0/c_1) - c_2", {0.4, 100.0, 0.3}, 14.3, 34.2},
      {18, "logistic_harvest_improved", "c_0*x_0*(1 - x_0/c_1) - c_2*x_0/(c_3 + x_0)",
       {0.4, 100.0, 0.24, 50.0}, 21.1, 44.1},
      {19, "logistic_harvest_dimensionless", "-c_0*x_0/(c_1 + x_0) + x_0*(1 - x_0)",
       {0.08, 0.8}, 0.13, 0.03},
      {20, "gene_switch", "c_0 - c_1*x_0 + x_0**2/(x_0**2 + 1)", {0.1, 0.55}, 0.002, 0.25},
      {21, "sir_dead", "c_0 - c_1*x_0 - exp(-x_0)", {1.2, 0.2}, 0.0, 0.8},
      {22, "protein_hysteresis", "c_0 + c_1*x_0**5/(c_2 + x_0**5) - c_3*x_0",
       {1.4, 0.4, 123.0, 0.89}, 3.1, 6.3},
      {23, "driven_pendulum", "c_0 - sin(x_0)", {0.21}, -2.74, 1.65},
  };
  return table;
}

// 4-d epidemic system (susceptible/exposed/infected/recovered proportions).
struct Seir {
  const char* skeleton = "-c_1*x_0*x_2 | -c_0*x_1 + c_1*x_0*x_2 | c_0*x_1 - c_2*x_2 | c_2*x_2";
  std::vector<double> parameters{0.47, 0.28, 0.3};
  std::vector<double> init_id{0.6, 0.3, 0.09, 0.01};
  std::vector<double> init_ood{0.4, 0.3, 0.25, 0.05};
};

inline std::vector<std::string> cortical_rules() {
  return {
      "x1 = ( NOT ( x3 OR x5 ) OR NOT ( x5 OR x3 ) )",
      "x2 = ( x1 AND NOT ( ( x3 OR x5 ) OR x4 ) )",
      "x3 = ( ( x3 AND x5 ) AND NOT x2 )",
      "x4 = ( x5 AND NOT ( x2 OR x1 ) )",
      "x5 = ( x3 AND NOT x2 )",
  };
}

inline std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    out[static_cast<size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  }
  return out;
}

inline sb::dynamics::FittedModel true_model(const std::string& skeleton, int dim,
                                            const std::vector<double>& parameters) {
  sb::dynamics::FittedModel model;
  model.system = sb::expr::parse_algebraic(skeleton, dim);
  auto indices = sb::expr::placeholder_indices(model.system);
  model.slots.assign(indices.begin(), indices.end());
  for (int slot : model.slots) model.coefficients.push_back(parameters.at(static_cast<size_t>(slot)));
  model.converged = true;
  return model;
}

inline sb::dynamics::Trajectory simulate_truth(const std::string& skeleton, int dim,
                                               const std::vector<double>& parameters,
                                               const std::vector<double>& x0,
                                               const std::vector<double>& times) {
  return sb::dynamics::integrate_ode(true_model(skeleton, dim, parameters), x0, times);
}

inline sb::bench::Sample make_cde_sample(const ScalarOde& ode, double t_end = 10.0,
                                         int points = 256) {
  sb::bench::Sample s;
  s.id = std::string("ode_") + std::to_string(ode.id) + "_" + ode.name;
  s.task = sb::metrics::TaskKind::Cde;
  s.dim = 1;
  s.domain = ode.name;
  s.variables = {"x_0: state variable"};
  auto times = linspace(0.0, t_end, points);
  s.train = simulate_truth(ode.skeleton, 1, ode.parameters, {ode.init_id}, times);
  s.ood.push_back(simulate_truth(ode.skeleton, 1, ode.parameters, {ode.init_ood}, times));
  s.ground_truth = sb::expr::parse_algebraic(ode.skeleton, 1);
  s.truth_coefficients = ode.parameters;
  return s;
}

inline sb::bench::Sample make_bn_sample(const std::vector<std::string>& rules, int dim,
                                        int orbit_steps = 4) {
  sb::bench::Sample s;
  s.id = "bn_fixture";
  s.task = sb::metrics::TaskKind::Bn;
  s.dim = dim;
  s.domain = "regulatory network";
  auto net = sb::expr::parse_boolean(rules, dim);
  s.ground_truth = net;
  for (std::uint32_t a = 0; a < (1u << dim); ++a) {
    std::vector<std::uint8_t> init(static_cast<size_t>(dim));
    for (int j = 0; j < dim; ++j) init[static_cast<size_t>(j)] = (a >> j) & 1u;
    auto orbits = sb::dynamics::simulate_boolean(net, {init}, orbit_steps);
    if (a % 2 == 0) {
      s.train_orbits.push_back(orbits.front());
    } else {
      s.ood_orbits.push_back(orbits.front());
    }
  }
  return s;
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            (tag + "_" + std::to_string(rd()) + "_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace fixtures
