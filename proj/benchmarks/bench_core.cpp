#include <benchmark/benchmark.h>

#include <random>

#include "support/fixtures.hpp"
#include "symbolbench/dynamics/derivatives.hpp"
#include "symbolbench/dynamics/fit.hpp"
#include "symbolbench/dynamics/integrate.hpp"
#include "symbolbench/expr/measures.hpp"
#include "symbolbench/expr/parse.hpp"
#include "symbolbench/expr/tree_distance.hpp"

namespace sb = symbolbench;

namespace {

const char* kSystem4d =
    "-c*x_0*x_1 - c*x_0*x_2 + c*x_0 | c*x_0*x_1 + c*x_0*x_2 - c*x_1 | "
    "c*x_1 - c*x_2 - c*x_3 | -c*x_0 + c*x_2 + c*x_3";

void BM_ParseAlgebraic(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(sb::expr::parse_algebraic(kSystem4d, 4));
  }
}
BENCHMARK(BM_ParseAlgebraic);

void BM_CanonicalKey(benchmark::State& state) {
  auto sys = sb::expr::parse_algebraic(kSystem4d, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sb::expr::canonical_key(sys));
  }
}
BENCHMARK(BM_CanonicalKey);

void BM_Complexity(benchmark::State& state) {
  auto sys = sb::expr::parse_algebraic(kSystem4d, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sb::expr::complexity(sys));
  }
}
BENCHMARK(BM_Complexity);

void BM_TreeEditDistance(benchmark::State& state) {
  auto a = sb::expr::parse_algebraic(kSystem4d, 4);
  auto b = sb::expr::parse_algebraic(
      "c*x_0*x_1 - c*x_2 | c*x_1*x_2 - c*x_3 | -c*x_0*x_1 + c*x_2 | "
      "c*x_0 - c*x_1 + c*x_3", 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sb::expr::tree_edit_distance(a, b));
  }
}
BENCHMARK(BM_TreeEditDistance);

void BM_EstimateDerivatives(benchmark::State& state) {
  const auto& ode = fixtures::scalar_odes()[1];  // exponential growth
  auto traj = fixtures::simulate_truth(ode.skeleton, 1, ode.parameters, {ode.init_id},
                                       fixtures::linspace(0.0, 10.0, 256));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sb::dynamics::estimate_derivatives(traj));
  }
}
BENCHMARK(BM_EstimateDerivatives);

void BM_FitLinearSkeleton(benchmark::State& state) {
  const auto& ode = fixtures::scalar_odes()[1];
  auto traj = fixtures::simulate_truth(ode.skeleton, 1, ode.parameters, {ode.init_id},
                                       fixtures::linspace(0.0, 10.0, 256));
  auto skeleton = sb::expr::parse_algebraic("c*x_0", 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sb::dynamics::fit_coefficients(skeleton, traj));
  }
}
BENCHMARK(BM_FitLinearSkeleton);

void BM_FitNonlinearSkeleton(benchmark::State& state) {
  const auto& ode = fixtures::scalar_odes()[2];  // logistic
  auto traj = fixtures::simulate_truth(ode.skeleton, 1, ode.parameters, {ode.init_id},
                                       fixtures::linspace(0.0, 10.0, 256));
  auto skeleton = sb::expr::parse_algebraic("c*x_0*(1 - x_0/c)", 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sb::dynamics::fit_coefficients(skeleton, traj));
  }
}
BENCHMARK(BM_FitNonlinearSkeleton);

void BM_IntegrateSeir(benchmark::State& state) {
  fixtures::Seir seir;
  auto model = fixtures::true_model(seir.skeleton, 4, seir.parameters);
  auto times = fixtures::linspace(0.0, 40.0, 400);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sb::dynamics::integrate_ode(model, seir.init_id, times));
  }
}
BENCHMARK(BM_IntegrateSeir);

}  // namespace

BENCHMARK_MAIN();
