#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "symbolbench/expr/alg_ast.hpp"
#include "symbolbench/expr/bool_ast.hpp"
#include "symbolbench/expr/measures.hpp"

namespace symbolbench::gp {

struct GpConfig {
  int population = 200;
  int generations = 50;
  int tournament = 3;
  double p_crossover = 0.9;
  double p_mutation = 0.3;
  int depth_cap = 8;
  double parsimony = 0.005;     // complexity pressure on the combined score
  double judge_weight = 0.0;    // 0 disables LLM-as-Judge integration
  int result_top_k = 5;         // candidates handed back to the caller
  std::uint64_t seed = 0;
  // Optional early exit once the best fitness reaches this value.
  double stop_fitness = std::numeric_limits<double>::infinity();
  bool use_functions = false;   // allow sin/cos/exp/log in random algebraic trees

  void validate() const;
};

template <typename S>
struct Individual {
  S structure;
  std::string key;
  int complexity = 0;
  double fitness = -std::numeric_limits<double>::infinity();
  bool failed = false;
  std::optional<double> judge;  // mean rubric score when judged
  int age = 0;                  // generation of origin
};

template <typename S>
struct Seed {
  S structure;
  double score = 0.0;  // used only to rank seeds when they overflow the population
};

struct GenerationStats {
  int generation = 0;
  double best_fitness = 0.0;
  double best_combined = 0.0;
  double mean_fitness = 0.0;
  int distinct_evaluated = 0;
};

template <typename S>
struct EvolveResult {
  std::vector<Individual<S>> top;  // top-k by combined score, distinct keys
  Individual<S> best;              // best by raw fitness
  std::vector<GenerationStats> stats;
  int generations_run = 0;
};

/// fitness: higher is better; nullopt flags a structurally invalid candidate
/// (never selected, never elite). judge: mean rubric score in [1, 5].
template <typename S>
using FitnessFn = std::function<std::optional<double>(const S&)>;
template <typename S>
using JudgeFn = std::function<std::optional<double>(const S&)>;

int tree_depth(const expr::AlgExpr& node);
int tree_depth(const expr::BoolExpr& node);
int tree_depth(const expr::AlgebraicSystem& system);
int tree_depth(const expr::BooleanNetwork& net);

/// Genetic operators over algebraic systems: ramped random generation,
/// mutation (subtree replacement, relabel, placeholder insertion/removal)
/// and same-equation subtree crossover. All results are normalized,
/// renumbered and inside the depth cap; infeasible edits fall back to
/// no-ops.
struct AlgTreeOps {
  using Structure = expr::AlgebraicSystem;
  int dim = 1;
  bool use_functions = false;

  Structure random_structure(std::mt19937_64& rng, int target_depth, bool full) const;
  Structure mutate(const Structure& parent, std::mt19937_64& rng, int depth_cap) const;
  std::pair<Structure, Structure> crossover(const Structure& a, const Structure& b,
                                            std::mt19937_64& rng, int depth_cap) const;
  std::string key(const Structure& s) const { return expr::canonical_key(s); }
  int complexity(const Structure& s) const { return expr::complexity(s); }
};

/// Same machinery over Boolean networks with {AND, OR, NOT} primitives and
/// no coefficient handling; NOT insertion/removal replaces placeholder
/// insertion/removal.
struct BoolTreeOps {
  using Structure = expr::BooleanNetwork;
  int dim = 1;

  Structure random_structure(std::mt19937_64& rng, int target_depth, bool full) const;
  Structure mutate(const Structure& parent, std::mt19937_64& rng, int depth_cap) const;
  std::pair<Structure, Structure> crossover(const Structure& a, const Structure& b,
                                            std::mt19937_64& rng, int depth_cap) const;
  std::string key(const Structure& s) const { return expr::canonical_key(s); }
  int complexity(const Structure& s) const { return expr::complexity(s); }
};

/// Generational engine: tournament selection on
///   combined = fitness - parsimony * complexity + judge_weight * judge,
/// elitism of one, deduplicated seeding, optional judging of tournament
/// winners (cached by canonical key). Deterministic for a fixed seed and a
/// deterministic fitness function; with judge_weight = 0 the run never
/// consults the judge and is bit-identical to pure GP.
template <typename Ops>
class Engine {
 public:
  using Structure = typename Ops::Structure;
  using Ind = Individual<Structure>;

  Engine(Ops ops, GpConfig cfg) : ops_(std::move(ops)), cfg_(cfg) { cfg_.validate(); }

  const GpConfig& config() const { return cfg_; }

  Ind make_individual(Structure s, int age = 0) const {
    Ind ind;
    ind.key = ops_.key(s);
    ind.complexity = ops_.complexity(s);
    ind.structure = std::move(s);
    ind.age = age;
    return ind;
  }

  /// Seeds first (deduplicated; ranked by seed score when they overflow),
  /// then ramped half-and-half random fill with distinct keys.
  std::vector<Ind> init_population(const std::vector<Seed<Structure>>& seeds,
                                   std::mt19937_64& rng) const {
    std::vector<Ind> population;
    population.reserve(cfg_.population);
    std::unordered_map<std::string, bool> taken;

    std::vector<const Seed<Structure>*> ordered;
    ordered.reserve(seeds.size());
    for (const auto& seed : seeds) ordered.push_back(&seed);
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const auto* a, const auto* b) { return a->score > b->score; });

    for (const auto* seed : ordered) {
      if (static_cast<int>(population.size()) >= cfg_.population) break;
      Ind ind = make_individual(seed->structure);
      if (taken.emplace(ind.key, true).second) population.push_back(std::move(ind));
    }

    const int max_init_depth = std::max(2, std::min(cfg_.depth_cap, 6));
    int ramp = 2;
    bool full = false;
    int attempts = 0;
    while (static_cast<int>(population.size()) < cfg_.population) {
      Structure s = ops_.random_structure(rng, ramp, full);
      Ind ind = make_individual(std::move(s));
      // Keys stay distinct unless the space is tiny.
      if (taken.emplace(ind.key, true).second || ++attempts > 64 * cfg_.population) {
        population.push_back(std::move(ind));
        ramp = ramp >= max_init_depth ? 2 : ramp + 1;
        full = !full;
      }
    }
    return population;
  }

  EvolveResult<Structure> evolve(const std::vector<Seed<Structure>>& seeds,
                                 const FitnessFn<Structure>& fitness,
                                 const JudgeFn<Structure>& judge = nullptr) {
    std::mt19937_64 rng(cfg_.seed);
    std::vector<Ind> population = init_population(seeds, rng);

    fitness_cache_.clear();
    judge_cache_.clear();
    for (auto& ind : population) evaluate(ind, fitness);

    EvolveResult<Structure> result;
    result.stats.push_back(snapshot(population, 0));

    int gen = 0;
    for (; gen < cfg_.generations; ++gen) {
      if (best_fitness(population) >= cfg_.stop_fitness) break;

      std::vector<Ind> next;
      next.reserve(cfg_.population);
      next.push_back(population[elite_index(population)]);

      std::uniform_real_distribution<double> coin(0.0, 1.0);
      while (static_cast<int>(next.size()) < cfg_.population) {
        std::vector<Structure> children;
        if (population.size() >= 2 && coin(rng) < cfg_.p_crossover) {
          const Ind& pa = tournament(population, rng, judge);
          const Ind& pb = tournament(population, rng, judge);
          auto [ca, cb] = ops_.crossover(pa.structure, pb.structure, rng, cfg_.depth_cap);
          children.push_back(std::move(ca));
          children.push_back(std::move(cb));
        } else {
          children.push_back(tournament(population, rng, judge).structure);
        }
        for (auto& child : children) {
          if (static_cast<int>(next.size()) >= cfg_.population) break;
          if (coin(rng) < cfg_.p_mutation) {
            child = ops_.mutate(child, rng, cfg_.depth_cap);
          }
          Ind ind = make_individual(std::move(child), gen + 1);
          evaluate(ind, fitness);
          next.push_back(std::move(ind));
        }
      }
      population = std::move(next);
      result.stats.push_back(snapshot(population, gen + 1));
    }

    result.generations_run = gen;
    result.best = population[best_fitness_index(population)];
    result.top = select_top(population);
    return result;
  }

 private:
  void evaluate(Ind& ind, const FitnessFn<Structure>& fitness) {
    auto it = fitness_cache_.find(ind.key);
    std::optional<double> value;
    if (it != fitness_cache_.end()) {
      value = it->second;
    } else {
      value = fitness(ind.structure);
      fitness_cache_.emplace(ind.key, value);
    }
    if (value) {
      ind.fitness = *value;
      ind.failed = false;
    } else {
      ind.fitness = -std::numeric_limits<double>::infinity();
      ind.failed = true;
    }
  }

  double combined(const Ind& ind) const {
    if (ind.failed) return -std::numeric_limits<double>::infinity();
    double score = ind.fitness - cfg_.parsimony * ind.complexity;
    if (ind.judge) score += cfg_.judge_weight * *ind.judge;
    return score;
  }

  Ind& tournament(std::vector<Ind>& population, std::mt19937_64& rng,
                  const JudgeFn<Structure>& judge) {
    std::uniform_int_distribution<size_t> pick(0, population.size() - 1);
    size_t best = pick(rng);
    for (int i = 1; i < cfg_.tournament; ++i) {
      size_t other = pick(rng);
      if (combined(population[other]) > combined(population[best])) best = other;
    }
    Ind& winner = population[best];
    if (cfg_.judge_weight > 0.0 && judge && !winner.judge && !winner.failed) {
      auto it = judge_cache_.find(winner.key);
      if (it == judge_cache_.end()) {
        it = judge_cache_.emplace(winner.key, judge(winner.structure)).first;
      }
      winner.judge = it->second;
    }
    return winner;
  }

  size_t elite_index(const std::vector<Ind>& population) const {
    size_t best = 0;
    for (size_t i = 1; i < population.size(); ++i) {
      if (combined(population[i]) > combined(population[best])) best = i;
    }
    return best;
  }

  size_t best_fitness_index(const std::vector<Ind>& population) const {
    size_t best = 0;
    for (size_t i = 1; i < population.size(); ++i) {
      if (population[i].fitness > population[best].fitness) best = i;
    }
    return best;
  }

  double best_fitness(const std::vector<Ind>& population) const {
    return population[best_fitness_index(population)].fitness;
  }

  GenerationStats snapshot(const std::vector<Ind>& population, int gen) const {
    GenerationStats s;
    s.generation = gen;
    s.best_fitness = -std::numeric_limits<double>::infinity();
    s.best_combined = -std::numeric_limits<double>::infinity();
    double total = 0.0;
    int alive = 0;
    for (const auto& ind : population) {
      s.best_fitness = std::max(s.best_fitness, ind.fitness);
      s.best_combined = std::max(s.best_combined, combined(ind));
      if (!ind.failed) {
        total += ind.fitness;
        ++alive;
      }
    }
    s.mean_fitness = alive > 0 ? total / alive : 0.0;
    s.distinct_evaluated = static_cast<int>(fitness_cache_.size());
    return s;
  }

  std::vector<Ind> select_top(const std::vector<Ind>& population) const {
    std::vector<const Ind*> sorted;
    sorted.reserve(population.size());
    for (const auto& ind : population) sorted.push_back(&ind);
    std::stable_sort(sorted.begin(), sorted.end(), [this](const Ind* a, const Ind* b) {
      return combined(*a) > combined(*b);
    });
    std::vector<Ind> top;
    std::unordered_map<std::string, bool> seen;
    for (const Ind* ind : sorted) {
      if (static_cast<int>(top.size()) >= cfg_.result_top_k) break;
      if (ind->failed) continue;
      if (seen.emplace(ind->key, true).second) top.push_back(*ind);
    }
    return top;
  }

  Ops ops_;
  GpConfig cfg_;
  std::unordered_map<std::string, std::optional<double>> fitness_cache_;
  std::unordered_map<std::string, std::optional<double>> judge_cache_;
};

using AlgEngine = Engine<AlgTreeOps>;
using BoolEngine = Engine<BoolTreeOps>;

}  // namespace symbolbench::gp
