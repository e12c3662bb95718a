#include "symbolbench/bench/verify.hpp"

#include <cmath>

#include "symbolbench/dynamics/boolean_sim.hpp"
#include "symbolbench/expr/tree_distance.hpp"
#include "symbolbench/metrics/graph_metrics.hpp"
#include "symbolbench/metrics/partial_correlation.hpp"
#include "symbolbench/metrics/scores.hpp"

namespace symbolbench::bench {

using loop::Candidate;
using metrics::ScoreCard;
using metrics::TaskKind;

namespace {

// Scores a CDE model by integrating over the trajectory's grid from its
// first row. Returns nullopt on integration failure or poisoned R^2.
std::optional<double> integrated_r2(const dynamics::FittedModel& model,
                                    const dynamics::Trajectory& reference,
                                    const VerifyConfig& cfg) {
  try {
    dynamics::Trajectory pred =
        dynamics::integrate_ode(model, reference.values.front(), reference.times,
                                cfg.integrate);
    return metrics::r_squared(reference, pred);
  } catch (const dynamics::IntegrationError&) {
    return std::nullopt;
  }
}

// Free-run transition rows: states 1..end of simulated vs observed orbits.
void collect_transitions(const expr::BooleanNetwork& net,
                         const std::vector<dynamics::BoolOrbit>& orbits,
                         std::vector<std::vector<std::uint8_t>>& truth_rows,
                         std::vector<std::vector<std::uint8_t>>& pred_rows) {
  for (const auto& orbit : orbits) {
    const int steps = static_cast<int>(orbit.size()) - 1;
    auto sim = dynamics::simulate_boolean(net, {orbit.front()}, steps);
    for (int t = 1; t <= steps; ++t) {
      truth_rows.push_back(orbit[static_cast<size_t>(t)]);
      pred_rows.push_back(sim.front()[static_cast<size_t>(t)]);
    }
  }
}

}  // namespace

std::optional<int> symbolic_proximity(const expr::Structure& structure,
                                      const Sample& sample) {
  if (!sample.ground_truth) return std::nullopt;
  if (const auto* sys = std::get_if<expr::AlgebraicSystem>(&structure)) {
    if (const auto* truth = std::get_if<expr::AlgebraicSystem>(&*sample.ground_truth)) {
      return expr::tree_edit_distance(*sys, *truth);
    }
  } else if (const auto* net = std::get_if<expr::BooleanNetwork>(&structure)) {
    if (const auto* truth = std::get_if<expr::BooleanNetwork>(&*sample.ground_truth)) {
      return expr::tree_edit_distance(*net, *truth);
    }
  } else if (const auto* graph = std::get_if<expr::ScmGraph>(&structure)) {
    if (const auto* truth = std::get_if<expr::ScmGraph>(&*sample.ground_truth)) {
      return metrics::scm_edge_metrics(*graph, *truth).shd;
    }
  }
  return std::nullopt;
}

Candidate verify_candidate(const expr::Structure& structure, const Sample& sample,
                           const VerifyConfig& cfg, int epoch, loop::Origin origin,
                           std::string reasoning) {
  Candidate out;
  out.structure = structure;
  out.key = expr::canonical_key(structure);
  out.reasoning = std::move(reasoning);
  out.epoch = epoch;
  out.origin = origin;

  ScoreCard card;
  card.task = sample.task;
  card.complexity = expr::structure_complexity(structure);
  card.failed = true;

  switch (sample.task) {
    case TaskKind::Cde: {
      const auto* sys = std::get_if<expr::AlgebraicSystem>(&structure);
      if (!sys || !sample.train) break;
      try {
        dynamics::FittedModel model = dynamics::fit_coefficients(*sys, *sample.train, cfg.fit);
        out.coefficients = model.dense_coefficients();
        if (auto r2 = integrated_r2(model, *sample.train, cfg)) {
          card.primary = *r2;
          card.failed = false;
        }
      } catch (const dynamics::FitError&) {
        // structurally invalid candidate; keep the failure sentinel
      }
      break;
    }
    case TaskKind::Bn: {
      const auto* net = std::get_if<expr::BooleanNetwork>(&structure);
      if (!net || net->dim != sample.dim) break;
      std::vector<std::vector<std::uint8_t>> truth_rows, pred_rows;
      collect_transitions(*net, sample.train_orbits, truth_rows, pred_rows);
      card.primary = metrics::bn_transition_scores(truth_rows, pred_rows).macro_f1;
      card.failed = false;
      break;
    }
    case TaskKind::Scm: {
      const auto* graph = std::get_if<expr::ScmGraph>(&structure);
      if (!graph || !sample.train) break;
      if (auto score = metrics::ci_score(*graph, *sample.train)) {
        card.primary = *score;
        card.failed = false;
      }
      break;
    }
  }

  card.symbolic_proximity = symbolic_proximity(structure, sample);
  out.scores = card;
  return out;
}

metrics::ScoreCard evaluate_ood(const Candidate& candidate, const Sample& sample,
                                const VerifyConfig& cfg) {
  if (!sample.has_ood()) {
    throw std::invalid_argument("evaluate_ood: sample has no holdout data");
  }

  ScoreCard card;
  card.task = sample.task;
  card.complexity = candidate.scores.complexity;
  card.symbolic_proximity = candidate.scores.symbolic_proximity;
  card.failed = true;

  switch (sample.task) {
    case TaskKind::Cde: {
      const auto* sys = std::get_if<expr::AlgebraicSystem>(&candidate.structure);
      if (!sys || !candidate.coefficients) break;
      // Reuse the fitted coefficients verbatim; holdout scoring never refits.
      dynamics::FittedModel model;
      model.system = *sys;
      auto indices = expr::placeholder_indices(*sys);
      model.slots.assign(indices.begin(), indices.end());
      for (int slot : model.slots) {
        model.coefficients.push_back(
            slot < static_cast<int>(candidate.coefficients->size())
                ? (*candidate.coefficients)[slot]
                : 0.0);
      }
      double total = 0.0;
      int scored = 0;
      for (const auto& holdout : sample.ood) {
        if (auto r2 = integrated_r2(model, holdout, cfg)) {
          total += *r2;
          ++scored;
        }
      }
      if (scored == static_cast<int>(sample.ood.size())) {
        card.primary = total / scored;
        card.failed = false;
      }
      break;
    }
    case TaskKind::Bn: {
      const auto* net = std::get_if<expr::BooleanNetwork>(&candidate.structure);
      if (!net) break;
      std::vector<std::vector<std::uint8_t>> truth_rows, pred_rows;
      collect_transitions(*net, sample.ood_orbits, truth_rows, pred_rows);
      card.primary = metrics::bn_transition_scores(truth_rows, pred_rows).macro_f1;
      card.failed = false;
      break;
    }
    case TaskKind::Scm: {
      const auto* graph = std::get_if<expr::ScmGraph>(&candidate.structure);
      if (!graph) break;
      double total = 0.0;
      int scored = 0;
      for (const auto& holdout : sample.ood) {
        if (auto score = metrics::ci_score(*graph, holdout)) {
          total += *score;
          ++scored;
        }
      }
      if (scored == static_cast<int>(sample.ood.size())) {
        card.primary = total / scored;
        card.failed = false;
      }
      break;
    }
  }
  return card;
}

}  // namespace symbolbench::bench
