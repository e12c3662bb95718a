// Internal JSON (de)serialization for candidates and score cards, shared by
// the loop checkpointing and the results store. Not installed.
#pragma once

#include <nlohmann/json.hpp>

#include "symbolbench/expr/parse.hpp"
#include "symbolbench/expr/structure.hpp"
#include "symbolbench/loop/candidate.hpp"
#include "symbolbench/metrics/scorecard.hpp"

namespace symbolbench::detail {

using nlohmann::json;

inline json structure_to_json(const expr::Structure& s) {
  if (const auto* sys = std::get_if<expr::AlgebraicSystem>(&s)) {
    return json{{"eq", expr::to_string(*sys)}};
  }
  if (const auto* net = std::get_if<expr::BooleanNetwork>(&s)) {
    return json{{"rules", expr::to_rule_lines(*net)}};
  }
  const auto& graph = std::get<expr::ScmGraph>(s);
  json edges = json::array();
  for (const auto& e : graph.edges) edges.push_back({e.source, e.lag, e.target});
  return json{{"edges", std::move(edges)}, {"max_lag", graph.max_lag}};
}

inline expr::Structure structure_from_json(const json& j, metrics::TaskKind task,
                                           int dim, int max_lag) {
  switch (task) {
    case metrics::TaskKind::Cde:
      return expr::parse_algebraic(j.at("eq").get<std::string>(), dim);
    case metrics::TaskKind::Bn:
      return expr::parse_boolean(j.at("rules").get<std::vector<std::string>>(), dim);
    case metrics::TaskKind::Scm: {
      expr::ScmGraph graph;
      graph.dim = dim;
      graph.max_lag = j.value("max_lag", max_lag);
      for (const auto& e : j.at("edges")) {
        graph.edges.insert({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<int>()});
      }
      graph.validate();
      return graph;
    }
  }
  throw std::invalid_argument("structure_from_json: unknown task");
}

inline json scorecard_to_json(const metrics::ScoreCard& card) {
  json j{{"task", metrics::task_name(card.task)},
         {"primary", card.primary},
         {"failed", card.failed},
         {"complexity", card.complexity}};
  if (card.symbolic_proximity) j["symbolic_proximity"] = *card.symbolic_proximity;
  if (card.rubric) {
    j["rubric"] = {{"context_alignment", card.rubric->context_alignment},
                   {"scientific_plausibility", card.rubric->scientific_plausibility},
                   {"conciseness_clarity", card.rubric->conciseness_clarity},
                   {"logical_coherence", card.rubric->logical_coherence},
                   {"clamped", card.rubric->clamped}};
  }
  return j;
}

inline metrics::ScoreCard scorecard_from_json(const json& j) {
  metrics::ScoreCard card;
  card.task = metrics::task_from_name(j.at("task").get<std::string>())
                  .value_or(metrics::TaskKind::Cde);
  card.primary = j.value("primary", 0.0);
  card.failed = j.value("failed", false);
  card.complexity = j.value("complexity", 0);
  if (j.contains("symbolic_proximity")) {
    card.symbolic_proximity = j["symbolic_proximity"].get<int>();
  }
  if (j.contains("rubric")) {
    metrics::Rubric r;
    r.context_alignment = j["rubric"].value("context_alignment", 0);
    r.scientific_plausibility = j["rubric"].value("scientific_plausibility", 0);
    r.conciseness_clarity = j["rubric"].value("conciseness_clarity", 0);
    r.logical_coherence = j["rubric"].value("logical_coherence", 0);
    r.clamped = j["rubric"].value("clamped", false);
    card.rubric = r;
  }
  return card;
}

inline json candidate_to_json(const loop::Candidate& c) {
  json j{{"structure", structure_to_json(c.structure)},
         {"scores", scorecard_to_json(c.scores)},
         {"epoch", c.epoch},
         {"origin", loop::origin_name(c.origin)}};
  if (!c.reasoning.empty()) j["reasoning"] = c.reasoning;
  if (c.coefficients) j["coefficients"] = *c.coefficients;
  return j;
}

inline loop::Candidate candidate_from_json(const json& j, metrics::TaskKind task,
                                           int dim, int max_lag) {
  loop::Candidate c;
  c.structure = structure_from_json(j.at("structure"), task, dim, max_lag);
  c.key = expr::canonical_key(c.structure);
  c.scores = scorecard_from_json(j.at("scores"));
  c.epoch = j.value("epoch", 0);
  c.origin = loop::origin_from_name(j.value("origin", "llm")).value_or(loop::Origin::Llm);
  c.reasoning = j.value("reasoning", std::string());
  if (j.contains("coefficients")) {
    c.coefficients = j["coefficients"].get<std::vector<double>>();
  }
  return c;
}

}  // namespace symbolbench::detail
