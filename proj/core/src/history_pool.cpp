#include "symbolbench/loop/candidate.hpp"

#include <algorithm>

#include "symbolbench/metrics/scores.hpp"

namespace symbolbench::loop {

const char* origin_name(Origin origin) {
  switch (origin) {
    case Origin::Llm: return "llm";
    case Origin::Gp: return "gp";
    case Origin::Seed: return "seed";
  }
  return "?";
}

std::optional<Origin> origin_from_name(const std::string& name) {
  if (name == "llm") return Origin::Llm;
  if (name == "gp") return Origin::Gp;
  if (name == "seed") return Origin::Seed;
  return std::nullopt;
}

bool HistoryPool::insert(Candidate candidate) {
  auto [it, inserted] = index_.try_emplace(candidate.key, candidates_.size());
  if (!inserted) return false;
  candidates_.push_back(std::move(candidate));
  return true;
}

bool HistoryPool::contains(const std::string& key) const {
  return index_.find(key) != index_.end();
}

namespace {

double context_rank(const Candidate& c, bool ci_lower_is_better, double rubric_weight) {
  double value = metrics::ranking_value(c.scores, ci_lower_is_better);
  if (rubric_weight > 0.0 && c.scores.rubric) {
    value += rubric_weight * c.scores.rubric->mean();
  }
  return value;
}

}  // namespace

std::vector<const Candidate*> HistoryPool::select_context(int k, bool ci_lower_is_better,
                                                          double rubric_weight) const {
  std::vector<const Candidate*> scored;
  scored.reserve(candidates_.size());
  for (const auto& c : candidates_) {
    if (!c.scores.failed) scored.push_back(&c);
  }
  std::stable_sort(scored.begin(), scored.end(),
                   [&](const Candidate* a, const Candidate* b) {
                     const double ra = context_rank(*a, ci_lower_is_better, rubric_weight);
                     const double rb = context_rank(*b, ci_lower_is_better, rubric_weight);
                     if (ra != rb) return ra > rb;
                     if (a->scores.complexity != b->scores.complexity) {
                       return a->scores.complexity < b->scores.complexity;
                     }
                     return a->epoch < b->epoch;
                   });
  if (k >= 0 && static_cast<int>(scored.size()) > k) scored.resize(static_cast<size_t>(k));
  return scored;
}

const Candidate* HistoryPool::best(bool ci_lower_is_better, double rubric_weight) const {
  auto top = select_context(1, ci_lower_is_better, rubric_weight);
  return top.empty() ? nullptr : top.front();
}

}  // namespace symbolbench::loop
