#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "symbolbench/expr/structure.hpp"
#include "symbolbench/metrics/scorecard.hpp"

namespace symbolbench::loop {

enum class Origin { Llm, Gp, Seed };

const char* origin_name(Origin origin);
std::optional<Origin> origin_from_name(const std::string& name);

/// A verified proposal as stored in the history pool.
struct Candidate {
  expr::Structure structure;
  std::string key;  // canonical dedup key, consistent with structure
  std::string reasoning;
  metrics::ScoreCard scores;
  std::optional<std::vector<double>> coefficients;  // fitted, dense (CDE only)
  int epoch = 0;
  Origin origin = Origin::Llm;
};

/// Insertion-ordered candidate store with canonical-key deduplication.
class HistoryPool {
 public:
  /// Returns false (and keeps the existing entry) when the key is already
  /// present.
  bool insert(Candidate candidate);

  bool contains(const std::string& key) const;
  size_t size() const { return candidates_.size(); }
  bool empty() const { return candidates_.empty(); }
  const std::vector<Candidate>& all() const { return candidates_; }

  /// Top-k non-failed candidates by ranking value; ties broken by lower
  /// complexity, then earlier epoch. Fewer than k returns all. An optional
  /// rubric weight mixes the mean rubric score into the ranking.
  std::vector<const Candidate*> select_context(int k, bool ci_lower_is_better,
                                               double rubric_weight = 0.0) const;

  /// Best candidate by the same ordering; nullptr when the pool has no
  /// scored candidate.
  const Candidate* best(bool ci_lower_is_better, double rubric_weight = 0.0) const;

 private:
  std::vector<Candidate> candidates_;
  std::unordered_map<std::string, size_t> index_;
};

}  // namespace symbolbench::loop
