#pragma once

#include "symbolbench/bench/sample.hpp"
#include "symbolbench/dynamics/fit.hpp"
#include "symbolbench/dynamics/integrate.hpp"
#include "symbolbench/loop/candidate.hpp"

namespace symbolbench::bench {

struct VerifyConfig {
  dynamics::FitConfig fit;
  dynamics::IntegrateConfig integrate;
  bool ci_lower_is_better = true;
};

/// Quantitative verification of a structure against a sample's training
/// data. CDE candidates are coefficient-fitted in derivative space, then
/// re-integrated from the training initial state and scored with R^2; BN
/// candidates are simulated from each orbit's initial state and scored with
/// the transition macro-F1; SCM candidates are scored with the CI-score.
/// Failures (unfittable or non-integrable structures, empty edge sets) come
/// back with the failure flag set rather than as exceptions. Symbolic
/// proximity is filled in when the sample carries ground truth.
loop::Candidate verify_candidate(const expr::Structure& structure, const Sample& sample,
                                 const VerifyConfig& cfg, int epoch = 0,
                                 loop::Origin origin = loop::Origin::Llm,
                                 std::string reasoning = "");

/// Holdout scoring of an already-verified candidate: CDE models are
/// re-integrated from the holdout initial conditions without refitting
/// (the stored coefficients are reused); BN networks are simulated from the
/// holdout initial states; SCM graphs are re-scored on the holdout
/// trajectory. Scores are averaged over the sample's holdout sets.
/// Requires sample.has_ood().
metrics::ScoreCard evaluate_ood(const loop::Candidate& candidate, const Sample& sample,
                                const VerifyConfig& cfg);

/// Tree edit distance to the sample's ground truth (SHD for graphs);
/// nullopt when the sample has no ground truth or the kinds differ.
std::optional<int> symbolic_proximity(const expr::Structure& structure,
                                      const Sample& sample);

}  // namespace symbolbench::bench
