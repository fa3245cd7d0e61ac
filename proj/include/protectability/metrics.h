//
// Copyright 2026 The Protectability Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef PROTECTABILITY_METRICS_H_
#define PROTECTABILITY_METRICS_H_

#include <Eigen/Core>
#include <string>
#include <vector>

#include "protectability/information.h"
#include "protectability/random.h"
#include "protectability/shapley.h"
#include "protectability/types.h"

namespace protectability {

// Child-stream indices for the pipeline random sources. Matching streams
// between the protectability and level-of-protection pipelines make the
// zero-strength scheme reproduce the clean run bit for bit.
inline constexpr uint64_t kStreamCalibration = 1;
inline constexpr uint64_t kStreamScheme = 2;
inline constexpr uint64_t kStreamEstimation = 3;

enum class SchemeKind { kGaussianNoise, kCalibratedNoise, kPrune, kQuantize };

// A perturbation applied feature-wise to a table.
//
//   gaussian:sigma=F    independent Gaussian noise, global or per-feature
//   calibrated:sigma=F  Gaussian noise with per-feature sigmas decreasing in
//                       private-contribution rank (resolve before applying)
//   prune:features=A,B  listed columns replaced by their column mean
//   quantize:levels=K   continuous columns snapped to K equal-width bin
//                       centers (levels=0 disables the scheme)
struct PerturbationScheme {
  SchemeKind kind = SchemeKind::kGaussianNoise;
  double sigma = 0.0;
  Eigen::VectorXd sigma_per_feature;  // resolved or explicit per-column
  std::vector<std::string> prune_names;
  int levels = 0;

  std::string Descriptor() const;
};

// Parses the descriptor grammar above; throws std::invalid_argument on
// malformed input (a usage error at the CLI).
PerturbationScheme ParseSchemeDescriptor(const std::string& text);

// Fills in the calibrated variant's per-feature sigmas: features are ranked
// by private contribution (descending, ties to the lower index) and feature
// at rank r gets sigma * (n - r) / n.
PerturbationScheme ResolveCalibration(const PerturbationScheme& scheme,
                                      const ContributionScores& private_scores);

// Returns a perturbed copy of the table. Noise is drawn column-major; a
// zero-sigma column is copied bit for bit. Discrete columns under Gaussian
// noise are noised in code space, rounded, and clamped to [0, cardinality).
FeatureTable ApplyScheme(const FeatureTable& table,
                         const PerturbationScheme& scheme, RandomSource& rng);

// Z_P: indices whose private contribution is <= epsilon (Z_D is the same
// selection over preserved contributions).
std::vector<int> SelectProtectable(const ContributionScores& private_scores,
                                   double epsilon);
std::vector<int> SelectProtected(const ContributionScores& preserved_private,
                                 double epsilon);

struct ScoreResult {
  double value = 0.0;
  bool degenerate = false;
};

// Selected-set task contribution over total task contribution. A total
// below tol in magnitude yields score 0 with the degenerate flag set.
ScoreResult PScore(const ContributionScores& task_scores,
                   const std::vector<int>& protectable, double tol);
ScoreResult LpScore(const ContributionScores& preserved_task,
                    const std::vector<int>& protected_set, double tol);

// Contribution pipeline (discretize -> game -> Shapley) for one target on a
// (possibly perturbed) table, with the config's estimator settings.
ContributionScores PreservedContributions(const FeatureTable& perturbed,
                                          const AttributeVector& target,
                                          const AnalysisConfig& config,
                                          const RandomSource& estimation_rng);

enum class ReportKind { kPScore, kLpScore };

struct ProtectabilityReport {
  ReportKind kind = ReportKind::kPScore;
  double score = 0.0;
  bool degenerate = false;
  std::vector<int> selected;  // Z_P or Z_D, ascending
  std::vector<std::string> feature_names;
  ContributionScores task_contributions;
  ContributionScores private_contributions;
  AnalysisConfig config;
  uint64_t seed = 0;
  std::string scheme_descriptor;  // empty for the plain P-score
};

// Privacy protectability estimation: contribution scores for both
// attributes (sharing one subset plan in the sampling modes), the
// protectable set, and the P-score.
ProtectabilityReport Ppe(const FeatureTable& table,
                         const AttributeVector& task,
                         const AttributeVector& private_attr,
                         const AnalysisConfig& config, uint64_t seed);

// Level-of-protection: the same pipeline over the perturbed table,
// selecting protected features and scoring preserved contributions.
ProtectabilityReport Lpe(const FeatureTable& table,
                         const AttributeVector& task,
                         const AttributeVector& private_attr,
                         const PerturbationScheme& scheme,
                         const AnalysisConfig& config, uint64_t seed);

// 0-1 accuracy of the full-feature conditional-frequency predictor,
// evaluated held-in. Argmax ties break to the lowest class.
double BayesAccuracy(const DiscretizedTable& disc,
                     const AttributeVector& target);

struct SchemeEval {
  std::string descriptor;
  double acc_task = 0.0;
  double acc_private = 0.0;
  double ep = 0.0;  // acc_task / max(acc_private, 1/cardinality)
};

struct EvalReport {
  std::vector<SchemeEval> schemes;
  double ep = 0.0;  // max over schemes
  AnalysisConfig config;
  uint64_t seed = 0;
};

// Empirical protection baseline over a set of schemes.
EvalReport EmpiricalProtection(const FeatureTable& table,
                               const AttributeVector& task,
                               const AttributeVector& private_attr,
                               const std::vector<PerturbationScheme>& schemes,
                               const AnalysisConfig& config, uint64_t seed);

}  // namespace protectability

#endif  // PROTECTABILITY_METRICS_H_
