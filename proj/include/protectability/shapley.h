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

#ifndef PROTECTABILITY_SHAPLEY_H_
#define PROTECTABILITY_SHAPLEY_H_

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "protectability/power.h"
#include "protectability/random.h"
#include "protectability/types.h"

namespace protectability {

// Per-feature contribution scores for one target attribute, in bits, with
// estimator provenance. std_errors is empty in exact mode.
struct ContributionScores {
  Eigen::VectorXd values;
  Eigen::VectorXd std_errors;
  SamplerMode sampler = SamplerMode::kExact;
  int m_samples = 0;  // 0 in exact mode
  uint64_t seed = 0;  // unused in exact mode
};

// Coalition weight |S|!(n-|S|-1)!/n! computed from an exact 64-bit binomial
// (no naive factorials), valid for n <= 64. Requires 0 <= subset_size < n.
double ShapleyWeight(int subset_size, int n);

// Inserts a zero bit at the focal position, turning a coalition over the
// n-1 non-focal features into a full-width subset mask.
uint64_t ExpandMask(uint64_t compressed, int focal);

// Exhaustive Shapley values: C(z_i) = sum over S of w_S * mu(z_i, S) with
// all 2^(n-1) coalitions enumerated per feature (ascending compressed-mask
// order). Refuses games wider than exact_limit; use the Monte Carlo sampler
// for those.
ContributionScores ExactContributions(const CoalitionGame& game,
                                      int exact_limit = 16, int threads = 1);

// A reproducible set of sampled coalitions: draws[i] holds m full-width
// masks over Z\{z_i}. Drawing is per-feature (child stream i), so plans are
// identical regardless of how the evaluation is scheduled.
struct SubsetPlan {
  int n_features = 0;
  SamplerMode mode = SamplerMode::kUnbiased;
  int m_samples = 0;
  uint64_t seed = 0;
  std::vector<std::vector<uint64_t>> draws;
};

SubsetPlan DrawSubsetPlan(int n_features, int m_samples, SamplerMode mode,
                          const RandomSource& root);

// Evaluates a plan against a game.
//
// kUnbiased: the estimate is the plain average of mu(z_i, S_m) over draws
// whose sizes are uniform on {0..n-1} and uniform within each size; that
// mixture equals the Shapley weighting, so the average is unbiased.
//
// kPaperLiteral: coalitions are uniform over all 2^(n-1) subsets and the
// weighted sum sum_m w_{S_m} * mu is scaled by 2^(n-1)/m, which makes the
// printed accumulation consistent in expectation.
//
// Both modes report a per-feature standard error of the estimate.
ContributionScores ContributionsFromPlan(const CoalitionGame& game,
                                         const SubsetPlan& plan,
                                         int threads = 1);

// DrawSubsetPlan + ContributionsFromPlan. mode must be a sampling mode.
ContributionScores McContributions(const CoalitionGame& game, int m_samples,
                                   const RandomSource& rng, SamplerMode mode,
                                   int threads = 1);

}  // namespace protectability

#endif  // PROTECTABILITY_SHAPLEY_H_
