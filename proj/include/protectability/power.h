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

#ifndef PROTECTABILITY_POWER_H_
#define PROTECTABILITY_POWER_H_

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "protectability/information.h"
#include "protectability/types.h"

namespace protectability {

enum class LossKind { kCrossEntropy, kMeanSquaredError };

// Empirical conditional-frequency predictor restricted to a feature subset:
// P(Y | Z_S = cell) for every cell observed at fit time. Code tuples unseen
// at fit time fall back to the prior (the empirical marginal of Y), which is
// also the whole model when S is empty.
class RestrictedPredictor {
 public:
  RestrictedPredictor(FeatureSubset subset, Eigen::VectorXd prior,
                      std::map<std::vector<int>, Eigen::VectorXd> conditional);

  const FeatureSubset& subset() const { return subset_; }
  const Eigen::VectorXd& prior() const { return prior_; }
  const std::map<std::vector<int>, Eigen::VectorXd>& conditional() const {
    return conditional_;
  }

  // Probability vector over target classes for one row of the table.
  const Eigen::VectorXd& Predict(const DiscretizedTable& disc, int row) const;

 private:
  FeatureSubset subset_;
  Eigen::VectorXd prior_;
  std::map<std::vector<int>, Eigen::VectorXd> conditional_;
};

RestrictedPredictor FitRestricted(const DiscretizedTable& disc,
                                  const FeatureSubset& subset,
                                  const AttributeVector& target);

// Mean per-sample loss over all rows, in bits for cross-entropy. A true
// class at probability 0 is floored at 1e-12; `floored`, when given, reports
// whether the floor fired.
double ExpectedLoss(const RestrictedPredictor& pred,
                    const DiscretizedTable& disc,
                    const AttributeVector& target, LossKind loss,
                    bool* floored = nullptr);

// Expected loss reduction of the subset-restricted model over the mean
// model. Zero for the empty subset by construction.
double PredictivePower(const DiscretizedTable& disc,
                       const FeatureSubset& subset,
                       const AttributeVector& target, LossKind loss);

// A characteristic function S -> nu(S) with mandatory memoization: repeated
// evaluation of a subset returns the identical value, and the memo is shared
// across focal features. Evaluate() is safe to call concurrently.
class CoalitionGame {
 public:
  using EvalFn = std::function<double(const FeatureSubset&)>;

  CoalitionGame(int n_features, Estimator kind, EvalFn fn);

  int n_features() const { return n_; }
  Estimator kind() const { return kind_; }

  double Evaluate(const FeatureSubset& subset) const;
  double EvaluateMask(uint64_t mask) const;

  // Number of evaluation requests so far (memo hits included); this is the
  // deterministic cost measure reported by the benchmark.
  uint64_t evaluation_count() const;
  // Distinct subsets evaluated so far (the memo footprint).
  uint64_t memo_size() const;

 private:
  int n_;
  Estimator kind_;
  EvalFn fn_;
  mutable std::mutex mu_;
  mutable std::unordered_map<uint64_t, double> memo_;
  mutable uint64_t requests_ = 0;
};

// nu(S u {i}) - nu(S); i must not be a member of S.
double MarginalPayoff(const CoalitionGame& game, int feature,
                      const FeatureSubset& subset);

// Binds either nu definition behind the game interface: kMutualInformation
// delegates to MutualInformationBits, kLoss to PredictivePower.
std::shared_ptr<CoalitionGame> MakeGame(
    const DiscretizedTable& disc, const AttributeVector& target,
    Estimator kind, LossKind loss = LossKind::kCrossEntropy);

}  // namespace protectability

#endif  // PROTECTABILITY_POWER_H_
