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

#include "protectability/power.h"

#include <cmath>
#include <stdexcept>

namespace protectability {
namespace {

constexpr double kProbabilityFloor = 1e-12;

std::vector<int> RowKey(const DiscretizedTable& disc,
                        const FeatureSubset& subset, int row) {
  std::vector<int> key;
  key.reserve(subset.size());
  for (int col : subset.indices()) key.push_back(disc.codes(row, col));
  return key;
}

}  // namespace

RestrictedPredictor::RestrictedPredictor(
    FeatureSubset subset, Eigen::VectorXd prior,
    std::map<std::vector<int>, Eigen::VectorXd> conditional)
    : subset_(std::move(subset)),
      prior_(std::move(prior)),
      conditional_(std::move(conditional)) {
  auto check = [](const Eigen::VectorXd& p) {
    if (std::abs(p.sum() - 1.0) > 1e-12) {
      throw std::invalid_argument(
          "predictor probability vector does not sum to 1");
    }
  };
  check(prior_);
  for (const auto& [key, p] : conditional_) check(p);
}

const Eigen::VectorXd& RestrictedPredictor::Predict(
    const DiscretizedTable& disc, int row) const {
  if (subset_.empty()) return prior_;
  const auto it = conditional_.find(RowKey(disc, subset_, row));
  return it == conditional_.end() ? prior_ : it->second;
}

RestrictedPredictor FitRestricted(const DiscretizedTable& disc,
                                  const FeatureSubset& subset,
                                  const AttributeVector& target) {
  if (disc.n_samples() != target.n_samples()) {
    throw std::invalid_argument("target length does not match table");
  }
  const int classes = target.cardinality();
  const int rows = disc.n_samples();

  Eigen::VectorXd prior = Eigen::VectorXd::Zero(classes);
  for (int r = 0; r < rows; ++r) prior[target.label(r)] += 1.0;
  prior /= static_cast<double>(rows);

  std::map<std::vector<int>, Eigen::VectorXd> conditional;
  if (!subset.empty()) {
    const RowGroups groups = GroupRows(disc, subset);
    Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(groups.n_groups, classes);
    for (int r = 0; r < rows; ++r) {
      counts(groups.group_of_row[r], target.label(r)) += 1.0;
    }
    for (int g = 0; g < groups.n_groups; ++g) {
      conditional.emplace(RowKey(disc, subset, groups.representative[g]),
                          counts.row(g).transpose() /
                              static_cast<double>(groups.counts[g]));
    }
  }
  return RestrictedPredictor(subset, std::move(prior), std::move(conditional));
}

double ExpectedLoss(const RestrictedPredictor& pred,
                    const DiscretizedTable& disc,
                    const AttributeVector& target, LossKind loss,
                    bool* floored) {
  if (disc.n_samples() != target.n_samples()) {
    throw std::invalid_argument("target length does not match table");
  }
  if (floored != nullptr) *floored = false;
  const int rows = disc.n_samples();
  const int classes = target.cardinality();
  long double acc = 0.0L;
  for (int r = 0; r < rows; ++r) {
    const Eigen::VectorXd& p = pred.Predict(disc, r);
    if (loss == LossKind::kCrossEntropy) {
      double py = p[target.label(r)];
      if (py < kProbabilityFloor) {
        py = kProbabilityFloor;
        if (floored != nullptr) *floored = true;
      }
      acc -= std::log2(static_cast<long double>(py));
    } else {
      // Mean over classes of the squared error to the one-hot target.
      long double sq = 0.0L;
      for (int c = 0; c < classes; ++c) {
        const double e = p[c] - (c == target.label(r) ? 1.0 : 0.0);
        sq += static_cast<long double>(e) * e;
      }
      acc += sq / classes;
    }
  }
  return static_cast<double>(acc / rows);
}

double PredictivePower(const DiscretizedTable& disc,
                       const FeatureSubset& subset,
                       const AttributeVector& target, LossKind loss) {
  const RestrictedPredictor mean_model =
      FitRestricted(disc, FeatureSubset(), target);
  const double base = ExpectedLoss(mean_model, disc, target, loss);
  if (subset.empty()) return base - base;
  const RestrictedPredictor restricted = FitRestricted(disc, subset, target);
  return base - ExpectedLoss(restricted, disc, target, loss);
}

CoalitionGame::CoalitionGame(int n_features, Estimator kind, EvalFn fn)
    : n_(n_features), kind_(kind), fn_(std::move(fn)) {
  if (n_ < 1 || n_ > 63) {
    throw std::invalid_argument("coalition game supports 1..63 features");
  }
}

double CoalitionGame::Evaluate(const FeatureSubset& subset) const {
  return EvaluateMask(subset.mask());
}

double CoalitionGame::EvaluateMask(uint64_t mask) const {
  if (mask >> n_) {
    throw std::invalid_argument("subset mask exceeds game width");
  }
  {
    std::lock_guard<std::mutex> lock(mu_);
    ++requests_;
    const auto it = memo_.find(mask);
    if (it != memo_.end()) return it->second;
  }
  // nu({}) = 0 by definition; other values come from the bound function.
  const double value = mask == 0 ? 0.0 : fn_(FeatureSubset::FromMask(mask));
  std::lock_guard<std::mutex> lock(mu_);
  return memo_.emplace(mask, value).first->second;
}

uint64_t CoalitionGame::evaluation_count() const {
  std::lock_guard<std::mutex> lock(mu_);
  return requests_;
}

uint64_t CoalitionGame::memo_size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return memo_.size();
}

double MarginalPayoff(const CoalitionGame& game, int feature,
                      const FeatureSubset& subset) {
  if (subset.contains(feature)) {
    throw std::invalid_argument("marginal payoff: feature already in subset");
  }
  const uint64_t mask = subset.mask();
  return game.EvaluateMask(mask | (uint64_t{1} << feature)) -
         game.EvaluateMask(mask);
}

std::shared_ptr<CoalitionGame> MakeGame(const DiscretizedTable& disc,
                                        const AttributeVector& target,
                                        Estimator kind, LossKind loss) {
  if (disc.n_samples() != target.n_samples()) {
    throw std::invalid_argument("target length does not match table");
  }
  if (kind == Estimator::kMutualInformation) {
    return std::make_shared<CoalitionGame>(
        disc.n_features(), kind, [disc, target](const FeatureSubset& s) {
          return MutualInformationBits(disc, s, target);
        });
  }
  return std::make_shared<CoalitionGame>(
      disc.n_features(), kind, [disc, target, loss](const FeatureSubset& s) {
        return PredictivePower(disc, s, target, loss);
      });
}

}  // namespace protectability
