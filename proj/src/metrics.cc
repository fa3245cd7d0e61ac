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

#include "protectability/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace protectability {
namespace {

std::string FloatText(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// Contribution estimation for one target with the config's settings.
ContributionScores EstimateSingle(const DiscretizedTable& disc,
                                  const AttributeVector& target,
                                  const AnalysisConfig& config,
                                  const RandomSource& rng) {
  auto game = MakeGame(disc, target, config.estimator);
  if (config.sampler == SamplerMode::kExact) {
    return ExactContributions(*game, config.exact_limit, config.threads);
  }
  return McContributions(*game, config.m_samples, rng, config.sampler,
                         config.threads);
}

struct ScorePair {
  ContributionScores task;
  ContributionScores private_attr;
};

// Both targets, sharing one subset plan in the sampling modes so the
// protectable selection compares like with like.
ScorePair EstimatePair(const DiscretizedTable& disc,
                       const AttributeVector& task,
                       const AttributeVector& private_attr,
                       const AnalysisConfig& config, const RandomSource& rng) {
  auto task_game = MakeGame(disc, task, config.estimator);
  auto private_game = MakeGame(disc, private_attr, config.estimator);
  ScorePair out;
  if (config.sampler == SamplerMode::kExact) {
    out.task = ExactContributions(*task_game, config.exact_limit,
                                  config.threads);
    out.private_attr = ExactContributions(*private_game, config.exact_limit,
                                          config.threads);
  } else {
    const SubsetPlan plan = DrawSubsetPlan(disc.n_features(),
                                           config.m_samples, config.sampler,
                                           rng);
    out.task = ContributionsFromPlan(*task_game, plan, config.threads);
    out.private_attr =
        ContributionsFromPlan(*private_game, plan, config.threads);
  }
  return out;
}

std::vector<int> ResolvePruneIndices(const FeatureTable& table,
                                     const std::vector<std::string>& names) {
  std::vector<int> idx;
  idx.reserve(names.size());
  for (const std::string& name : names) {
    const int j = table.IndexOf(name);
    if (j < 0) throw DataError("prune: unknown feature '" + name + "'");
    idx.push_back(j);
  }
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  return idx;
}

ScoreResult RatioScore(const ContributionScores& scores,
                       const std::vector<int>& selected, double tol) {
  long double denom = 0.0L;
  for (int i = 0; i < scores.values.size(); ++i) denom += scores.values[i];
  if (std::abs(static_cast<double>(denom)) < tol) return {0.0, true};
  long double num = 0.0L;
  for (int i : selected) {
    if (i < 0 || i >= scores.values.size()) {
      throw std::invalid_argument("selected index out of range");
    }
    num += scores.values[i];
  }
  return {static_cast<double>(num / denom), false};
}

// Calibrated schemes rank features by clean private contribution, so they
// resolve against a dedicated estimation pass before application.
PerturbationScheme ResolveForTable(const PerturbationScheme& scheme,
                                   const FeatureTable& table,
                                   const AttributeVector& private_attr,
                                   const AnalysisConfig& config,
                                   const RandomSource& calibration_rng) {
  if (scheme.kind != SchemeKind::kCalibratedNoise ||
      scheme.sigma_per_feature.size() == table.n_features()) {
    return scheme;
  }
  const DiscretizedTable disc = Discretize(table, config.bins);
  return ResolveCalibration(
      scheme, EstimateSingle(disc, private_attr, config, calibration_rng));
}

}  // namespace

std::string PerturbationScheme::Descriptor() const {
  switch (kind) {
    case SchemeKind::kGaussianNoise:
      return "gaussian:sigma=" + FloatText(sigma);
    case SchemeKind::kCalibratedNoise:
      return "calibrated:sigma=" + FloatText(sigma);
    case SchemeKind::kPrune: {
      std::string out = "prune:features=";
      for (size_t k = 0; k < prune_names.size(); ++k) {
        if (k > 0) out += ',';
        out += prune_names[k];
      }
      return out;
    }
    case SchemeKind::kQuantize:
      return "quantize:levels=" + std::to_string(levels);
  }
  return "";
}

PerturbationScheme ParseSchemeDescriptor(const std::string& text) {
  const size_t colon = text.find(':');
  if (colon == std::string::npos) {
    throw std::invalid_argument("scheme descriptor needs '<kind>:<arg>': '" +
                                text + "'");
  }
  const std::string kind = text.substr(0, colon);
  const std::string arg = text.substr(colon + 1);
  const size_t eq = arg.find('=');
  if (eq == std::string::npos) {
    throw std::invalid_argument("scheme descriptor needs '<key>=<value>': '" +
                                text + "'");
  }
  const std::string key = arg.substr(0, eq);
  const std::string value = arg.substr(eq + 1);

  PerturbationScheme scheme;
  if (kind == "gaussian" || kind == "calibrated") {
    scheme.kind = kind == "gaussian" ? SchemeKind::kGaussianNoise
                                     : SchemeKind::kCalibratedNoise;
    if (key != "sigma") {
      throw std::invalid_argument(kind + " scheme takes sigma=<float>");
    }
    size_t used = 0;
    try {
      scheme.sigma = std::stod(value, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad sigma value '" + value + "'");
    }
    if (used != value.size() || !(scheme.sigma >= 0.0)) {
      throw std::invalid_argument("sigma must be a nonnegative float: '" +
                                  value + "'");
    }
    return scheme;
  }
  if (kind == "prune") {
    scheme.kind = SchemeKind::kPrune;
    if (key != "features") {
      throw std::invalid_argument("prune scheme takes features=<name list>");
    }
    std::string token;
    for (char c : value + ",") {
      if (c == ',') {
        if (!token.empty()) scheme.prune_names.push_back(token);
        token.clear();
      } else {
        token += c;
      }
    }
    return scheme;
  }
  if (kind == "quantize") {
    scheme.kind = SchemeKind::kQuantize;
    if (key != "levels") {
      throw std::invalid_argument("quantize scheme takes levels=<int>");
    }
    size_t used = 0;
    int levels = 0;
    try {
      levels = std::stoi(value, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad levels value '" + value + "'");
    }
    if (used != value.size() || levels < 0) {
      throw std::invalid_argument("levels must be a nonnegative int: '" +
                                  value + "'");
    }
    scheme.levels = levels;
    return scheme;
  }
  throw std::invalid_argument(
      "unknown scheme kind '" + kind +
      "' (expected gaussian|calibrated|prune|quantize)");
}

PerturbationScheme ResolveCalibration(
    const PerturbationScheme& scheme,
    const ContributionScores& private_scores) {
  if (scheme.kind != SchemeKind::kCalibratedNoise) {
    throw std::invalid_argument("only calibrated schemes take a calibration");
  }
  const int n = static_cast<int>(private_scores.values.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return private_scores.values[a] > private_scores.values[b];
  });
  PerturbationScheme resolved = scheme;
  resolved.sigma_per_feature.resize(n);
  for (int rank = 0; rank < n; ++rank) {
    resolved.sigma_per_feature[order[rank]] =
        scheme.sigma * static_cast<double>(n - rank) / n;
  }
  return resolved;
}

FeatureTable ApplyScheme(const FeatureTable& table,
                         const PerturbationScheme& scheme, RandomSource& rng) {
  const int n = table.n_features();
  const int rows = table.n_samples();
  Eigen::MatrixXd data = table.data();

  switch (scheme.kind) {
    case SchemeKind::kGaussianNoise:
    case SchemeKind::kCalibratedNoise: {
      if (scheme.kind == SchemeKind::kCalibratedNoise &&
          scheme.sigma_per_feature.size() != n) {
        throw std::invalid_argument(
            "calibrated scheme must be resolved before application");
      }
      if (scheme.sigma_per_feature.size() != 0 &&
          scheme.sigma_per_feature.size() != n) {
        throw std::invalid_argument("per-feature sigma width mismatch");
      }
      for (int j = 0; j < n; ++j) {
        const double sigma = scheme.sigma_per_feature.size() == n
                                 ? scheme.sigma_per_feature[j]
                                 : scheme.sigma;
        if (sigma < 0.0) throw std::invalid_argument("sigma must be >= 0");
        if (sigma == 0.0) continue;  // column kept bit for bit
        const ColumnInfo& info = table.column(j);
        if (info.kind == ColumnKind::kDiscrete) {
          const double top = static_cast<double>(info.cardinality - 1);
          for (int r = 0; r < rows; ++r) {
            double v = std::round(data(r, j) + rng.Normal(0.0, sigma));
            data(r, j) = std::min(top, std::max(0.0, v));
          }
        } else {
          for (int r = 0; r < rows; ++r) {
            data(r, j) += rng.Normal(0.0, sigma);
          }
        }
      }
      break;
    }
    case SchemeKind::kPrune: {
      for (int j : ResolvePruneIndices(table, scheme.prune_names)) {
        const auto col = data.col(j);
        bool constant = true;
        for (int r = 1; r < rows && constant; ++r) {
          constant = col(r) == col(0);
        }
        if (constant) continue;  // already constant; keep bits (idempotence)
        double fill = col.mean();
        if (table.column(j).kind == ColumnKind::kDiscrete) {
          fill = std::round(fill);
          fill = std::min(static_cast<double>(table.column(j).cardinality - 1),
                          std::max(0.0, fill));
        }
        data.col(j).setConstant(fill);
      }
      break;
    }
    case SchemeKind::kQuantize: {
      if (scheme.levels == 0) break;  // disabled: identity
      for (int j = 0; j < n; ++j) {
        if (table.column(j).kind != ColumnKind::kContinuous) continue;
        const double lo = data.col(j).minCoeff();
        const double hi = data.col(j).maxCoeff();
        if (lo == hi) continue;
        const double width = (hi - lo) / scheme.levels;
        for (int r = 0; r < rows; ++r) {
          int code = static_cast<int>(std::ceil((data(r, j) - lo) / width)) - 1;
          if (code < 0) code = 0;
          if (code >= scheme.levels) code = scheme.levels - 1;
          data(r, j) = lo + (code + 0.5) * width;
        }
      }
      break;
    }
  }
  return FeatureTable(std::move(data), table.columns());
}

std::vector<int> SelectProtectable(const ContributionScores& private_scores,
                                   double epsilon) {
  if (epsilon < 0.0) throw std::invalid_argument("epsilon must be >= 0");
  std::vector<int> out;
  for (int i = 0; i < private_scores.values.size(); ++i) {
    if (private_scores.values[i] <= epsilon) out.push_back(i);
  }
  return out;
}

std::vector<int> SelectProtected(const ContributionScores& preserved_private,
                                 double epsilon) {
  return SelectProtectable(preserved_private, epsilon);
}

ScoreResult PScore(const ContributionScores& task_scores,
                   const std::vector<int>& protectable, double tol) {
  return RatioScore(task_scores, protectable, tol);
}

ScoreResult LpScore(const ContributionScores& preserved_task,
                    const std::vector<int>& protected_set, double tol) {
  return RatioScore(preserved_task, protected_set, tol);
}

ContributionScores PreservedContributions(const FeatureTable& perturbed,
                                          const AttributeVector& target,
                                          const AnalysisConfig& config,
                                          const RandomSource& estimation_rng) {
  config.Validate();
  ValidatePair(perturbed, target);
  return EstimateSingle(Discretize(perturbed, config.bins), target, config,
                        estimation_rng);
}

ProtectabilityReport Ppe(const FeatureTable& table,
                         const AttributeVector& task,
                         const AttributeVector& private_attr,
                         const AnalysisConfig& config, uint64_t seed) {
  config.Validate();
  ValidatePair(table, task);
  ValidatePair(table, private_attr);
  const RandomSource root(seed);
  const DiscretizedTable disc = Discretize(table, config.bins);
  const ScorePair scores = EstimatePair(disc, task, private_attr, config,
                                        root.Child(kStreamEstimation));

  ProtectabilityReport report;
  report.kind = ReportKind::kPScore;
  report.feature_names = table.names();
  report.task_contributions = scores.task;
  report.private_contributions = scores.private_attr;
  report.selected = SelectProtectable(scores.private_attr, config.epsilon);
  const ScoreResult result =
      PScore(scores.task, report.selected, config.degenerate_tolerance);
  report.score = result.value;
  report.degenerate = result.degenerate;
  report.config = config;
  report.seed = seed;
  return report;
}

ProtectabilityReport Lpe(const FeatureTable& table,
                         const AttributeVector& task,
                         const AttributeVector& private_attr,
                         const PerturbationScheme& scheme,
                         const AnalysisConfig& config, uint64_t seed) {
  config.Validate();
  ValidatePair(table, task);
  ValidatePair(table, private_attr);
  const RandomSource root(seed);
  const PerturbationScheme resolved = ResolveForTable(
      scheme, table, private_attr, config, root.Child(kStreamCalibration));
  RandomSource scheme_rng = root.Child(kStreamScheme);
  const FeatureTable perturbed = ApplyScheme(table, resolved, scheme_rng);
  const DiscretizedTable disc = Discretize(perturbed, config.bins);
  const ScorePair scores = EstimatePair(disc, task, private_attr, config,
                                        root.Child(kStreamEstimation));

  ProtectabilityReport report;
  report.kind = ReportKind::kLpScore;
  report.feature_names = table.names();
  report.task_contributions = scores.task;
  report.private_contributions = scores.private_attr;
  report.selected = SelectProtected(scores.private_attr, config.epsilon);
  const ScoreResult result =
      LpScore(scores.task, report.selected, config.degenerate_tolerance);
  report.score = result.value;
  report.degenerate = result.degenerate;
  report.config = config;
  report.seed = seed;
  report.scheme_descriptor = scheme.Descriptor();
  return report;
}

double BayesAccuracy(const DiscretizedTable& disc,
                     const AttributeVector& target) {
  const RestrictedPredictor pred =
      FitRestricted(disc, FeatureSubset::Full(disc.n_features()), target);
  int correct = 0;
  for (int r = 0; r < disc.n_samples(); ++r) {
    const Eigen::VectorXd& p = pred.Predict(disc, r);
    int best = 0;
    for (int c = 1; c < p.size(); ++c) {
      if (p[c] > p[best]) best = c;
    }
    if (best == target.label(r)) ++correct;
  }
  return static_cast<double>(correct) / disc.n_samples();
}

EvalReport EmpiricalProtection(const FeatureTable& table,
                               const AttributeVector& task,
                               const AttributeVector& private_attr,
                               const std::vector<PerturbationScheme>& schemes,
                               const AnalysisConfig& config, uint64_t seed) {
  config.Validate();
  ValidatePair(table, task);
  ValidatePair(table, private_attr);
  if (schemes.empty()) {
    throw std::invalid_argument("empirical protection needs >= 1 scheme");
  }
  const RandomSource root(seed);
  const double accuracy_floor = 1.0 / private_attr.cardinality();

  EvalReport report;
  report.config = config;
  report.seed = seed;
  for (size_t j = 0; j < schemes.size(); ++j) {
    const PerturbationScheme resolved =
        ResolveForTable(schemes[j], table, private_attr, config,
                        root.Child(kStreamCalibration).Child(j));
    RandomSource scheme_rng = root.Child(kStreamScheme).Child(j);
    const FeatureTable perturbed = ApplyScheme(table, resolved, scheme_rng);
    const DiscretizedTable disc = Discretize(perturbed, config.bins);

    SchemeEval eval;
    eval.descriptor = schemes[j].Descriptor();
    eval.acc_task = BayesAccuracy(disc, task);
    eval.acc_private = BayesAccuracy(disc, private_attr);
    eval.ep = eval.acc_task / std::max(eval.acc_private, accuracy_floor);
    report.schemes.push_back(eval);
  }
  report.ep = 0.0;
  for (const SchemeEval& e : report.schemes) report.ep = std::max(report.ep, e.ep);
  return report;
}

}  // namespace protectability
