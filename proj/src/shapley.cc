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

#include "protectability/shapley.h"

#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "parallel_for.h"

namespace protectability {
namespace {

// C(n, k) exactly in 64 bits; fits for n <= 64 (max C(63, 31) < 2^63).
uint64_t Binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 b = 1;
  for (int j = 1; j <= k; ++j) {
    b = b * static_cast<unsigned>(n - k + j) / static_cast<unsigned>(j);
  }
  return static_cast<uint64_t>(b);
}

std::vector<double> WeightsBySize(int n) {
  std::vector<double> w(n);
  for (int k = 0; k < n; ++k) w[k] = ShapleyWeight(k, n);
  return w;
}

// Sample standard error of the mean from the per-draw statistics.
double StandardError(const std::vector<double>& samples, double mean) {
  const size_t m = samples.size();
  if (m < 2) return 0.0;
  long double ss = 0.0L;
  for (double x : samples) {
    const long double d = static_cast<long double>(x) - mean;
    ss += d * d;
  }
  return static_cast<double>(
      std::sqrt(ss / (static_cast<long double>(m) * (m - 1))));
}

}  // namespace

double ShapleyWeight(int subset_size, int n) {
  if (n < 1 || n > 64) {
    throw std::invalid_argument("ShapleyWeight: n must be in [1, 64]");
  }
  if (subset_size < 0 || subset_size >= n) {
    throw std::invalid_argument(
        "ShapleyWeight: subset size must be in [0, n)");
  }
  // |S|!(n-|S|-1)!/n! == 1 / (n * C(n-1, |S|)).
  return 1.0 / (static_cast<double>(n) *
                static_cast<double>(Binomial(n - 1, subset_size)));
}

uint64_t ExpandMask(uint64_t compressed, int focal) {
  const uint64_t low = compressed & ((uint64_t{1} << focal) - 1);
  const uint64_t high = (compressed >> focal) << (focal + 1);
  return high | low;
}

ContributionScores ExactContributions(const CoalitionGame& game,
                                      int exact_limit, int threads) {
  const int n = game.n_features();
  if (n > exact_limit) {
    throw std::invalid_argument(
        "exact Shapley enumeration refused for n=" + std::to_string(n) +
        " > limit " + std::to_string(exact_limit) +
        "; use the Monte Carlo sampler (unbiased or paper)");
  }
  const std::vector<double> weights = WeightsBySize(n);
  ContributionScores scores;
  scores.sampler = SamplerMode::kExact;
  scores.values.resize(n);
  internal::ParallelFor(n, threads, [&](int i) {
    const uint64_t focal_bit = uint64_t{1} << i;
    const uint64_t coalitions = uint64_t{1} << (n - 1);
    double acc = 0.0;
    for (uint64_t c = 0; c < coalitions; ++c) {
      const uint64_t mask = ExpandMask(c, i);
      const double w = weights[std::popcount(c)];
      acc += w * (game.EvaluateMask(mask | focal_bit) -
                  game.EvaluateMask(mask));
    }
    scores.values[i] = acc;
  });
  return scores;
}

SubsetPlan DrawSubsetPlan(int n_features, int m_samples, SamplerMode mode,
                          const RandomSource& root) {
  if (mode == SamplerMode::kExact) {
    throw std::invalid_argument("exact mode has no sampling plan");
  }
  if (n_features < 1 || n_features > 63) {
    throw std::invalid_argument("plan needs 1..63 features");
  }
  if (m_samples < 1) throw std::invalid_argument("m_samples must be >= 1");

  SubsetPlan plan;
  plan.n_features = n_features;
  plan.mode = mode;
  plan.m_samples = m_samples;
  plan.seed = root.seed();
  plan.draws.resize(n_features);

  const int others = n_features - 1;
  std::vector<int> scratch(others);
  for (int i = 0; i < n_features; ++i) {
    RandomSource child = root.Child(static_cast<uint64_t>(i));
    std::vector<uint64_t>& draws = plan.draws[i];
    draws.reserve(m_samples);
    for (int d = 0; d < m_samples; ++d) {
      if (mode == SamplerMode::kPaperLiteral) {
        const uint64_t compressed =
            others == 0 ? 0
                        : child.NextU64() & ((uint64_t{1} << others) - 1);
        draws.push_back(ExpandMask(compressed, i));
      } else {
        const int k = child.UniformInt(n_features);  // size in {0..n-1}
        std::iota(scratch.begin(), scratch.end(), 0);
        uint64_t mask = 0;
        for (int j = 0; j < k; ++j) {
          const int r = j + child.UniformInt(others - j);
          std::swap(scratch[j], scratch[r]);
          const int idx = scratch[j] < i ? scratch[j] : scratch[j] + 1;
          mask |= uint64_t{1} << idx;
        }
        draws.push_back(mask);
      }
    }
  }
  return plan;
}

ContributionScores ContributionsFromPlan(const CoalitionGame& game,
                                         const SubsetPlan& plan,
                                         int threads) {
  const int n = game.n_features();
  if (plan.n_features != n) {
    throw std::invalid_argument("plan width does not match game");
  }
  const int m = plan.m_samples;
  const std::vector<double> weights = WeightsBySize(n);
  const double pow2 = std::ldexp(1.0, n - 1);  // 2^(n-1)

  ContributionScores scores;
  scores.sampler = plan.mode;
  scores.m_samples = m;
  scores.seed = plan.seed;
  scores.values.resize(n);
  scores.std_errors.resize(n);

  internal::ParallelFor(n, threads, [&](int i) {
    const uint64_t focal_bit = uint64_t{1} << i;
    std::vector<double> samples(m);
    double acc = 0.0;
    for (int d = 0; d < m; ++d) {
      const uint64_t mask = plan.draws[i][d];
      const double mu = game.EvaluateMask(mask | focal_bit) -
                        game.EvaluateMask(mask);
      if (plan.mode == SamplerMode::kPaperLiteral) {
        const double w = weights[std::popcount(mask)];
        acc += w * mu;
        samples[d] = pow2 * w * mu;
      } else {
        acc += mu;
        samples[d] = mu;
      }
    }
    // The paper-literal sum needs the 2^(n-1)/m consistency factor; the
    // unbiased mode is a plain average.
    const double value =
        plan.mode == SamplerMode::kPaperLiteral ? acc * (pow2 / m) : acc / m;
    scores.values[i] = value;
    scores.std_errors[i] = StandardError(samples, value);
  });
  return scores;
}

ContributionScores McContributions(const CoalitionGame& game, int m_samples,
                                   const RandomSource& rng, SamplerMode mode,
                                   int threads) {
  return ContributionsFromPlan(
      game, DrawSubsetPlan(game.n_features(), m_samples, mode, rng), threads);
}

}  // namespace protectability
