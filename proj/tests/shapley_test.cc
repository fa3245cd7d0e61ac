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

#include <gtest/gtest.h>

#include <bit>
#include <cmath>

#include "protectability/generator.h"
#include "testing/oracles.h"

namespace protectability {
namespace {

using ::protectability::testing::PermutationShapley;
using ::protectability::testing::XorDataset;

std::shared_ptr<CoalitionGame> MiGame(const Dataset& data, int bins = 16) {
  return MakeGame(Discretize(data.table, bins), data.task,
                  Estimator::kMutualInformation);
}

TEST(ShapleyWeightTest, SpotValues) {
  EXPECT_EQ(ShapleyWeight(0, 1), 1.0);
  EXPECT_EQ(ShapleyWeight(1, 3), 1.0 / 6.0);
  EXPECT_EQ(ShapleyWeight(0, 3), 1.0 / 3.0);
  EXPECT_THROW(ShapleyWeight(3, 3), std::invalid_argument);
  EXPECT_THROW(ShapleyWeight(-1, 3), std::invalid_argument);
}

TEST(ShapleyWeightTest, SumsToOneByBruteForceEnumeration) {
  // Sum over all subsets of the other n-1 features, enumerated as masks.
  for (int n = 1; n <= 12; ++n) {
    long double sum = 0.0L;
    const uint64_t coalitions = uint64_t{1} << (n - 1);
    for (uint64_t c = 0; c < coalitions; ++c) {
      sum += ShapleyWeight(std::popcount(c), n);
    }
    EXPECT_NEAR(static_cast<double>(sum), 1.0, 1e-12) << "n=" << n;
  }
}

TEST(ShapleyWeightTest, StableForWideGames) {
  // n=64 exercises the largest supported width; the sum uses the closed
  // form count * weight per size to avoid 2^63 iterations.
  const int n = 64;
  long double sum = 0.0L;
  long double count = 1.0L;  // C(63, k), updated iteratively
  for (int k = 0; k < n; ++k) {
    sum += count * ShapleyWeight(k, n);
    count = count * (n - 1 - k) / (k + 1);
  }
  EXPECT_NEAR(static_cast<double>(sum), 1.0, 1e-9);
}

TEST(ExactContributionsTest, XorSymmetricHalves) {
  const auto game = MiGame({XorDataset().table, XorDataset().task,
                            XorDataset().private_attr, "ya", "ypri"});
  const ContributionScores scores = ExactContributions(*game);
  EXPECT_NEAR(scores.values[0], 0.5, 1e-12);
  EXPECT_NEAR(scores.values[1], 0.5, 1e-12);
  EXPECT_EQ(scores.sampler, SamplerMode::kExact);
  EXPECT_EQ(scores.std_errors.size(), 0);
}

TEST(ExactContributionsTest, NullPlayerIsExactlyZero) {
  auto xor_data = XorDataset();
  Eigen::MatrixXd wide(8, 3);
  wide.leftCols(2) = xor_data.table.data();
  wide.col(2).setConstant(0.0);
  std::vector<ColumnInfo> infos = xor_data.table.columns();
  infos.push_back({"dummy", ColumnKind::kDiscrete, 1});
  auto game = MakeGame(Discretize(FeatureTable(wide, infos), 16),
                       xor_data.task, Estimator::kMutualInformation);
  const ContributionScores scores = ExactContributions(*game);
  EXPECT_EQ(scores.values[2], 0.0);
  EXPECT_NEAR(scores.values[0], 0.5, 1e-12);
}

TEST(ExactContributionsTest, MatchesPermutationOracle) {
  GeneratorSpec spec;
  spec.n_samples = 160;
  spec.seed = 13;
  spec.n_task = 2;
  spec.n_shared = 2;
  spec.n_private = 1;
  spec.n_noise = 1;
  const Dataset data = Generate(spec).data;
  auto game = MiGame(data);
  const ContributionScores scores = ExactContributions(*game);
  const Eigen::VectorXd oracle = PermutationShapley(*game);
  for (int i = 0; i < scores.values.size(); ++i) {
    EXPECT_NEAR(scores.values[i], oracle[i], 1e-10) << "feature " << i;
  }
}

TEST(ExactContributionsTest, EfficiencyAndNonnegativity) {
  GeneratorSpec spec;
  spec.n_samples = 256;
  spec.seed = 77;
  const Dataset data = Generate(spec).data;
  auto game = MiGame(data);
  const ContributionScores scores = ExactContributions(*game);
  const double grand = game->Evaluate(
      FeatureSubset::Full(data.table.n_features()));
  EXPECT_NEAR(scores.values.sum(), grand, 1e-9);
  for (int i = 0; i < scores.values.size(); ++i) {
    EXPECT_GE(scores.values[i], -1e-9);
  }
}

TEST(ExactContributionsTest, DuplicateColumnsGetEqualScores) {
  GeneratorSpec spec;
  spec.n_samples = 200;
  spec.seed = 15;
  spec.n_task = 1;
  spec.n_shared = 1;
  spec.n_private = 1;
  spec.n_noise = 0;
  const Dataset data = Generate(spec).data;
  Eigen::MatrixXd wide(data.table.n_samples(), 4);
  wide.leftCols(3) = data.table.data();
  wide.col(3) = data.table.data().col(0);
  std::vector<ColumnInfo> infos = data.table.columns();
  infos.push_back({"dup", infos[0].kind, infos[0].cardinality});
  auto game = MakeGame(Discretize(FeatureTable(wide, infos), 16), data.task,
                       Estimator::kMutualInformation);
  const ContributionScores scores = ExactContributions(*game);
  EXPECT_NEAR(scores.values[0], scores.values[3], 1e-12);
}

TEST(ExactContributionsTest, RefusesOverLimit) {
  GeneratorSpec spec;
  spec.n_samples = 32;
  spec.seed = 1;
  const Dataset data = Generate(spec).data;
  auto game = MiGame(data);
  EXPECT_THROW(ExactContributions(*game, /*exact_limit=*/4),
               std::invalid_argument);
}

TEST(ExactContributionsTest, ThreadCountDoesNotChangeBits) {
  GeneratorSpec spec;
  spec.n_samples = 128;
  spec.seed = 2;
  const Dataset data = Generate(spec).data;
  auto a = MiGame(data);
  auto b = MiGame(data);
  const ContributionScores serial = ExactContributions(*a, 16, 1);
  const ContributionScores parallel = ExactContributions(*b, 16, 4);
  for (int i = 0; i < serial.values.size(); ++i) {
    EXPECT_EQ(serial.values[i], parallel.values[i]);
  }
}

TEST(SubsetPlanTest, DrawsExcludeFocalAndRespectMode) {
  const RandomSource root(5);
  for (const SamplerMode mode :
       {SamplerMode::kUnbiased, SamplerMode::kPaperLiteral}) {
    const SubsetPlan plan = DrawSubsetPlan(6, 40, mode, root);
    ASSERT_EQ(plan.draws.size(), 6u);
    for (int i = 0; i < 6; ++i) {
      ASSERT_EQ(plan.draws[i].size(), 40u);
      for (uint64_t mask : plan.draws[i]) {
        EXPECT_EQ(mask & (uint64_t{1} << i), 0u);
        EXPECT_LT(mask, uint64_t{1} << 6);
        if (mode == SamplerMode::kUnbiased) {
          EXPECT_LE(std::popcount(mask), 5);
        }
      }
    }
  }
  EXPECT_THROW(DrawSubsetPlan(6, 40, SamplerMode::kExact, root),
               std::invalid_argument);
}

TEST(SubsetPlanTest, SingleFeatureGameAlwaysDrawsEmpty) {
  const RandomSource root(5);
  const SubsetPlan plan = DrawSubsetPlan(1, 10, SamplerMode::kUnbiased, root);
  for (uint64_t mask : plan.draws[0]) EXPECT_EQ(mask, 0u);
}

TEST(McContributionsTest, XorConvergesToHalf) {
  const auto xor_data = XorDataset();
  for (uint64_t seed : {1ull, 2ull, 3ull}) {
    auto game = MakeGame(Discretize(xor_data.table, 16), xor_data.task,
                         Estimator::kMutualInformation);
    const ContributionScores scores = McContributions(
        *game, 1000, RandomSource(seed), SamplerMode::kUnbiased);
    for (int i = 0; i < 2; ++i) {
      EXPECT_NEAR(scores.values[i], 0.5, 3.0 * scores.std_errors[i] + 1e-12)
          << "seed " << seed << " feature " << i;
    }
  }
}

TEST(McContributionsTest, ExhaustivePaperPlanMatchesExactBitwise) {
  GeneratorSpec spec;
  spec.n_samples = 96;
  spec.seed = 33;
  spec.n_task = 2;
  spec.n_shared = 1;
  spec.n_private = 1;
  spec.n_noise = 1;
  const Dataset data = Generate(spec).data;
  const int n = data.table.n_features();
  auto game = MiGame(data);

  // Deterministic test-only plan: every coalition exactly once, in the
  // same order the exact enumeration uses.
  SubsetPlan plan;
  plan.n_features = n;
  plan.mode = SamplerMode::kPaperLiteral;
  plan.m_samples = 1 << (n - 1);
  plan.seed = 0;
  plan.draws.resize(n);
  for (int i = 0; i < n; ++i) {
    for (uint64_t c = 0; c < (uint64_t{1} << (n - 1)); ++c) {
      plan.draws[i].push_back(ExpandMask(c, i));
    }
  }
  const ContributionScores sampled = ContributionsFromPlan(*game, plan);
  const ContributionScores exact = ExactContributions(*game);
  for (int i = 0; i < n; ++i) {
    EXPECT_EQ(sampled.values[i], exact.values[i]) << "feature " << i;
  }
}

TEST(McContributionsTest, UnbiasedModeIsUnbiased) {
  // Fixed n=6 table; the mean of estimates over seeds must sit within four
  // standard errors of the exact value, per feature.
  GeneratorSpec spec;
  spec.n_samples = 192;
  spec.seed = 6;
  spec.n_task = 2;
  spec.n_shared = 2;
  spec.n_private = 1;
  spec.n_noise = 1;
  const Dataset data = Generate(spec).data;
  auto game = MiGame(data);
  const ContributionScores exact = ExactContributions(*game);

  const int kSeeds = 200;
  const int n = data.table.n_features();
  Eigen::MatrixXd estimates(kSeeds, n);
  for (int s = 0; s < kSeeds; ++s) {
    estimates.row(s) = McContributions(*game, 50, RandomSource(1000 + s),
                                       SamplerMode::kUnbiased)
                           .values;
  }
  for (int i = 0; i < n; ++i) {
    const double mean = estimates.col(i).mean();
    const double var =
        (estimates.col(i).array() - mean).square().sum() / (kSeeds - 1);
    const double se = std::sqrt(var / kSeeds);
    EXPECT_LE(std::abs(mean - exact.values[i]), 4.0 * se + 1e-12)
        << "feature " << i;
  }
}

TEST(McContributionsTest, PaperLiteralIsConsistentInExpectation) {
  GeneratorSpec spec;
  spec.n_samples = 192;
  spec.seed = 6;
  spec.n_task = 2;
  spec.n_shared = 2;
  spec.n_private = 1;
  spec.n_noise = 1;
  const Dataset data = Generate(spec).data;
  auto game = MiGame(data);
  const ContributionScores exact = ExactContributions(*game);

  const int kSeeds = 200;
  const int n = data.table.n_features();
  Eigen::MatrixXd estimates(kSeeds, n);
  for (int s = 0; s < kSeeds; ++s) {
    estimates.row(s) = McContributions(*game, 50, RandomSource(2000 + s),
                                       SamplerMode::kPaperLiteral)
                           .values;
  }
  for (int i = 0; i < n; ++i) {
    const double mean = estimates.col(i).mean();
    const double var =
        (estimates.col(i).array() - mean).square().sum() / (kSeeds - 1);
    const double se = std::sqrt(var / kSeeds);
    EXPECT_LE(std::abs(mean - exact.values[i]), 4.0 * se + 1e-12)
        << "feature " << i;
  }
}

TEST(McContributionsTest, DeterministicGivenSeedModeAndM) {
  GeneratorSpec spec;
  spec.n_samples = 128;
  spec.seed = 44;
  const Dataset data = Generate(spec).data;
  for (const SamplerMode mode :
       {SamplerMode::kUnbiased, SamplerMode::kPaperLiteral}) {
    auto a = MiGame(data);
    auto b = MiGame(data);
    const ContributionScores first =
        McContributions(*a, 64, RandomSource(9), mode, 1);
    const ContributionScores second =
        McContributions(*b, 64, RandomSource(9), mode, 4);
    for (int i = 0; i < first.values.size(); ++i) {
      EXPECT_EQ(first.values[i], second.values[i]);
      EXPECT_EQ(first.std_errors[i], second.std_errors[i]);
    }
    EXPECT_EQ(first.m_samples, 64);
    EXPECT_EQ(first.seed, 9u);
  }
}

TEST(McContributionsTest, StandardErrorsShrinkWithM) {
  GeneratorSpec spec;
  spec.n_samples = 256;
  spec.seed = 3;
  const Dataset data = Generate(spec).data;
  auto game = MiGame(data);
  const ContributionScores small =
      McContributions(*game, 50, RandomSource(1), SamplerMode::kUnbiased);
  const ContributionScores large =
      McContributions(*game, 800, RandomSource(1), SamplerMode::kUnbiased);
  EXPECT_LT(large.std_errors.sum(), small.std_errors.sum());
}

}  // namespace
}  // namespace protectability
