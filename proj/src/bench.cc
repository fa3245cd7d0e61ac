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

#include "protectability/bench.h"

#include <chrono>
#include <cstdio>
#include <stdexcept>

#include "protectability/information.h"
#include "protectability/metrics.h"
#include "protectability/power.h"
#include "protectability/shapley.h"

namespace protectability {
namespace {

using Clock = std::chrono::steady_clock;

double MsSince(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

}  // namespace

std::vector<BenchRow> RunBench(const Dataset& data,
                               const AnalysisConfig& config,
                               const std::vector<int>& m_values,
                               uint64_t seed) {
  config.Validate();
  ValidatePair(data.table, data.task);
  ValidatePair(data.table, data.private_attr);
  const DiscretizedTable disc = Discretize(data.table, config.bins);
  const int n = disc.n_features();
  const RandomSource root(seed);
  const SamplerMode mode = config.sampler == SamplerMode::kExact
                               ? SamplerMode::kUnbiased
                               : config.sampler;

  std::vector<BenchRow> rows;
  for (int m : m_values) {
    if (m < 1) throw std::invalid_argument("bench M values must be >= 1");
    auto task_game = MakeGame(disc, data.task, config.estimator);
    auto private_game = MakeGame(disc, data.private_attr, config.estimator);
    const auto start = Clock::now();
    const SubsetPlan plan =
        DrawSubsetPlan(n, m, mode, root.Child(kStreamEstimation));
    ContributionsFromPlan(*task_game, plan, config.threads);
    ContributionsFromPlan(*private_game, plan, config.threads);
    BenchRow row;
    row.wall_ms = MsSince(start);
    row.label = std::to_string(m);
    row.game_evaluations =
        task_game->evaluation_count() + private_game->evaluation_count();
    row.peak_memo_subsets = task_game->memo_size() + private_game->memo_size();
    rows.push_back(row);
  }

  if (n <= config.exact_limit) {
    auto task_game = MakeGame(disc, data.task, config.estimator);
    auto private_game = MakeGame(disc, data.private_attr, config.estimator);
    const auto start = Clock::now();
    ExactContributions(*task_game, config.exact_limit, config.threads);
    ExactContributions(*private_game, config.exact_limit, config.threads);
    BenchRow row;
    row.wall_ms = MsSince(start);
    row.label = "exact";
    row.game_evaluations =
        task_game->evaluation_count() + private_game->evaluation_count();
    row.peak_memo_subsets = task_game->memo_size() + private_game->memo_size();
    rows.push_back(row);
  }
  return rows;
}

std::string BenchCsv(const std::vector<BenchRow>& rows) {
  std::string out = "m,wall_ms,game_evaluations,peak_memo_subsets\n";
  char buf[128];
  for (const BenchRow& row : rows) {
    std::snprintf(buf, sizeof(buf), "%s,%.3f,%llu,%llu\n", row.label.c_str(),
                  row.wall_ms,
                  static_cast<unsigned long long>(row.game_evaluations),
                  static_cast<unsigned long long>(row.peak_memo_subsets));
    out += buf;
  }
  return out;
}

}  // namespace protectability
