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

#ifndef PROTECTABILITY_BENCH_H_
#define PROTECTABILITY_BENCH_H_

#include <string>
#include <vector>

#include "protectability/csv.h"
#include "protectability/types.h"

namespace protectability {

// One cost measurement of the two-attribute contribution pipeline. The
// evaluation count is deterministic given the config (2 attributes x n
// features x M draws x 2 subset evaluations in the sampling modes); wall
// time is not.
struct BenchRow {
  std::string label;  // the M value, or "exact"
  double wall_ms = 0.0;
  uint64_t game_evaluations = 0;
  uint64_t peak_memo_subsets = 0;
};

// Runs the Monte Carlo pipeline once per M value (fresh games each run) and,
// when the table is narrow enough for the configured exact limit, the exact
// pipeline as a final row.
std::vector<BenchRow> RunBench(const Dataset& data,
                               const AnalysisConfig& config,
                               const std::vector<int>& m_values,
                               uint64_t seed);

// m,wall_ms,game_evaluations,peak_memo_subsets
std::string BenchCsv(const std::vector<BenchRow>& rows);

}  // namespace protectability

#endif  // PROTECTABILITY_BENCH_H_
