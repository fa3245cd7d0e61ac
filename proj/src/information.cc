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

#include "protectability/information.h"

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace protectability {
namespace {

// Scratch for the (group, code) -> new group id mapping. Epoch stamping
// makes reuse O(1) instead of refilling the table on every refinement.
struct RefineScratch {
  std::vector<uint64_t> stamp;
  std::vector<int> value;
  uint64_t epoch = 0;

  void Prepare(size_t size) {
    if (stamp.size() < size) {
      stamp.resize(size, 0);
      value.resize(size, 0);
    }
    ++epoch;
  }
};

thread_local RefineScratch t_scratch;

// One refinement step: split existing groups by an integer column with
// values in [0, card). Group ids stay numbered by first appearance.
template <typename CodeAt>
int RefineGroups(std::vector<int>* group_of_row, int n_groups, int card,
                 CodeAt code_at) {
  RefineScratch& scratch = t_scratch;
  scratch.Prepare(static_cast<size_t>(n_groups) * card);
  std::vector<int>& groups = *group_of_row;
  int next_id = 0;
  for (size_t r = 0; r < groups.size(); ++r) {
    const size_t key =
        static_cast<size_t>(groups[r]) * card + code_at(static_cast<int>(r));
    if (scratch.stamp[key] != scratch.epoch) {
      scratch.stamp[key] = scratch.epoch;
      scratch.value[key] = next_id++;
    }
    groups[r] = scratch.value[key];
  }
  return next_id;
}

void FinishGroups(RowGroups* out) {
  out->counts.assign(out->n_groups, 0);
  out->representative.assign(out->n_groups, -1);
  for (size_t r = 0; r < out->group_of_row.size(); ++r) {
    const int g = out->group_of_row[r];
    if (out->counts[g] == 0) out->representative[g] = static_cast<int>(r);
    ++out->counts[g];
  }
}

}  // namespace

DiscretizedTable Discretize(const FeatureTable& table, int bins) {
  const int n = table.n_features();
  const int rows = table.n_samples();
  for (int j = 0; j < n; ++j) {
    if (table.column(j).kind == ColumnKind::kContinuous && bins < 2) {
      throw std::invalid_argument(
          "bins must be >= 2 to discretize continuous columns");
    }
  }
  DiscretizedTable disc;
  disc.codes.resize(rows, n);
  disc.bin_counts.resize(n);
  disc.binning.resize(n);
  disc.names = table.names();
  for (int j = 0; j < n; ++j) {
    const ColumnInfo& info = table.column(j);
    if (info.kind == ColumnKind::kDiscrete) {
      for (int r = 0; r < rows; ++r) {
        disc.codes(r, j) = static_cast<int>(table.data()(r, j));
      }
      disc.bin_counts[j] = info.cardinality;
      continue;
    }
    const double lo = table.data().col(j).minCoeff();
    const double hi = table.data().col(j).maxCoeff();
    disc.binning[j] = {true, lo, hi};
    if (lo == hi) {
      disc.codes.col(j).setZero();
      disc.bin_counts[j] = 1;
      continue;
    }
    const double width = (hi - lo) / bins;
    for (int r = 0; r < rows; ++r) {
      const double x = table.data()(r, j);
      int code = static_cast<int>(std::ceil((x - lo) / width)) - 1;
      if (code < 0) code = 0;
      if (code >= bins) code = bins - 1;
      disc.codes(r, j) = code;
    }
    disc.bin_counts[j] = bins;
  }
  return disc;
}

RowGroups GroupRows(const DiscretizedTable& disc, const FeatureSubset& subset) {
  RowGroups out;
  out.group_of_row.assign(disc.n_samples(), 0);
  out.n_groups = 1;
  for (int col : subset.indices()) {
    if (col < 0 || col >= disc.n_features()) {
      throw std::invalid_argument("subset index out of table range");
    }
    const auto column = disc.codes.col(col);
    out.n_groups = RefineGroups(&out.group_of_row, out.n_groups,
                                disc.bin_counts[col],
                                [&column](int r) { return column(r); });
  }
  FinishGroups(&out);
  return out;
}

void RefineByLabels(RowGroups* groups, const AttributeVector& target) {
  if (static_cast<int>(groups->group_of_row.size()) != target.n_samples()) {
    throw std::invalid_argument("target length does not match grouping");
  }
  groups->n_groups =
      RefineGroups(&groups->group_of_row, groups->n_groups,
                   target.cardinality(),
                   [&target](int r) { return target.label(r); });
  FinishGroups(groups);
}

double EntropyBitsFromCounts(const std::vector<int>& counts, int total) {
  if (total <= 0) throw std::invalid_argument("entropy needs total > 0");
  long double acc = 0.0L;
  for (int c : counts) {
    if (c > 1) acc += static_cast<long double>(c) * std::log2(static_cast<long double>(c));
  }
  long double h = std::log2(static_cast<long double>(total)) -
                  acc / static_cast<long double>(total);
  if (h < 0.0L) h = 0.0L;  // single-group rounding
  return static_cast<double>(h);
}

double EntropyBits(const AttributeVector& attr) {
  std::vector<int> counts(attr.cardinality(), 0);
  for (int r = 0; r < attr.n_samples(); ++r) ++counts[attr.label(r)];
  return EntropyBitsFromCounts(counts, attr.n_samples());
}

double JointDistribution::EntropyBits() const {
  long double acc = 0.0L;
  for (const auto& [key, p] : cells) {
    if (p > 0.0) acc -= static_cast<long double>(p) * std::log2(static_cast<long double>(p));
  }
  return static_cast<double>(acc);
}

JointDistribution BuildJoint(const DiscretizedTable& disc,
                             const FeatureSubset& subset,
                             const AttributeVector* target) {
  RowGroups groups = GroupRows(disc, subset);
  if (target != nullptr) RefineByLabels(&groups, *target);
  JointDistribution joint;
  const double n = static_cast<double>(disc.n_samples());
  for (int g = 0; g < groups.n_groups; ++g) {
    const int row = groups.representative[g];
    std::vector<int> key;
    key.reserve(subset.size() + (target != nullptr ? 1 : 0));
    for (int col : subset.indices()) key.push_back(disc.codes(row, col));
    if (target != nullptr) key.push_back(target->label(row));
    joint.cells.emplace(std::move(key), groups.counts[g] / n);
  }
  for (const auto& [key, p] : joint.cells) joint.total_mass += p;
  return joint;
}

double MutualInformationBits(const DiscretizedTable& disc,
                             const FeatureSubset& subset,
                             const AttributeVector& target) {
  if (disc.n_samples() != target.n_samples()) {
    throw std::invalid_argument("target length does not match table");
  }
  if (subset.empty()) return 0.0;
  RowGroups groups = GroupRows(disc, subset);
  const double h_s =
      EntropyBitsFromCounts(groups.counts, disc.n_samples());
  RefineByLabels(&groups, target);
  const double h_sy =
      EntropyBitsFromCounts(groups.counts, disc.n_samples());
  return EntropyBits(target) + h_s - h_sy;
}

double ConditionalMiBits(const DiscretizedTable& disc, int feature,
                         const FeatureSubset& subset,
                         const AttributeVector& target) {
  if (subset.contains(feature)) {
    throw std::invalid_argument("conditional MI: feature already in subset");
  }
  const double v = MutualInformationBits(disc, subset.With(feature), target) -
                   MutualInformationBits(disc, subset, target);
  if (v < 0.0 && v > -1e-6) return 0.0;
  return v;
}

}  // namespace protectability
