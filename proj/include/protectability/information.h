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

#ifndef PROTECTABILITY_INFORMATION_H_
#define PROTECTABILITY_INFORMATION_H_

#include <Eigen/Core>
#include <map>
#include <string>
#include <vector>

#include "protectability/types.h"

namespace protectability {

// Integer-coded view of a FeatureTable. Continuous columns are binned
// equal-width over their observed [min, max]; discrete columns pass through
// unchanged.
struct DiscretizedTable {
  Eigen::MatrixXi codes;        // n_samples x n_features
  std::vector<int> bin_counts;  // per column; codes lie in [0, bin_counts[j])
  std::vector<std::string> names;

  struct Binning {
    bool binned = false;  // true for continuous origins
    double lo = 0.0;
    double hi = 0.0;
  };
  std::vector<Binning> binning;

  int n_samples() const { return static_cast<int>(codes.rows()); }
  int n_features() const { return static_cast<int>(codes.cols()); }
};

// Bins continuous columns into `bins` equal-width bins over [min, max].
// Bin edges are upper-inclusive: the first bin is [lo, lo+w], later bins
// (a, a+w], so the max lands in the top bin and values on an interior edge
// fall to the lower bin. A constant continuous column becomes the single
// code 0. Requires bins >= 2 when any continuous column is present.
DiscretizedTable Discretize(const FeatureTable& table, int bins);

// Dense group ids for the rows of a table restricted to a feature subset:
// two rows share a group iff their code tuples over the subset are equal.
// Ids are numbered by first appearance in row order, which keeps every
// downstream reduction deterministic without hashing.
struct RowGroups {
  std::vector<int> group_of_row;
  std::vector<int> counts;          // per group, all > 0
  std::vector<int> representative;  // first row of each group
  int n_groups = 0;
};

RowGroups GroupRows(const DiscretizedTable& disc, const FeatureSubset& subset);

// Splits every group by the target labels (for joint entropies H(S, Y)).
void RefineByLabels(RowGroups* groups, const AttributeVector& target);

// Plug-in Shannon entropy, base 2, from group counts summing to `total`.
double EntropyBitsFromCounts(const std::vector<int>& counts, int total);

// Plug-in entropy of the empirical label distribution, in bits.
double EntropyBits(const AttributeVector& attr);

// Empirical joint distribution over a subset's code tuples, optionally
// crossed with the target labels (appended as the last key component).
// Cell keys are in canonical (ascending column index) order.
struct JointDistribution {
  std::map<std::vector<int>, double> cells;
  double total_mass = 0.0;

  double EntropyBits() const;
};

JointDistribution BuildJoint(const DiscretizedTable& disc,
                             const FeatureSubset& subset,
                             const AttributeVector* target = nullptr);

// Plug-in mutual information I(Y; Z_S) = H(Y) + H(Z_S) - H(Y, Z_S) on the
// empirical joint, in bits. I(Y; {}) = 0 by definition.
double MutualInformationBits(const DiscretizedTable& disc,
                             const FeatureSubset& subset,
                             const AttributeVector& target);

// I(Y; z_i | S) = I(Y; S u {i}) - I(Y; S). Negative values at rounding
// scale are clamped to 0; i must not be a member of S.
double ConditionalMiBits(const DiscretizedTable& disc, int feature,
                         const FeatureSubset& subset,
                         const AttributeVector& target);

}  // namespace protectability

#endif  // PROTECTABILITY_INFORMATION_H_
