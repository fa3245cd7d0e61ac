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

#ifndef PROTECTABILITY_TYPES_H_
#define PROTECTABILITY_TYPES_H_

#include <Eigen/Core>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace protectability {

// Raised for malformed input files and table/attribute invariant violations.
// Messages carry row/column locations where the input makes that possible.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

enum class ColumnKind { kDiscrete, kContinuous };

struct ColumnInfo {
  std::string name;
  ColumnKind kind = ColumnKind::kContinuous;
  // Discrete columns only: codes lie in [0, cardinality).
  int cardinality = 0;
};

// An n_samples x n_features table of feature values. Discrete columns store
// integer codes (as doubles); continuous columns store finite reals.
// Immutable after construction; safe to share across threads.
class FeatureTable {
 public:
  FeatureTable(Eigen::MatrixXd data, std::vector<ColumnInfo> columns);

  int n_samples() const { return static_cast<int>(data_.rows()); }
  int n_features() const { return static_cast<int>(data_.cols()); }
  const Eigen::MatrixXd& data() const { return data_; }
  const std::vector<ColumnInfo>& columns() const { return columns_; }
  const ColumnInfo& column(int i) const { return columns_.at(i); }
  const std::string& name(int i) const { return columns_.at(i).name; }
  std::vector<std::string> names() const;

  // Index of the named column, or -1 when absent.
  int IndexOf(const std::string& name) const;

  bool operator==(const FeatureTable& other) const;

 private:
  Eigen::MatrixXd data_;
  std::vector<ColumnInfo> columns_;
};

// Per-sample discrete labels for a task or private attribute.
class AttributeVector {
 public:
  AttributeVector(Eigen::VectorXi labels, int cardinality);

  int n_samples() const { return static_cast<int>(labels_.size()); }
  int cardinality() const { return cardinality_; }
  const Eigen::VectorXi& labels() const { return labels_; }
  int label(int row) const { return labels_[row]; }

  bool operator==(const AttributeVector& other) const;

 private:
  Eigen::VectorXi labels_;
  int cardinality_ = 0;
};

// A strictly increasing set of column indices. The empty set and the full
// set are both valid coalitions.
class FeatureSubset {
 public:
  FeatureSubset() = default;
  explicit FeatureSubset(std::vector<int> indices);

  static FeatureSubset FromMask(uint64_t mask);
  static FeatureSubset Full(int n);

  const std::vector<int>& indices() const { return indices_; }
  int size() const { return static_cast<int>(indices_.size()); }
  bool empty() const { return indices_.empty(); }
  bool contains(int i) const;
  uint64_t mask() const;

  // S with feature i added; i must not already be a member.
  FeatureSubset With(int i) const;

  bool operator==(const FeatureSubset& other) const {
    return indices_ == other.indices_;
  }

 private:
  std::vector<int> indices_;
};

enum class Estimator { kMutualInformation, kLoss };
enum class SamplerMode { kExact, kUnbiased, kPaperLiteral };

const char* EstimatorName(Estimator e);
const char* SamplerName(SamplerMode s);

// Knobs shared by the estimation pipelines. Defaults: epsilon = 0.05 bits,
// m_samples = 100, bins = 16, MI estimator with the unbiased sampler.
struct AnalysisConfig {
  double epsilon = 0.05;
  int m_samples = 100;
  int bins = 16;
  Estimator estimator = Estimator::kMutualInformation;
  SamplerMode sampler = SamplerMode::kUnbiased;
  double degenerate_tolerance = 1e-9;
  double protectability_threshold = 0.7;
  // Exact enumeration is refused above this feature count.
  int exact_limit = 16;
  // Worker bound for the parallel sections; 0 means hardware concurrency.
  // Results are bit-identical for any value.
  int threads = 1;

  void Validate() const;  // throws std::invalid_argument
};

// Checks that attr pairs with table: equal lengths and in-range codes.
void ValidatePair(const FeatureTable& table, const AttributeVector& attr);

}  // namespace protectability

#endif  // PROTECTABILITY_TYPES_H_
