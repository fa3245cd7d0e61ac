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

#include "protectability/types.h"

#include <cmath>
#include <unordered_set>

namespace protectability {

FeatureTable::FeatureTable(Eigen::MatrixXd data,
                           std::vector<ColumnInfo> columns)
    : data_(std::move(data)), columns_(std::move(columns)) {
  if (data_.rows() < 1) throw DataError("feature table needs n_samples >= 1");
  if (data_.cols() < 1) throw DataError("feature table needs >= 1 column");
  if (static_cast<size_t>(data_.cols()) != columns_.size()) {
    throw DataError("column metadata count does not match data width");
  }
  std::unordered_set<std::string> seen;
  for (int j = 0; j < n_features(); ++j) {
    const ColumnInfo& info = columns_[j];
    if (info.name.empty()) throw DataError("column names must be nonempty");
    if (!seen.insert(info.name).second) {
      throw DataError("duplicate column name '" + info.name + "'");
    }
    for (int r = 0; r < n_samples(); ++r) {
      const double v = data_(r, j);
      if (!std::isfinite(v)) {
        throw DataError("non-finite value in column '" + info.name +
                        "', row " + std::to_string(r));
      }
      if (info.kind == ColumnKind::kDiscrete) {
        if (v != std::floor(v) || v < 0.0 ||
            v >= static_cast<double>(info.cardinality)) {
          throw DataError("discrete column '" + info.name + "', row " +
                          std::to_string(r) +
                          ": code out of [0, cardinality)");
        }
      }
    }
    if (info.kind == ColumnKind::kDiscrete && info.cardinality < 1) {
      throw DataError("discrete column '" + info.name +
                      "' needs cardinality >= 1");
    }
  }
}

std::vector<std::string> FeatureTable::names() const {
  std::vector<std::string> out;
  out.reserve(columns_.size());
  for (const ColumnInfo& c : columns_) out.push_back(c.name);
  return out;
}

int FeatureTable::IndexOf(const std::string& name) const {
  for (size_t j = 0; j < columns_.size(); ++j) {
    if (columns_[j].name == name) return static_cast<int>(j);
  }
  return -1;
}

bool FeatureTable::operator==(const FeatureTable& other) const {
  if (n_samples() != other.n_samples() || n_features() != other.n_features())
    return false;
  for (int j = 0; j < n_features(); ++j) {
    if (columns_[j].name != other.columns_[j].name ||
        columns_[j].kind != other.columns_[j].kind ||
        columns_[j].cardinality != other.columns_[j].cardinality)
      return false;
  }
  // Bitwise comparison; tables round-trip through our CSV writer exactly.
  for (int j = 0; j < n_features(); ++j)
    for (int r = 0; r < n_samples(); ++r)
      if (data_(r, j) != other.data_(r, j)) return false;
  return true;
}

AttributeVector::AttributeVector(Eigen::VectorXi labels, int cardinality)
    : labels_(std::move(labels)), cardinality_(cardinality) {
  if (cardinality_ < 1) throw DataError("attribute cardinality must be >= 1");
  for (int r = 0; r < labels_.size(); ++r) {
    if (labels_[r] < 0 || labels_[r] >= cardinality_) {
      throw DataError("attribute code out of [0, cardinality) at row " +
                      std::to_string(r));
    }
  }
}

bool AttributeVector::operator==(const AttributeVector& other) const {
  return cardinality_ == other.cardinality_ && labels_ == other.labels_;
}

FeatureSubset::FeatureSubset(std::vector<int> indices)
    : indices_(std::move(indices)) {
  for (size_t k = 0; k < indices_.size(); ++k) {
    if (indices_[k] < 0 || indices_[k] >= 64) {
      throw std::invalid_argument("feature index out of [0, 64)");
    }
    if (k > 0 && indices_[k] <= indices_[k - 1]) {
      throw std::invalid_argument(
          "feature subset indices must be strictly increasing");
    }
  }
}

FeatureSubset FeatureSubset::FromMask(uint64_t mask) {
  std::vector<int> idx;
  for (int i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1u) idx.push_back(i);
  }
  return FeatureSubset(std::move(idx));
}

FeatureSubset FeatureSubset::Full(int n) {
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  return FeatureSubset(std::move(idx));
}

bool FeatureSubset::contains(int i) const {
  for (int v : indices_) {
    if (v == i) return true;
    if (v > i) return false;
  }
  return false;
}

uint64_t FeatureSubset::mask() const {
  uint64_t m = 0;
  for (int v : indices_) m |= (uint64_t{1} << v);
  return m;
}

FeatureSubset FeatureSubset::With(int i) const {
  if (contains(i)) {
    throw std::invalid_argument("feature already in subset");
  }
  std::vector<int> idx;
  idx.reserve(indices_.size() + 1);
  bool placed = false;
  for (int v : indices_) {
    if (!placed && i < v) {
      idx.push_back(i);
      placed = true;
    }
    idx.push_back(v);
  }
  if (!placed) idx.push_back(i);
  return FeatureSubset(std::move(idx));
}

const char* EstimatorName(Estimator e) {
  return e == Estimator::kMutualInformation ? "mi" : "loss";
}

const char* SamplerName(SamplerMode s) {
  switch (s) {
    case SamplerMode::kExact:
      return "exact";
    case SamplerMode::kUnbiased:
      return "unbiased";
    case SamplerMode::kPaperLiteral:
      return "paper";
  }
  return "unknown";
}

void AnalysisConfig::Validate() const {
  if (epsilon < 0.0) throw std::invalid_argument("epsilon must be >= 0");
  if (m_samples < 1) throw std::invalid_argument("m_samples must be >= 1");
  if (bins < 1) throw std::invalid_argument("bins must be >= 1");
  if (degenerate_tolerance <= 0.0) {
    throw std::invalid_argument("degenerate_tolerance must be > 0");
  }
  if (protectability_threshold < 0.0 || protectability_threshold > 1.0) {
    throw std::invalid_argument("protectability_threshold must be in [0, 1]");
  }
  if (exact_limit < 1) throw std::invalid_argument("exact_limit must be >= 1");
  if (threads < 0) throw std::invalid_argument("threads must be >= 0");
}

void ValidatePair(const FeatureTable& table, const AttributeVector& attr) {
  if (table.n_samples() != attr.n_samples()) {
    throw DataError("attribute length " + std::to_string(attr.n_samples()) +
                    " does not match table n_samples " +
                    std::to_string(table.n_samples()));
  }
  // Code range is an AttributeVector construction invariant; re-check so a
  // hand-built pair fails loudly here rather than deep in an estimator.
  for (int r = 0; r < attr.n_samples(); ++r) {
    if (attr.label(r) < 0 || attr.label(r) >= attr.cardinality()) {
      throw DataError("attribute code out of range at row " +
                      std::to_string(r));
    }
  }
}

}  // namespace protectability
