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

#include "protectability/csv.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace protectability {
namespace {

constexpr int kMaxDiscreteCode = 255;

std::vector<std::string> SplitLine(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(cell);
      cell.clear();
    } else {
      cell += c;
    }
  }
  cells.push_back(cell);
  return cells;
}

std::string Lower(const std::string& s) {
  std::string out = s;
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

bool IsExplicitNonFinite(const std::string& cell) {
  const std::string low = Lower(cell);
  return low == "nan" || low == "-nan" || low == "+nan" || low == "inf" ||
         low == "-inf" || low == "+inf" || low == "infinity" ||
         low == "-infinity" || low == "+infinity";
}

// Full-cell numeric parse; rejects non-finite results.
bool ParseNumber(const std::string& cell, double* out) {
  if (cell.empty()) return false;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  const auto result = std::from_chars(first, last, *out);
  return result.ec == std::errc() && result.ptr == last && std::isfinite(*out);
}

struct RawColumn {
  std::string name;
  std::vector<std::string> cells;
};

struct CodedColumn {
  Eigen::VectorXd values;
  ColumnKind kind = ColumnKind::kContinuous;
  int cardinality = 0;
};

void RejectUnusableCell(const std::string& cell, const std::string& column,
                        const std::string& origin, int line) {
  if (cell.empty()) {
    throw DataError(origin + ":" + std::to_string(line) +
                    ": missing value in column '" + column + "'");
  }
  if (IsExplicitNonFinite(cell)) {
    throw DataError(origin + ":" + std::to_string(line) +
                    ": non-finite value '" + cell + "' in column '" + column +
                    "'");
  }
}

CodedColumn CodeColumn(const RawColumn& column, const std::string& origin,
                       const std::vector<int>& line_numbers) {
  const int rows = static_cast<int>(column.cells.size());
  CodedColumn out;
  out.values.resize(rows);

  bool numeric = true;
  for (int r = 0; r < rows; ++r) {
    RejectUnusableCell(column.cells[r], column.name, origin, line_numbers[r]);
    if (numeric) numeric = ParseNumber(column.cells[r], &out.values[r]);
  }

  if (numeric) {
    bool small_codes = true;
    for (int r = 0; r < rows && small_codes; ++r) {
      const double v = out.values[r];
      small_codes = v == std::floor(v) && v >= 0.0 && v <= kMaxDiscreteCode;
    }
    if (small_codes) {
      out.kind = ColumnKind::kDiscrete;
      out.cardinality = static_cast<int>(out.values.maxCoeff()) + 1;
    }
    return out;
  }

  // Categorical: integer codes by first appearance, for determinism.
  std::map<std::string, int> codes;
  int next = 0;
  for (int r = 0; r < rows; ++r) {
    auto [it, inserted] = codes.emplace(column.cells[r], next);
    if (inserted) ++next;
    out.values[r] = it->second;
  }
  out.kind = ColumnKind::kDiscrete;
  out.cardinality = next;
  return out;
}

AttributeVector CodeAttribute(const RawColumn& column,
                              const std::string& origin,
                              const std::vector<int>& line_numbers) {
  const int rows = static_cast<int>(column.cells.size());
  Eigen::VectorXi labels(rows);

  bool numeric = true;
  std::vector<double> parsed(rows);
  for (int r = 0; r < rows; ++r) {
    RejectUnusableCell(column.cells[r], column.name, origin, line_numbers[r]);
    if (numeric) numeric = ParseNumber(column.cells[r], &parsed[r]);
  }

  if (numeric) {
    int max_code = 0;
    for (int r = 0; r < rows; ++r) {
      if (parsed[r] != std::floor(parsed[r]) || parsed[r] < 0.0 ||
          parsed[r] > 1e6) {
        throw DataError(origin + ":" + std::to_string(line_numbers[r]) +
                        ": attribute column '" + column.name +
                        "' needs nonnegative integer class codes, got '" +
                        column.cells[r] + "'");
      }
      labels[r] = static_cast<int>(parsed[r]);
      max_code = std::max(max_code, labels[r]);
    }
    return AttributeVector(std::move(labels), max_code + 1);
  }

  std::map<std::string, int> codes;
  int next = 0;
  for (int r = 0; r < rows; ++r) {
    auto [it, inserted] = codes.emplace(column.cells[r], next);
    if (inserted) ++next;
    labels[r] = it->second;
  }
  return AttributeVector(std::move(labels), next);
}

void AppendNumber(std::string* out, double v, bool discrete) {
  if (discrete) {
    *out += std::to_string(static_cast<long long>(v));
    return;
  }
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), v);
  out->append(buf, result.ptr);
}

}  // namespace

Dataset ParseCsvText(const std::string& text, const SchemaSpec& schema,
                     const std::string& origin) {
  if (schema.task_column.empty() || schema.private_column.empty()) {
    throw std::invalid_argument(
        "schema must name one task column and one private column");
  }

  std::vector<std::string> lines;
  {
    std::string line;
    std::istringstream in(text);
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      lines.push_back(line);
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
  }
  if (lines.empty()) throw DataError(origin + ": empty file");

  const std::vector<std::string> header = SplitLine(lines[0]);
  const int width = static_cast<int>(header.size());
  for (int j = 0; j < width; ++j) {
    if (header[j].empty()) {
      throw DataError(origin + ":1: empty column name at position " +
                      std::to_string(j + 1));
    }
  }

  auto find_column = [&](const std::string& name) {
    for (int j = 0; j < width; ++j) {
      if (header[j] == name) return j;
    }
    throw DataError(origin + ": schema names unknown column '" + name + "'");
  };
  const int task_col = find_column(schema.task_column);
  const int private_col = find_column(schema.private_column);

  if (lines.size() < 2) throw DataError(origin + ": no data rows");

  std::vector<RawColumn> raw(width);
  for (int j = 0; j < width; ++j) raw[j].name = header[j];
  std::vector<int> line_numbers;
  for (size_t k = 1; k < lines.size(); ++k) {
    const std::vector<std::string> cells = SplitLine(lines[k]);
    if (static_cast<int>(cells.size()) != width) {
      throw DataError(origin + ":" + std::to_string(k + 1) + ": row has " +
                      std::to_string(cells.size()) + " cells, expected " +
                      std::to_string(width));
    }
    for (int j = 0; j < width; ++j) raw[j].cells.push_back(cells[j]);
    line_numbers.push_back(static_cast<int>(k + 1));
  }

  std::vector<ColumnInfo> infos;
  std::vector<int> feature_cols;
  for (int j = 0; j < width; ++j) {
    if (j == task_col || j == private_col) continue;
    feature_cols.push_back(j);
  }
  if (feature_cols.empty()) {
    throw DataError(origin + ": no feature columns left after the schema");
  }

  Eigen::MatrixXd data(static_cast<int>(line_numbers.size()),
                       static_cast<int>(feature_cols.size()));
  for (size_t f = 0; f < feature_cols.size(); ++f) {
    const CodedColumn coded =
        CodeColumn(raw[feature_cols[f]], origin, line_numbers);
    data.col(static_cast<int>(f)) = coded.values;
    infos.push_back({raw[feature_cols[f]].name, coded.kind, coded.cardinality});
  }

  return Dataset{FeatureTable(std::move(data), std::move(infos)),
                 CodeAttribute(raw[task_col], origin, line_numbers),
                 CodeAttribute(raw[private_col], origin, line_numbers),
                 schema.task_column, schema.private_column};
}

Dataset LoadTable(const std::string& path, const SchemaSpec& schema) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(path + ": cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseCsvText(buffer.str(), schema, path);
}

std::string CsvText(const Dataset& dataset) {
  const FeatureTable& table = dataset.table;
  std::string out;
  for (int j = 0; j < table.n_features(); ++j) {
    out += table.name(j);
    out += ',';
  }
  out += dataset.task_name;
  out += ',';
  out += dataset.private_name;
  out += '\n';
  for (int r = 0; r < table.n_samples(); ++r) {
    for (int j = 0; j < table.n_features(); ++j) {
      AppendNumber(&out, table.data()(r, j),
                   table.column(j).kind == ColumnKind::kDiscrete);
      out += ',';
    }
    out += std::to_string(dataset.task.label(r));
    out += ',';
    out += std::to_string(dataset.private_attr.label(r));
    out += '\n';
  }
  return out;
}

void WriteCsv(const std::string& path, const Dataset& dataset) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError(path + ": cannot open file for writing");
  out << CsvText(dataset);
  if (!out) throw DataError(path + ": write failed");
}

}  // namespace protectability
