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

#ifndef PROTECTABILITY_CSV_H_
#define PROTECTABILITY_CSV_H_

#include <string>

#include "protectability/types.h"

namespace protectability {

// Role assignment for the input columns: one task column, one private
// column (the same column may serve both roles); the rest are features.
struct SchemaSpec {
  std::string task_column;
  std::string private_column;
};

struct Dataset {
  FeatureTable table;
  AttributeVector task;
  AttributeVector private_attr;
  std::string task_name;
  std::string private_name;
};

// CSV contract: header row with unique names, comma separated, UTF-8, '.'
// decimal separator, no missing values. A column whose cells all parse as
// finite numbers is continuous, unless every value is an integer in
// [0, 255] (then it is discrete with cardinality max+1); any non-numeric
// cell makes the column categorical, coded by first appearance. Explicit
// nan/inf cells are errors. Attribute columns must be integer codes or
// categorical strings.
Dataset ParseCsvText(const std::string& text, const SchemaSpec& schema,
                     const std::string& origin);

// Reads and validates a CSV file under the contract above. Errors carry
// line numbers and column names.
Dataset LoadTable(const std::string& path, const SchemaSpec& schema);

// Writer for the same contract; continuous cells use shortest round-trip
// formatting so save -> load reproduces the table exactly.
std::string CsvText(const Dataset& dataset);
void WriteCsv(const std::string& path, const Dataset& dataset);

}  // namespace protectability

#endif  // PROTECTABILITY_CSV_H_
