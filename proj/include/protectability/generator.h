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

#ifndef PROTECTABILITY_GENERATOR_H_
#define PROTECTABILITY_GENERATOR_H_

#include <string>

#include "protectability/csv.h"
#include "protectability/types.h"

namespace protectability {

// Synthetic families with known dependence structure. Feature columns are
// named z1..zn in generation order (task-only, shared, private-only, noise);
// attributes are "ya" and "ypri".
//
//   xor          z1, z2 fair bits, ya = z1 xor z2, ypri independent.
//                n_samples == 4 is the exhaustive truth table (ypri = 0);
//                n_samples == 8 enumerates (z1, z2, ypri).
//   copy         z1 = ya = ypri, z2 an independent bit. n_samples == 4 is
//                the exhaustive (ya, z2) table.
//   overlap      binary attributes; n_task weak task-only bits, n_shared
//                4-ary features whose low bit tracks ya and whose high bit
//                either tracks ypri (a leaking slot) or copies the low bit,
//                n_private bits tracking ypri (the first strongly, later
//                ones weakly), n_noise fair coins. round(rho * n_shared)
//                slots leak, so rho is the fraction of doubly informative
//                shared features.
//   gaussianmix  continuous columns with class-shifted means under the same
//                count layout (shared columns shift with both attributes).
enum class GeneratorFamily { kXor, kCopy, kOverlap, kGaussianMix };

const char* FamilyName(GeneratorFamily family);
GeneratorFamily FamilyFromName(const std::string& name);

struct GeneratorSpec {
  GeneratorFamily family = GeneratorFamily::kOverlap;
  int n_samples = 2048;
  uint64_t seed = 0;
  double rho = 0.5;
  int n_task = 2;
  int n_shared = 4;
  int n_private = 1;
  int n_noise = 1;

  void Validate() const;  // throws std::invalid_argument
};

struct GeneratedDataset {
  Dataset data;
  std::string sidecar_json;  // exact generating parameters
};

GeneratedDataset Generate(const GeneratorSpec& spec);

// CSV to `csv_path`, generating parameters to `csv_path + ".meta.json"`.
void WriteDataset(const GeneratedDataset& dataset,
                  const std::string& csv_path);

}  // namespace protectability

#endif  // PROTECTABILITY_GENERATOR_H_
