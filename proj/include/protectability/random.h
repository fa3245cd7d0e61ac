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

#ifndef PROTECTABILITY_RANDOM_H_
#define PROTECTABILITY_RANDOM_H_

#include <cstdint>
#include <random>

namespace protectability {

// Deterministic random source. The raw stream is std::mt19937_64 (fully
// specified by the standard); the distribution draws are implemented here so
// that sequences are identical across platforms and standard-library
// versions. Equal seeds produce equal draw sequences of any length.
//
// A source is single-owner. Parallel work takes independently derived child
// sources (Child(stream)) so results do not depend on scheduling.
class RandomSource {
 public:
  static constexpr const char* kAlgorithmId = "mt19937_64/box-muller.v1";

  explicit RandomSource(uint64_t seed) : seed_(seed), engine_(seed) {}

  uint64_t seed() const { return seed_; }

  uint64_t NextU64() { return engine_(); }

  // Uniform on [0, 1), 53-bit resolution.
  double NextUnit() {
    return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound); unbiased via rejection.
  int UniformInt(int bound);

  // Box-Muller; the second variate of each pair is discarded so the draw
  // count per call is fixed.
  double Normal(double mean, double stddev);

  // Independent stream derived from (seed, stream index). Children of equal
  // (seed, stream) are identical; distinct streams are uncorrelated.
  RandomSource Child(uint64_t stream) const;

 private:
  uint64_t seed_;
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer; used for child-seed derivation and stable hashing.
uint64_t SplitMix64(uint64_t x);

}  // namespace protectability

#endif  // PROTECTABILITY_RANDOM_H_
