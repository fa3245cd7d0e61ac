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

#include "protectability/random.h"

#include <cmath>
#include <stdexcept>

namespace protectability {

uint64_t SplitMix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

int RandomSource::UniformInt(int bound) {
  if (bound <= 0) throw std::invalid_argument("UniformInt bound must be > 0");
  const uint64_t b = static_cast<uint64_t>(bound);
  // Reject the tail that would bias the modulus.
  const uint64_t limit = UINT64_MAX - (UINT64_MAX % b + 1) % b;
  uint64_t r;
  do {
    r = NextU64();
  } while (r > limit);
  return static_cast<int>(r % b);
}

double RandomSource::Normal(double mean, double stddev) {
  // u1 in (0, 1] keeps the log finite.
  const double u1 = 1.0 - NextUnit();
  const double u2 = NextUnit();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double z = radius * std::cos(6.283185307179586476925286766559 * u2);
  return mean + stddev * z;
}

RandomSource RandomSource::Child(uint64_t stream) const {
  return RandomSource(SplitMix64(SplitMix64(seed_) ^ (stream + 1)));
}

}  // namespace protectability
