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

#include "protectability/generator.h"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "protectability/random.h"
#include "protectability/report.h"

namespace protectability {
namespace {

// Flip rates and the Gaussian class shift; frozen so the sidecars fully
// determine the generating process.
constexpr double kSharedTaskFlip = 0.18;
constexpr double kWeakTaskFlip = 0.40;
constexpr double kPrivateFlip = 0.10;
constexpr double kWeakPrivateFlip = 0.40;
constexpr double kClassShift = 2.0;

// Private-only slots are staggered: the first tracks ypri strongly, later
// ones weakly (their solo information stays under usual epsilon budgets).
double PrivateFlip(int slot) {
  return slot == 0 ? kPrivateFlip : kWeakPrivateFlip;
}

struct Builder {
  int rows;
  Eigen::MatrixXd data;
  std::vector<ColumnInfo> infos;

  Builder(int rows, int cols) : rows(rows), data(rows, cols) {}

  void Name(int col, ColumnKind kind, int cardinality) {
    infos.push_back({"z" + std::to_string(col + 1), kind, cardinality});
  }
};

int Flip(int bit, double p, RandomSource& rng) {
  return rng.NextUnit() < p ? 1 - bit : bit;
}

Dataset Finish(Builder&& b, Eigen::VectorXi ya, Eigen::VectorXi ypri) {
  // Cardinality is data-derived (max code + 1), matching the CSV loader so
  // generated tables round-trip exactly.
  for (size_t j = 0; j < b.infos.size(); ++j) {
    if (b.infos[j].kind == ColumnKind::kDiscrete) {
      b.infos[j].cardinality =
          static_cast<int>(b.data.col(static_cast<int>(j)).maxCoeff()) + 1;
    }
  }
  const int task_card = ya.maxCoeff() + 1;
  const int private_card = ypri.maxCoeff() + 1;
  return Dataset{FeatureTable(std::move(b.data), std::move(b.infos)),
                 AttributeVector(std::move(ya), task_card),
                 AttributeVector(std::move(ypri), private_card), "ya", "ypri"};
}

Dataset GenerateXor(const GeneratorSpec& spec) {
  Builder b(spec.n_samples, 2);
  Eigen::VectorXi ya(spec.n_samples), ypri(spec.n_samples);
  RandomSource rng(spec.seed);
  for (int r = 0; r < spec.n_samples; ++r) {
    int z1, z2, p;
    if (spec.n_samples == 4) {
      z1 = (r >> 1) & 1, z2 = r & 1, p = 0;
    } else if (spec.n_samples == 8) {
      z1 = (r >> 2) & 1, z2 = (r >> 1) & 1, p = r & 1;
    } else {
      z1 = rng.UniformInt(2), z2 = rng.UniformInt(2), p = rng.UniformInt(2);
    }
    b.data(r, 0) = z1;
    b.data(r, 1) = z2;
    ya[r] = z1 ^ z2;
    ypri[r] = p;
  }
  b.Name(0, ColumnKind::kDiscrete, 2);
  b.Name(1, ColumnKind::kDiscrete, 2);
  return Finish(std::move(b), std::move(ya), std::move(ypri));
}

Dataset GenerateCopy(const GeneratorSpec& spec) {
  Builder b(spec.n_samples, 2);
  Eigen::VectorXi ya(spec.n_samples), ypri(spec.n_samples);
  RandomSource rng(spec.seed);
  for (int r = 0; r < spec.n_samples; ++r) {
    int y, z2;
    if (spec.n_samples == 4) {
      y = (r >> 1) & 1, z2 = r & 1;
    } else {
      y = rng.UniformInt(2), z2 = rng.UniformInt(2);
    }
    b.data(r, 0) = y;
    b.data(r, 1) = z2;
    ya[r] = y;
    ypri[r] = y;
  }
  b.Name(0, ColumnKind::kDiscrete, 2);
  b.Name(1, ColumnKind::kDiscrete, 2);
  return Finish(std::move(b), std::move(ya), std::move(ypri));
}

int LeakCount(const GeneratorSpec& spec) {
  return static_cast<int>(std::llround(spec.rho * spec.n_shared));
}

Dataset GenerateOverlap(const GeneratorSpec& spec) {
  const int n = spec.n_task + spec.n_shared + spec.n_private + spec.n_noise;
  const int leak_count = LeakCount(spec);
  Builder b(spec.n_samples, n);
  Eigen::VectorXi ya(spec.n_samples), ypri(spec.n_samples);
  RandomSource rng(spec.seed);
  for (int r = 0; r < spec.n_samples; ++r) {
    const int y = rng.UniformInt(2);
    const int p = rng.UniformInt(2);
    ya[r] = y;
    ypri[r] = p;
    int col = 0;
    for (int j = 0; j < spec.n_task; ++j) {
      b.data(r, col++) = Flip(y, kWeakTaskFlip, rng);
    }
    for (int j = 0; j < spec.n_shared; ++j) {
      const int low = Flip(y, kSharedTaskFlip, rng);
      // A leaking slot's high bit tracks ypri; otherwise it copies the low
      // bit so the slot carries no extra entropy. The draw happens either
      // way to keep the rest of the stream aligned across rho values.
      const int leak_bit = Flip(p, kPrivateFlip, rng);
      const int high = j < leak_count ? leak_bit : low;
      b.data(r, col++) = low + 2 * high;
    }
    for (int j = 0; j < spec.n_private; ++j) {
      b.data(r, col++) = Flip(p, PrivateFlip(j), rng);
    }
    for (int j = 0; j < spec.n_noise; ++j) {
      b.data(r, col++) = rng.UniformInt(2);
    }
  }
  int col = 0;
  for (int j = 0; j < spec.n_task; ++j) b.Name(col++, ColumnKind::kDiscrete, 2);
  for (int j = 0; j < spec.n_shared; ++j)
    b.Name(col++, ColumnKind::kDiscrete, 4);
  for (int j = 0; j < spec.n_private; ++j)
    b.Name(col++, ColumnKind::kDiscrete, 2);
  for (int j = 0; j < spec.n_noise; ++j)
    b.Name(col++, ColumnKind::kDiscrete, 2);
  return Finish(std::move(b), std::move(ya), std::move(ypri));
}

Dataset GenerateGaussianMix(const GeneratorSpec& spec) {
  const int n = spec.n_task + spec.n_shared + spec.n_private + spec.n_noise;
  Builder b(spec.n_samples, n);
  Eigen::VectorXi ya(spec.n_samples), ypri(spec.n_samples);
  RandomSource rng(spec.seed);
  for (int r = 0; r < spec.n_samples; ++r) {
    const int y = rng.UniformInt(2);
    const int p = rng.UniformInt(2);
    ya[r] = y;
    ypri[r] = p;
    int col = 0;
    for (int j = 0; j < spec.n_task; ++j) {
      b.data(r, col++) = rng.Normal(kClassShift * y, 1.0);
    }
    for (int j = 0; j < spec.n_shared; ++j) {
      b.data(r, col++) = rng.Normal(kClassShift * (y + p), 1.0);
    }
    for (int j = 0; j < spec.n_private; ++j) {
      b.data(r, col++) = rng.Normal(kClassShift * p, 1.0);
    }
    for (int j = 0; j < spec.n_noise; ++j) {
      b.data(r, col++) = rng.Normal(0.0, 1.0);
    }
  }
  for (int j = 0; j < n; ++j) b.Name(j, ColumnKind::kContinuous, 0);
  return Finish(std::move(b), std::move(ya), std::move(ypri));
}

std::string Sidecar(const GeneratorSpec& spec, const Dataset& data) {
  std::string out = "{\n";
  out += "  \"family\": \"" + std::string(FamilyName(spec.family)) + "\",\n";
  out += "  \"n_samples\": " + std::to_string(spec.n_samples) + ",\n";
  out += "  \"seed\": " + std::to_string(spec.seed) + ",\n";
  out += "  \"rho\": " + JsonFloat(spec.rho) + ",\n";
  out += "  \"n_task\": " + std::to_string(spec.n_task) + ",\n";
  out += "  \"n_shared\": " + std::to_string(spec.n_shared) + ",\n";
  out += "  \"n_private\": " + std::to_string(spec.n_private) + ",\n";
  out += "  \"n_noise\": " + std::to_string(spec.n_noise) + ",\n";
  if (spec.family == GeneratorFamily::kOverlap) {
    out += "  \"leak_count\": " + std::to_string(LeakCount(spec)) + ",\n";
    out += "  \"shared_task_flip\": " + JsonFloat(kSharedTaskFlip) + ",\n";
    out += "  \"weak_task_flip\": " + JsonFloat(kWeakTaskFlip) + ",\n";
    out += "  \"private_flips\": [";
    for (int j = 0; j < spec.n_private; ++j) {
      if (j > 0) out += ", ";
      out += JsonFloat(PrivateFlip(j));
    }
    out += "],\n";
  }
  if (spec.family == GeneratorFamily::kGaussianMix) {
    out += "  \"class_shift\": " + JsonFloat(kClassShift) + ",\n";
  }
  out += "  \"feature_columns\": [";
  for (int j = 0; j < data.table.n_features(); ++j) {
    if (j > 0) out += ", ";
    out += "\"" + data.table.name(j) + "\"";
  }
  out += "],\n";
  out += "  \"task_column\": \"ya\",\n";
  out += "  \"private_column\": \"ypri\"\n";
  out += "}\n";
  return out;
}

}  // namespace

const char* FamilyName(GeneratorFamily family) {
  switch (family) {
    case GeneratorFamily::kXor:
      return "xor";
    case GeneratorFamily::kCopy:
      return "copy";
    case GeneratorFamily::kOverlap:
      return "overlap";
    case GeneratorFamily::kGaussianMix:
      return "gaussianmix";
  }
  return "unknown";
}

GeneratorFamily FamilyFromName(const std::string& name) {
  if (name == "xor") return GeneratorFamily::kXor;
  if (name == "copy") return GeneratorFamily::kCopy;
  if (name == "overlap") return GeneratorFamily::kOverlap;
  if (name == "gaussianmix") return GeneratorFamily::kGaussianMix;
  throw std::invalid_argument("unknown generator family '" + name +
                              "' (expected xor|copy|overlap|gaussianmix)");
}

void GeneratorSpec::Validate() const {
  if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
  if (rho < 0.0 || rho > 1.0) {
    throw std::invalid_argument("rho must be in [0, 1]");
  }
  if (n_task < 0 || n_shared < 0 || n_private < 0 || n_noise < 0) {
    throw std::invalid_argument("feature group counts must be >= 0");
  }
  if (family == GeneratorFamily::kOverlap ||
      family == GeneratorFamily::kGaussianMix) {
    if (n_task + n_shared + n_private + n_noise < 1) {
      throw std::invalid_argument("need at least one feature column");
    }
  }
}

GeneratedDataset Generate(const GeneratorSpec& spec) {
  spec.Validate();
  Dataset data = [&] {
    switch (spec.family) {
      case GeneratorFamily::kXor:
        return GenerateXor(spec);
      case GeneratorFamily::kCopy:
        return GenerateCopy(spec);
      case GeneratorFamily::kOverlap:
        return GenerateOverlap(spec);
      case GeneratorFamily::kGaussianMix:
        return GenerateGaussianMix(spec);
    }
    throw std::invalid_argument("unknown generator family");
  }();
  std::string sidecar = Sidecar(spec, data);
  return GeneratedDataset{std::move(data), std::move(sidecar)};
}

void WriteDataset(const GeneratedDataset& dataset,
                  const std::string& csv_path) {
  WriteCsv(csv_path, dataset.data);
  const std::string meta_path = csv_path + ".meta.json";
  std::ofstream meta(meta_path, std::ios::binary);
  if (!meta) throw DataError(meta_path + ": cannot open file for writing");
  meta << dataset.sidecar_json;
  if (!meta) throw DataError(meta_path + ": write failed");
}

}  // namespace protectability
