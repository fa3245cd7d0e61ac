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

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "protectability/bench.h"
#include "protectability/csv.h"
#include "protectability/generator.h"
#include "protectability/metrics.h"
#include "protectability/report.h"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;

struct CommonOpts {
  std::string data;
  std::string schema;
  double epsilon = 0.05;
  int samples = 100;
  uint64_t seed = 0;
  int bins = 16;
  std::string estimator = "mi";
  std::string sampler = "unbiased";
  int threads = 1;
  std::string out;
  bool stamp = false;
};

void AddCommon(CLI::App* cmd, CommonOpts* opts) {
  cmd->add_option("--data", opts->data, "Input CSV path")->required();
  cmd->add_option("--schema", opts->schema,
                  "Column roles, e.g. task=ya,private=ypri (remaining "
                  "columns are features)")
      ->required();
  cmd->add_option("--epsilon", opts->epsilon,
                  "Protectable-feature leakage budget in bits");
  cmd->add_option("--samples", opts->samples,
                  "Monte Carlo subset draws per feature (M)");
  cmd->add_option("--seed", opts->seed, "Random seed (fixed seed => "
                  "byte-identical report)");
  cmd->add_option("--bins", opts->bins,
                  "Equal-width bins for continuous columns");
  cmd->add_option("--estimator", opts->estimator,
                  "Predictive power estimator: mi|loss");
  cmd->add_option("--sampler", opts->sampler,
                  "Contribution sampler: exact|unbiased|paper");
  cmd->add_option("--threads", opts->threads,
                  "Worker bound for parallel sections (0 = auto)");
  cmd->add_option("--out", opts->out, "Write output to a file instead of "
                  "standard output");
  cmd->add_flag("--stamp", opts->stamp,
                "Fill provenance.timestamp with wall-clock time (off keeps "
                "reports reproducible)");
}

protectability::SchemaSpec ParseSchema(const std::string& text) {
  protectability::SchemaSpec schema;
  std::string token;
  auto take = [&schema](const std::string& t) {
    const size_t eq = t.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("schema entries are role=column: '" + t +
                                  "'");
    }
    const std::string role = t.substr(0, eq);
    const std::string column = t.substr(eq + 1);
    if (column.empty()) {
      throw std::invalid_argument("schema column name is empty in '" + t +
                                  "'");
    }
    if (role == "task") {
      if (!schema.task_column.empty()) {
        throw std::invalid_argument("schema names the task column twice");
      }
      schema.task_column = column;
    } else if (role == "private") {
      if (!schema.private_column.empty()) {
        throw std::invalid_argument("schema names the private column twice");
      }
      schema.private_column = column;
    } else {
      throw std::invalid_argument("unknown schema role '" + role +
                                  "' (expected task|private)");
    }
  };
  for (char c : text + ",") {
    if (c == ',') {
      if (!token.empty()) take(token);
      token.clear();
    } else {
      token += c;
    }
  }
  if (schema.task_column.empty() || schema.private_column.empty()) {
    throw std::invalid_argument(
        "schema must name exactly one task and one private column");
  }
  return schema;
}

protectability::AnalysisConfig MakeConfig(const CommonOpts& opts) {
  protectability::AnalysisConfig config;
  config.epsilon = opts.epsilon;
  config.m_samples = opts.samples;
  config.bins = opts.bins;
  if (opts.estimator == "mi") {
    config.estimator = protectability::Estimator::kMutualInformation;
  } else if (opts.estimator == "loss") {
    config.estimator = protectability::Estimator::kLoss;
  } else {
    throw std::invalid_argument("--estimator must be mi|loss");
  }
  if (opts.sampler == "exact") {
    config.sampler = protectability::SamplerMode::kExact;
  } else if (opts.sampler == "unbiased") {
    config.sampler = protectability::SamplerMode::kUnbiased;
  } else if (opts.sampler == "paper") {
    config.sampler = protectability::SamplerMode::kPaperLiteral;
  } else {
    throw std::invalid_argument("--sampler must be exact|unbiased|paper");
  }
  config.threads = opts.threads;
  config.Validate();
  return config;
}

std::string Timestamp(bool stamp) {
  if (!stamp) return "";
  const std::time_t now = std::chrono::system_clock::to_time_t(
      std::chrono::system_clock::now());
  char buf[32];
  std::tm tm_utc;
  gmtime_r(&now, &tm_utc);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

void WriteOutput(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw protectability::DataError(path + ": cannot open file for writing");
  }
  out << text;
  if (!out) throw protectability::DataError(path + ": write failed");
}

std::vector<int> ParseMList(const std::string& text) {
  std::vector<int> out;
  std::string token;
  for (char c : text + ",") {
    if (c == ',') {
      if (!token.empty()) {
        size_t used = 0;
        int m = 0;
        try {
          m = std::stoi(token, &used);
        } catch (const std::exception&) {
          throw std::invalid_argument("bad M value '" + token + "'");
        }
        if (used != token.size() || m < 1) {
          throw std::invalid_argument("M values must be positive ints: '" +
                                      token + "'");
        }
        out.push_back(m);
      }
      token.clear();
    } else {
      token += c;
    }
  }
  if (out.empty()) throw std::invalid_argument("--m-list is empty");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Quantifies how well a tabular feature stream can be privacy-protected "
      "for an analytics task: Shapley contribution scores, P-score, LP-score, "
      "and an empirical protection baseline."};
  app.set_version_flag("--version", protectability::kToolVersion);
  app.require_subcommand(1);

  // gen
  CLI::App* gen = app.add_subcommand(
      "gen", "Generate a synthetic dataset (CSV plus a .meta.json sidecar)");
  std::string gen_family = "overlap";
  protectability::GeneratorSpec gen_spec;
  std::string gen_out;
  gen->add_option("--family", gen_family,
                  "Dataset family: xor|copy|overlap|gaussianmix");
  gen->add_option("--rows", gen_spec.n_samples, "Number of samples");
  gen->add_option("--seed", gen_spec.seed, "Generator seed");
  gen->add_option("--rho", gen_spec.rho,
                  "Overlap fraction of shared features that leak the "
                  "private attribute");
  gen->add_option("--n-task", gen_spec.n_task, "Task-only feature count");
  gen->add_option("--n-shared", gen_spec.n_shared, "Shared feature count");
  gen->add_option("--n-private", gen_spec.n_private,
                  "Private-only feature count");
  gen->add_option("--n-noise", gen_spec.n_noise, "Noise feature count");
  gen->add_option("--out", gen_out, "Output CSV path")->required();

  // ppe
  CLI::App* ppe = app.add_subcommand(
      "ppe", "Estimate privacy protectability (P-score report as JSON)");
  CommonOpts ppe_opts;
  AddCommon(ppe, &ppe_opts);

  // lp
  CLI::App* lp = app.add_subcommand(
      "lp", "Estimate level of protection under a scheme (LP-score report)");
  CommonOpts lp_opts;
  std::string lp_scheme;
  AddCommon(lp, &lp_opts);
  lp->add_option("--scheme", lp_scheme,
                 "Scheme descriptor: gaussian:sigma=F | calibrated:sigma=F | "
                 "prune:features=A,B | quantize:levels=K")
      ->required();

  // ep
  CLI::App* ep = app.add_subcommand(
      "ep", "Empirical protection baseline over a set of schemes");
  CommonOpts ep_opts;
  std::vector<std::string> ep_schemes;
  AddCommon(ep, &ep_opts);
  ep->add_option("--scheme", ep_schemes,
                 "Scheme descriptor (repeat for several schemes)")
      ->required();

  // bench
  CLI::App* bench = app.add_subcommand(
      "bench", "Measure pipeline cost per sample size (CSV)");
  CommonOpts bench_opts;
  std::string m_list = "50,100,150,200";
  AddCommon(bench, &bench_opts);
  bench->add_option("--m-list", m_list, "Comma-separated M values");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (gen->parsed()) {
      gen_spec.family = protectability::FamilyFromName(gen_family);
      protectability::WriteDataset(protectability::Generate(gen_spec),
                                   gen_out);
      std::cerr << "wrote " << gen_out << " and " << gen_out << ".meta.json\n";
      return 0;
    }
    if (ppe->parsed()) {
      const auto dataset = protectability::LoadTable(
          ppe_opts.data, ParseSchema(ppe_opts.schema));
      const auto report = protectability::Ppe(
          dataset.table, dataset.task, dataset.private_attr,
          MakeConfig(ppe_opts), ppe_opts.seed);
      WriteOutput(ppe_opts.out, protectability::SerializeReport(
                                    report, Timestamp(ppe_opts.stamp)));
      return 0;
    }
    if (lp->parsed()) {
      const auto dataset =
          protectability::LoadTable(lp_opts.data, ParseSchema(lp_opts.schema));
      const auto scheme = protectability::ParseSchemeDescriptor(lp_scheme);
      const auto report = protectability::Lpe(
          dataset.table, dataset.task, dataset.private_attr, scheme,
          MakeConfig(lp_opts), lp_opts.seed);
      WriteOutput(lp_opts.out, protectability::SerializeReport(
                                   report, Timestamp(lp_opts.stamp)));
      return 0;
    }
    if (ep->parsed()) {
      const auto dataset =
          protectability::LoadTable(ep_opts.data, ParseSchema(ep_opts.schema));
      std::vector<protectability::PerturbationScheme> schemes;
      schemes.reserve(ep_schemes.size());
      for (const std::string& text : ep_schemes) {
        schemes.push_back(protectability::ParseSchemeDescriptor(text));
      }
      const auto report = protectability::EmpiricalProtection(
          dataset.table, dataset.task, dataset.private_attr, schemes,
          MakeConfig(ep_opts), ep_opts.seed);
      WriteOutput(ep_opts.out, protectability::SerializeEvalReport(
                                   report, Timestamp(ep_opts.stamp)));
      return 0;
    }
    if (bench->parsed()) {
      const auto dataset = protectability::LoadTable(
          bench_opts.data, ParseSchema(bench_opts.schema));
      const auto rows = protectability::RunBench(
          dataset, MakeConfig(bench_opts), ParseMList(m_list),
          bench_opts.seed);
      WriteOutput(bench_opts.out, protectability::BenchCsv(rows));
      return 0;
    }
  } catch (const protectability::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
