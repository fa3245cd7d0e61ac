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

#include "protectability/report.h"

#include <cstdio>

namespace protectability {
namespace {

constexpr const char* kPaperSamplerNote =
    "paper-literal sampler: sum of w_S*mu over draws scaled by 2^(n-1)/M "
    "for consistency";

std::string Escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      case '\r':
        out += "\\r";
        break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

void AppendString(std::string* out, const std::string& s) {
  *out += '"';
  *out += Escape(s);
  *out += '"';
}

void AppendNameArray(std::string* out, const std::vector<std::string>& names) {
  *out += '[';
  for (size_t k = 0; k < names.size(); ++k) {
    if (k > 0) *out += ", ";
    AppendString(out, names[k]);
  }
  *out += ']';
}

void AppendFloatArray(std::string* out, const Eigen::VectorXd& v) {
  *out += '[';
  for (int k = 0; k < v.size(); ++k) {
    if (k > 0) *out += ", ";
    *out += JsonFloat(v[k]);
  }
  *out += ']';
}

void AppendConfig(std::string* out, const AnalysisConfig& config,
                  const std::string& scheme, uint64_t seed) {
  char buf[32];
  *out += "  \"config\": {\n";
  *out += "    \"epsilon\": " + JsonFloat(config.epsilon) + ",\n";
  *out += "    \"m_samples\": " + std::to_string(config.m_samples) + ",\n";
  *out += "    \"bins\": " + std::to_string(config.bins) + ",\n";
  *out += "    \"estimator\": ";
  AppendString(out, EstimatorName(config.estimator));
  *out += ",\n    \"sampler\": ";
  AppendString(out, SamplerName(config.sampler));
  *out += ",\n    \"degenerate_tolerance\": " +
          JsonFloat(config.degenerate_tolerance) + ",\n";
  *out += "    \"protectability_threshold\": " +
          JsonFloat(config.protectability_threshold) + ",\n";
  *out += "    \"scheme\": ";
  AppendString(out, scheme);
  std::snprintf(buf, sizeof(buf), "%llu", static_cast<unsigned long long>(seed));
  *out += ",\n    \"seed\": ";
  *out += buf;
  *out += "\n  },\n";
}

void AppendProvenance(std::string* out, const std::string& timestamp,
                      bool paper_sampler) {
  *out += "  \"provenance\": {\n";
  *out += "    \"tool_version\": ";
  AppendString(out, kToolVersion);
  *out += ",\n    \"timestamp\": ";
  AppendString(out, timestamp);
  *out += ",\n    \"estimator_notes\": ";
  AppendString(out, paper_sampler ? kPaperSamplerNote : "");
  *out += "\n  }\n";
}

}  // namespace

std::string JsonFloat(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string SerializeReport(const ProtectabilityReport& report,
                            const std::string& timestamp) {
  std::string out = "{\n";
  out += "  \"kind\": ";
  AppendString(&out,
               report.kind == ReportKind::kPScore ? "p_score" : "lp_score");
  out += ",\n  \"score\": " + JsonFloat(report.score);
  out += ",\n  \"degenerate\": ";
  out += report.degenerate ? "true" : "false";
  out += ",\n  \"selected_features\": ";
  std::vector<std::string> selected_names;
  selected_names.reserve(report.selected.size());
  for (int i : report.selected) selected_names.push_back(report.feature_names.at(i));
  AppendNameArray(&out, selected_names);
  out += ",\n  \"contributions\": {\n    \"task\": ";
  AppendFloatArray(&out, report.task_contributions.values);
  out += ",\n    \"private\": ";
  AppendFloatArray(&out, report.private_contributions.values);
  out += "\n  },\n";
  AppendConfig(&out, report.config, report.scheme_descriptor, report.seed);
  AppendProvenance(&out, timestamp,
                   report.config.sampler == SamplerMode::kPaperLiteral);
  out += "}\n";
  return out;
}

std::string SerializeEvalReport(const EvalReport& report,
                                const std::string& timestamp) {
  std::string out = "{\n";
  out += "  \"kind\": ";
  AppendString(&out, "ep_report");
  out += ",\n  \"score\": " + JsonFloat(report.ep);
  out += ",\n  \"degenerate\": false";
  out += ",\n  \"schemes\": [\n";
  for (size_t k = 0; k < report.schemes.size(); ++k) {
    const SchemeEval& e = report.schemes[k];
    out += "    {\"scheme\": ";
    AppendString(&out, e.descriptor);
    out += ", \"acc_task\": " + JsonFloat(e.acc_task);
    out += ", \"acc_private\": " + JsonFloat(e.acc_private);
    out += ", \"ep\": " + JsonFloat(e.ep);
    out += k + 1 < report.schemes.size() ? "},\n" : "}\n";
  }
  out += "  ],\n";
  AppendConfig(&out, report.config, "", report.seed);
  AppendProvenance(&out, timestamp,
                   report.config.sampler == SamplerMode::kPaperLiteral);
  out += "}\n";
  return out;
}

}  // namespace protectability
