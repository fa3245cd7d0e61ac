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

#include <gtest/gtest.h>

#include "json.hpp"
#include "protectability/generator.h"
#include "testing/oracles.h"

namespace protectability {
namespace {

ProtectabilityReport SampleReport() {
  const auto xor_data = testing::XorDataset();
  AnalysisConfig config;
  config.sampler = SamplerMode::kExact;
  return Ppe(xor_data.table, xor_data.task, xor_data.private_attr, config,
             42);
}

TEST(ReportTest, FixedKeyOrderAndParsability) {
  const std::string text = SerializeReport(SampleReport());
  const auto parsed = nlohmann::json::parse(text);
  EXPECT_EQ(parsed.at("kind"), "p_score");
  EXPECT_EQ(parsed.at("score").get<double>(), 1.0);
  EXPECT_FALSE(parsed.at("degenerate").get<bool>());
  EXPECT_EQ(parsed.at("selected_features"),
            nlohmann::json::array({"z1", "z2"}));
  EXPECT_EQ(parsed.at("contributions").at("task").size(), 2u);
  EXPECT_EQ(parsed.at("config").at("seed").get<uint64_t>(), 42u);
  EXPECT_EQ(parsed.at("config").at("sampler"), "exact");
  EXPECT_EQ(parsed.at("provenance").at("tool_version"), kToolVersion);
  EXPECT_EQ(parsed.at("provenance").at("timestamp"), "");

  // Frozen top-level order.
  const std::vector<std::string> expected_order = {
      "kind",   "score",  "degenerate", "selected_features",
      "contributions", "config", "provenance"};
  size_t cursor = 0;
  for (const std::string& key : expected_order) {
    const size_t at = text.find("\"" + key + "\"", cursor);
    ASSERT_NE(at, std::string::npos) << key;
    cursor = at;
  }
}

TEST(ReportTest, SerializationIsByteStable) {
  EXPECT_EQ(SerializeReport(SampleReport()), SerializeReport(SampleReport()));
}

TEST(ReportTest, TwelveSignificantDigits) {
  ProtectabilityReport report = SampleReport();
  report.score = 1.0 / 3.0;
  const std::string text = SerializeReport(report);
  EXPECT_NE(text.find("\"score\": 0.333333333333,"), std::string::npos)
      << text;
}

TEST(ReportTest, PaperSamplerNoteAppears) {
  ProtectabilityReport report = SampleReport();
  EXPECT_EQ(nlohmann::json::parse(SerializeReport(report))
                .at("provenance")
                .at("estimator_notes"),
            "");
  report.config.sampler = SamplerMode::kPaperLiteral;
  const auto parsed = nlohmann::json::parse(SerializeReport(report));
  EXPECT_NE(parsed.at("provenance").at("estimator_notes").get<std::string>(),
            "");
}

TEST(ReportTest, EvalReportShape) {
  GeneratorSpec spec;
  spec.n_samples = 128;
  spec.seed = 3;
  const Dataset data = Generate(spec).data;
  AnalysisConfig config;
  config.sampler = SamplerMode::kExact;
  const EvalReport report = EmpiricalProtection(
      data.table, data.task, data.private_attr,
      {ParseSchemeDescriptor("gaussian:sigma=0"),
       ParseSchemeDescriptor("prune:features=z7")},
      config, 9);
  const std::string text = SerializeEvalReport(report);
  const auto parsed = nlohmann::json::parse(text);
  EXPECT_EQ(parsed.at("kind"), "ep_report");
  EXPECT_EQ(parsed.at("schemes").size(), 2u);
  EXPECT_EQ(parsed.at("schemes")[0].at("scheme"), "gaussian:sigma=0");
  EXPECT_DOUBLE_EQ(parsed.at("score").get<double>(),
                   report.ep);
  EXPECT_EQ(SerializeEvalReport(report), text);
}

TEST(ReportTest, EscapesStrings) {
  ProtectabilityReport report = SampleReport();
  report.feature_names = {"a\"b", "c\\d"};
  report.selected = {0, 1};
  const auto parsed = nlohmann::json::parse(SerializeReport(report));
  EXPECT_EQ(parsed.at("selected_features")[0], "a\"b");
  EXPECT_EQ(parsed.at("selected_features")[1], "c\\d");
}

}  // namespace
}  // namespace protectability
