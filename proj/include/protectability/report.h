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

#ifndef PROTECTABILITY_REPORT_H_
#define PROTECTABILITY_REPORT_H_

#include <string>

#include "protectability/metrics.h"

namespace protectability {

inline constexpr const char* kToolVersion = "0.1.0";

// Fixed-order JSON emitters. Key order is frozen and floats are written
// with 12 significant digits, so a fixed seed yields byte-identical output.
// `timestamp` is empty unless the caller asks for a wall-clock stamp.
std::string SerializeReport(const ProtectabilityReport& report,
                            const std::string& timestamp = "");
std::string SerializeEvalReport(const EvalReport& report,
                                const std::string& timestamp = "");

// %.12g float formatting shared by the serializers.
std::string JsonFloat(double v);

}  // namespace protectability

#endif  // PROTECTABILITY_REPORT_H_
