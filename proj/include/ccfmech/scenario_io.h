// Copyright 2026 The ccfmech Authors
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
// JSON scenario files.
//
//   {
//     "schemaVersion": 1,
//     "players": ["A", "B"],
//     "variables": [{"name": "mitigation", "min": 0, "max": 1}],
//     "playerBounds": {"A": {"min": [0], "max": [0.5]}},        (optional)
//     "aggregator": {"mode": "weightedAverage", "weights": [],
//                    "normalized": true, "includeSelf": true},
//     "submissions": [
//       {"player": "A", "type": "step", "adjustToMean": false,
//        "points": [{"offer": [0.6], "threshold": [0.6]}]},
//       {"player": "B", "type": "matching", "dim": "mitigation",
//        "rate": 0.5, "cap": 1}
//     ],
//     "variant": "basic", "epsilon": 1e-9, "maxIterations": 10000,
//     "maxPoints": 4
//   }
//
// One-dimensional offers and thresholds may be written as bare numbers.

#ifndef CCFMECH_SCENARIO_IO_H_
#define CCFMECH_SCENARIO_IO_H_

#include <stdexcept>
#include <string>

#include "json.hpp"

#include "ccfmech/mechanism.h"

namespace ccfmech {

inline constexpr int kSchemaVersion = 1;

// Carries a diagnostic of the form "<field path>: <problem>", e.g.
// "submissions[1] (player B).points[0]: missing field 'threshold'".
class ScenarioParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Scenario ScenarioFromJson(const nlohmann::json& doc);
Scenario ParseScenario(const std::string& text);
Scenario LoadScenario(const std::string& path);

nlohmann::json ScenarioToJson(const Scenario& scenario);
std::string SerializeScenario(const Scenario& scenario);

// FNV-1a of the canonical serialization, as 16 hex digits.
std::string ScenarioHash(const Scenario& scenario);

// Reads a whole file; throws ScenarioParseError if it cannot be opened.
std::string ReadFile(const std::string& path);

}  // namespace ccfmech

#endif  // CCFMECH_SCENARIO_IO_H_
