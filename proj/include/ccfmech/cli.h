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
// Command-line front end: solve, analyze, learn and repro-appendix.
//
// Exit codes: 0 success, 1 failed self-check (repro-appendix), 2 parse or
// configuration error, 3 fixed-point iteration did not converge, 4 an
// enumeration guard was exceeded.

#ifndef CCFMECH_CLI_H_
#define CCFMECH_CLI_H_

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "ccfmech/analysis.h"
#include "ccfmech/games.h"
#include "ccfmech/learning.h"

namespace ccfmech {

enum ExitCode {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitConfig = 2,
  kExitNonConvergence = 3,
  kExitGuard = 4,
};

// A learning experiment as read from a config file:
//
//   {
//     "schemaVersion": 1,
//     "algo": "br",
//     "game": {"players": 2, "beta": 0.09, "gamma": 0.3},
//     "variant": "basic",
//     "aggregator": {"mode": "weightedAverage", "includeSelf": true},
//     "grid": {"step": 0.05, "k": 4, "nonExploitable": true},
//     "br": {"maxRounds": 200, "candidateSamples": 0},
//     "pg": {"episodes": 3000, "learningRate": 50, "baselineRate": 0.05,
//            "schedule": {"kind": "linearDecayThenZero", "alpha0": 0.0}}
//   }
//
// Every field is optional. Missing grid fields default per algorithm:
// step 0.05 and k 4 for br, step 0.1 and k 1 for pg, non-exploitable
// points in both cases.
struct LearnSetup {
  std::string algo = "br";
  PublicGoodsParams game;
  CommitmentRules rules;
  double grid_step = 0.0;  // 0 selects the per-algorithm default
  int k = 0;               // 0 selects the per-algorithm default
  bool non_exploitable = true;
  int max_rounds = 200;
  int candidate_samples = 0;
  int episodes = 3000;
  double learning_rate = 50.0;
  double baseline_rate = 0.05;
  ScheduleKind schedule = ScheduleKind::kLinearDecayThenZero;
  double alpha0 = 0.0;
};

// Throws ScenarioParseError with a field path on malformed input.
LearnSetup LearnSetupFromJson(const nlohmann::json& doc);

StrategyGrid LearnGrid(const LearnSetup& setup);

// One trajectory per seed, computed on `workers` threads; results are in
// seed order regardless of the worker count.
std::vector<Trajectory> RunLearning(const LearnSetup& setup,
                                    const std::vector<std::uint64_t>& seeds,
                                    int workers);

// Text of run_<seed>.csv for one trajectory.
std::string TrajectoryCsv(const Trajectory& trajectory, int num_players);

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

}  // namespace ccfmech

#endif  // CCFMECH_CLI_H_
