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
// Learning dynamics over the commitment game: better-response revision,
// an episodic policy-gradient learner, and reward shaping by temporary
// altruism.

#ifndef CCFMECH_LEARNING_H_
#define CCFMECH_LEARNING_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ccfmech/analysis.h"

namespace ccfmech {

// r'_i = (1 - alpha) r_i + alpha mean(r). Throws unless alpha is in [0, 1].
std::vector<double> ShapedReward(std::span<const double> payoffs, double alpha);

enum class ScheduleKind { kConstantThenZero, kLinearDecayThenZero };

const char* ScheduleKindName(ScheduleKind kind);

struct AltruismSchedule {
  ScheduleKind kind = ScheduleKind::kConstantThenZero;
  double alpha0 = 0.0;
  int total_episodes = 1;
};

// First episode of the final third, ceil(2 T / 3). Alpha is zero from here.
int AltruismCutoff(const AltruismSchedule& schedule);

// Throws std::out_of_range unless 0 <= episode < total_episodes.
double AlphaAt(const AltruismSchedule& schedule, int episode);

struct EpisodeRecord {
  int episode = 0;
  std::vector<std::string> strategies;
  std::vector<double> liabilities;
  std::vector<double> actions;
  std::vector<double> payoffs;
  std::vector<double> shaped;
  double welfare = 0.0;
  double alpha = 0.0;
  int adoptions = 0;
  bool greedy = false;
};

struct AdoptionEvent {
  int round = 0;
  int player = 0;
  double payoff_before = 0.0;
  double payoff_after = 0.0;
  // False for payoff-neutral adoptions of a more cooperative CCF.
  bool improving = true;
};

struct Trajectory {
  std::uint64_t seed = 0;
  std::string config_hash;
  std::vector<EpisodeRecord> records;
  std::vector<AdoptionEvent> adoptions;
  std::vector<StepCcf> final_strategies;
  bool converged = false;

  double TerminalWelfare() const { return records.empty() ? 0.0 : records.back().welfare; }
};

struct DynamicsConfig {
  // grid.non_exploitable restricts revisions to points with threshold >= offer.
  StrategyGrid grid;
  int max_rounds = 200;
  // Candidates examined per revision; 0 examines the whole neighbourhood.
  int candidate_samples = 0;
  std::uint64_t seed = 0;
};

// Every player submits k copies of the lowest grid point.
std::vector<StepCcf> BottomStrategies(const StrategyGrid& grid, int num_players);

// `current` with one point replaced by a grid point, for every slot and
// every admissible point, excluding `current` itself.
std::vector<StepCcf> RevisionCandidates(const StepCcf& current,
                                        const StrategyGrid& grid);

// Sweeps over players in a random order per sweep. A revising player
// examines candidate CCFs in random order and adopts the first that
// strictly raises their payoff; failing that, the first one that leaves
// their payoff unchanged and is pointwise more cooperative than their
// current CCF. Stops after a sweep with no adoption, or after max_rounds.
// records[0] is the starting state; records[r] is the state after sweep r.
Trajectory BetterResponseDynamics(const CommitmentGame& game,
                                  const DynamicsConfig& config,
                                  const std::vector<StepCcf>* initial = nullptr);

struct PolicyGradientConfig {
  StrategyGrid grid;
  int episodes = 3000;
  double learning_rate = 50.0;
  double baseline_rate = 0.05;
  // total_episodes must equal episodes.
  AltruismSchedule schedule;
  std::uint64_t seed = 0;
};

void ValidatePolicyGradientConfig(const PolicyGradientConfig& config);

// Independent softmax policies over grid strategies, one per player,
// trained with the score-function gradient on shaped rewards against a
// running-mean baseline (initialized to the first reward). The last record
// is the greedy evaluation of the final policies.
Trajectory PolicyGradientTrain(const CommitmentGame& game,
                               const PolicyGradientConfig& config);

}  // namespace ccfmech

#endif  // CCFMECH_LEARNING_H_
