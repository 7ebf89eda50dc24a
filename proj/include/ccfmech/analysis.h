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
// Brute-force oracles for small games: Pareto front, individual
// rationality, core membership and Nash / strong Nash enumeration of the
// commitment game built on top of a base game.

#ifndef CCFMECH_ANALYSIS_H_
#define CCFMECH_ANALYSIS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ccfmech/ccf.h"
#include "ccfmech/errors.h"
#include "ccfmech/games.h"
#include "ccfmech/mechanism.h"

namespace ccfmech {

// lower, lower + step, ..., upper. Throws std::invalid_argument unless step
// divides the interval evenly.
std::vector<double> GridLevels(double lower, double upper, double step);

// ---------------------------------------------------------------------------
// Commitment game: players submit one-dimensional step CCFs, the mechanism
// turns them into liabilities, and play is the base game's constrained play.

struct CommitmentRules {
  Variant variant = Variant::kBasic;
  Aggregator aggregator;  // equal-weight global average by default
};

struct StrategyOutcome {
  std::vector<double> liabilities;
  std::vector<double> actions;
  std::vector<double> payoffs;
};

class CommitmentGame {
 public:
  CommitmentGame(const BaseGame& game, CommitmentRules rules);

  const BaseGame& game() const { return *game_; }
  const CommitmentRules& rules() const { return rules_; }

  Scenario MakeScenario(const std::vector<StepCcf>& strategies) const;
  StrategyOutcome Play(const std::vector<StepCcf>& strategies) const;

 private:
  const BaseGame* game_;
  CommitmentRules rules_;
  Scenario base_;
};

struct StrategyGrid {
  std::vector<double> action_levels;
  std::vector<double> threshold_levels;
  int k = 1;
  // Keep only points whose threshold is at least their offer.
  bool non_exploitable = false;
};

// The (offer, threshold) pairs a grid strategy may use, offers outermost.
std::vector<OfferPoint> GridPoints(const StrategyGrid& grid);

// All ordered k-tuples of grid points. Throws GuardExceededError beyond
// max_strategies.
std::vector<StepCcf> EnumerateGridStrategies(
    const StrategyGrid& grid, std::uint64_t max_strategies = MaxEnumeration());

// "offer@threshold" pairs joined by ';', e.g. "0.6@0.6".
std::string DescribeStrategy(const StepCcf& strategy);

// ---------------------------------------------------------------------------
// Base-game oracles.

double Welfare(std::span<const double> payoffs);

struct ParetoPoint {
  std::vector<double> actions;
  std::vector<double> payoffs;
};

// Grid profiles not dominated (>= everywhere, > somewhere) by another grid
// profile, in enumeration order (player 0 most significant).
std::vector<ParetoPoint> ParetoFront(const BaseGame& game, double step,
                                     std::uint64_t max_profiles = MaxEnumeration());

// payoff_i(profile) >= payoff_i(disagreement) - tolerance, per player.
std::vector<bool> IsIndividuallyRational(const BaseGame& game,
                                         std::span<const double> profile);

// What players outside a blocking coalition do.
enum class BlockingConvention { kNashReversion, kMinimalAction };

struct CoreVerdict {
  bool in_core = true;
  // Witness when !in_core: coalition members (ascending), their joint
  // deviation and the members' payoffs under it.
  std::vector<int> coalition;
  std::vector<double> deviation;
  std::vector<double> deviation_payoffs;
};

// Scans coalitions by size, then by member indices. The witness deviation
// is the one maximizing the smallest member gain.
CoreVerdict CoreMembership(
    const BaseGame& game, std::span<const double> profile, double step,
    BlockingConvention convention = BlockingConvention::kNashReversion,
    std::uint64_t max_evaluations = MaxEnumeration());

// ---------------------------------------------------------------------------
// Equilibria of the commitment game over grid strategies.

struct EquilibriumOptions {
  CommitmentRules rules;
  int workers = 1;
  std::uint64_t max_evaluations = MaxEnumeration();
};

struct ProfileOutcome {
  std::vector<int> strategies;  // indices into EquilibriumReport::strategies
  StrategyOutcome outcome;
  bool strong = false;
};

struct EquilibriumReport {
  std::vector<StepCcf> strategies;
  std::vector<std::vector<int>> nash;
  std::vector<std::vector<int>> strong;
  // One entry per Nash profile, in the same order as `nash`.
  std::vector<ProfileOutcome> outcomes;
};

// Exhaustive: every strategy profile is played once, then Nash (no strictly
// improving unilateral deviation) and strong (no coalition deviation
// strictly improving every member) are checked. Output is in ascending
// profile order and independent of `workers`.
EquilibriumReport CommitmentEquilibria(const BaseGame& game,
                                       const StrategyGrid& grid,
                                       const EquilibriumOptions& options = {});

// True iff no player gains strictly by switching to any of `alternatives`.
bool IsNashProfile(const CommitmentGame& game,
                   const std::vector<StepCcf>& profile,
                   const std::vector<StepCcf>& alternatives);

}  // namespace ccfmech

#endif  // CCFMECH_ANALYSIS_H_
