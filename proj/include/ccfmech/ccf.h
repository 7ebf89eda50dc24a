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
// Conditional commitment functions and the aggregates they condition on.

#ifndef CCFMECH_CCF_H_
#define CCFMECH_CCF_H_

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ccfmech/action_order.h"

namespace ccfmech {

inline constexpr int kDefaultMaxPoints = 4;

// One offer/condition pair: commit to at least `offer` if the aggregate
// reaches `threshold` in every dimension.
struct OfferPoint {
  Action offer;
  std::vector<double> threshold;
};

// k-step CCF. List position is priority, position 0 highest. The committed
// action is the join of all offers whose thresholds are met, or the
// player's bottom action if none is.
struct StepCcf {
  std::vector<OfferPoint> points;
};

// Linear matching with a cap on a single dimension: commit
// min(rate * aggregate[dim], cap) there and the lower bound elsewhere.
struct MatchingCcf {
  int dim = 0;
  double rate = 0.0;
  double cap = 0.0;
};

using Ccf = std::variant<StepCcf, MatchingCcf>;

inline bool IsStep(const Ccf& ccf) {
  return std::holds_alternative<StepCcf>(ccf);
}

enum class AggregatorMode { kWeightedAverage, kMin };

// Empty weights mean equal weights (1/N when normalized, 1 otherwise). With
// normalized == false the weighted mode is a weighted sum, which is how
// absolute totals such as global GtC are expressed.
struct Aggregator {
  AggregatorMode mode = AggregatorMode::kWeightedAverage;
  std::vector<double> weights;
  bool normalized = true;
  bool include_self = true;
};

// Problems with the aggregator for a game with num_players players.
std::vector<std::string> ValidateAggregator(const Aggregator& agg,
                                            int num_players);

// Per-dimension aggregate of the profile as seen by `player`. Throws
// std::invalid_argument if excluding the player leaves nobody (or only zero
// weight) to aggregate over.
std::vector<double> Aggregate(const Profile& profile, int player,
                              const Aggregator& agg);

Action EvaluateCcf(const Ccf& ccf, std::span<const double> aggregate,
                   const Bounds& bounds);

// Indices of the step points whose thresholds are met by `aggregate`.
std::vector<int> SatisfiedPoints(const StepCcf& ccf,
                                 std::span<const double> aggregate);

// True iff a(g) >= b(g) for every aggregate g, and a(g) != b(g) for some g
// when `strict` is set. Exact for step functions: both sides only change
// at threshold corners, which are all visited.
bool StepCcfDominates(const StepCcf& a, const StepCcf& b, const Bounds& bounds,
                      bool strict);

struct CcfContext {
  Bounds bounds;
  int max_points = kDefaultMaxPoints;
};

struct Violation {
  std::optional<int> point;
  std::optional<int> dim;
  std::string message;
};

// Empty iff the CCF is well formed for the given bounds and arity limit.
std::vector<Violation> ValidateCcf(const Ccf& ccf, const CcfContext& context);

std::string FormatViolation(const Violation& v);

}  // namespace ccfmech

#endif  // CCFMECH_CCF_H_
