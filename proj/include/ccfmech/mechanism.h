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
// Liabilities from submitted CCFs: the largest feasible action profile and
// the prioritized, Borda and adjust-towards-the-mean variants.

#ifndef CCFMECH_MECHANISM_H_
#define CCFMECH_MECHANISM_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ccfmech/action_order.h"
#include "ccfmech/ccf.h"
#include "ccfmech/errors.h"

namespace ccfmech {

enum class Variant { kBasic, kPrioritized, kBorda };

const char* VariantName(Variant variant);
std::optional<Variant> ParseVariant(const std::string& name);

struct Submission {
  Ccf ccf;
  bool adjust_to_mean = false;
};

struct Scenario {
  std::vector<std::string> players;
  ActionSpace space;
  std::vector<Submission> submissions;
  Aggregator aggregator;
  Variant variant = Variant::kBasic;
  double epsilon = 1e-9;
  int max_iterations = 10'000;
  int max_points = kDefaultMaxPoints;

  int num_players() const { return static_cast<int>(players.size()); }
  bool StepOnly() const;
};

// Human-readable problems; empty iff the scenario is valid.
std::vector<std::string> ValidateScenario(const Scenario& scenario);
// Throws std::invalid_argument listing all problems.
void CheckScenario(const Scenario& scenario);

struct Liabilities {
  Profile profile;
  // Step CCFs only: the first point whose offer equals the liability.
  std::vector<std::optional<int>> binding;
  int iterations = 0;
};

// M(a)_i = c_i(aggregate(a, i)).
Profile ApplyCommitmentMap(const Profile& profile, const Scenario& scenario);

// a_i <= c_i(aggregate(a, i)) for every player i.
bool CheckFeasible(const Profile& profile, const Scenario& scenario);

// Greatest fixed point of the commitment map, iterated from M(top). If
// `trace` is non-null every iterate is appended to it. Throws
// NonConvergenceError when max_iterations is exhausted.
Liabilities SolveLargestFeasible(const Scenario& scenario,
                                 std::vector<Profile>* trace = nullptr);

std::vector<std::optional<int>> BindingPoints(const Profile& profile,
                                              const Scenario& scenario);

inline constexpr int kNoPoint = -1;

// choice[i] is the index of the point assigned to player i, or kNoPoint.
struct FeasibleAssignment {
  std::vector<int> choice;
  Profile profile;
};

// All feasible point assignments in odometer order (player 0 most
// significant, "none" before point 0). Step-only; throws
// std::invalid_argument otherwise and GuardExceededError if the number of
// assignments exceeds `max_combinations`.
std::vector<FeasibleAssignment> EnumerateFeasibleCombinations(
    const Scenario& scenario,
    std::uint64_t max_combinations = MaxEnumeration());

// Supremum of every player's favourite feasible profile. The result is not
// re-checked for feasibility.
Liabilities SolvePrioritized(const Scenario& scenario);

// Rank-sum score of each assignment; ties in a player's ranking share the
// average rank.
std::vector<double> BordaScores(const std::vector<FeasibleAssignment>& feasible,
                                const Scenario& scenario);

// Borda winner among the feasible assignments. Ties go to the smaller
// profile sum, then to enumeration order.
Liabilities SolveBorda(const Scenario& scenario);

// Replaces point 0 of every flagged player by the mean of the other players'
// point-0 entries (offers clipped to the player's own bounds). All
// replacements are computed from the unmodified submissions.
std::vector<Submission> PreprocessAdjustToMean(
    const std::vector<Submission>& submissions, const ActionSpace& space);

// Full pipeline: adjust-towards-the-mean preprocessing (if any player is
// flagged) followed by the scenario's variant.
Liabilities Solve(const Scenario& scenario);

}  // namespace ccfmech

#endif  // CCFMECH_MECHANISM_H_
