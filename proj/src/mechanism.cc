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
#include "ccfmech/mechanism.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>

namespace ccfmech {
namespace {

void CheckShape(const Scenario& s) {
  const int n = s.num_players();
  if (n < 1) throw std::invalid_argument("scenario has no players");
  if (static_cast<int>(s.submissions.size()) != n ||
      s.space.num_players() != n) {
    throw std::invalid_argument(
        "scenario players, submissions and action space disagree on the "
        "number of players");
  }
}

void CheckStepOnly(const Scenario& s, const char* op) {
  if (!s.StepOnly()) {
    throw std::invalid_argument(std::string(op) +
                                " requires step CCFs for every player");
  }
}

int NumPoints(const Scenario& s, int player) {
  return static_cast<int>(
      std::get<StepCcf>(s.submissions[player].ccf).points.size());
}

// Lower is better; "none" ranks after every point.
int PriorityKey(const Scenario& s, int player, int choice) {
  return choice == kNoPoint ? NumPoints(s, player) : choice;
}

Profile InducedProfile(const Scenario& s, const std::vector<int>& choice) {
  Profile p;
  p.reserve(choice.size());
  for (std::size_t i = 0; i < choice.size(); ++i) {
    if (choice[i] == kNoPoint) {
      p.push_back(s.space.Bottom(static_cast<int>(i)));
    } else {
      p.push_back(std::get<StepCcf>(s.submissions[i].ccf).points[choice[i]].offer);
    }
  }
  return p;
}

double ProfileSum(const Profile& p) {
  double sum = 0.0;
  for (const Action& a : p) {
    for (double x : a) sum += x;
  }
  return sum;
}

Liabilities MakeLiabilities(Profile profile, const Scenario& s, int iterations) {
  Liabilities out;
  out.binding = BindingPoints(profile, s);
  out.profile = std::move(profile);
  out.iterations = iterations;
  return out;
}

}  // namespace

const char* VariantName(Variant variant) {
  switch (variant) {
    case Variant::kBasic:
      return "basic";
    case Variant::kPrioritized:
      return "prioritized";
    case Variant::kBorda:
      return "borda";
  }
  return "?";
}

std::optional<Variant> ParseVariant(const std::string& name) {
  if (name == "basic") return Variant::kBasic;
  if (name == "prioritized") return Variant::kPrioritized;
  if (name == "borda") return Variant::kBorda;
  return std::nullopt;
}

bool Scenario::StepOnly() const {
  return std::all_of(submissions.begin(), submissions.end(),
                     [](const Submission& s) { return IsStep(s.ccf); });
}

std::vector<std::string> ValidateScenario(const Scenario& s) {
  std::vector<std::string> problems;
  const int n = s.num_players();
  if (n < 1) problems.push_back("scenario needs at least one player");
  if (s.space.num_players() != n) {
    problems.push_back("action space is sized for " +
                       std::to_string(s.space.num_players()) + " players, not " +
                       std::to_string(n));
  }
  if (s.space.num_dims() < 1) problems.push_back("action space has no dimensions");
  if (static_cast<int>(s.submissions.size()) != n) {
    problems.push_back("expected one submission per player");
  }
  if (!(s.epsilon > 0.0) || !std::isfinite(s.epsilon)) {
    problems.push_back("epsilon must be positive");
  }
  if (s.max_iterations < 1) problems.push_back("maxIterations must be >= 1");
  if (s.max_points < 1) problems.push_back("maxPoints must be >= 1");
  for (const std::string& p : ValidateAggregator(s.aggregator, n)) {
    problems.push_back(p);
  }
  if (!problems.empty()) return problems;

  for (int i = 0; i < n; ++i) {
    CcfContext context{s.space.PlayerBounds(i), s.max_points};
    for (const Violation& v : ValidateCcf(s.submissions[i].ccf, context)) {
      problems.push_back("player " + s.players[i] + ": " + FormatViolation(v));
    }
    if (s.submissions[i].adjust_to_mean) {
      if (!IsStep(s.submissions[i].ccf)) {
        problems.push_back("player " + s.players[i] +
                           ": adjustToMean requires a step CCF");
      }
      if (n < 2) {
        problems.push_back("player " + s.players[i] +
                           ": adjustToMean needs other players");
      }
    }
  }
  if (s.variant != Variant::kBasic && !s.StepOnly()) {
    problems.push_back(std::string("variant '") + VariantName(s.variant) +
                       "' requires step CCFs for every player");
  }
  return problems;
}

void CheckScenario(const Scenario& scenario) {
  std::vector<std::string> problems = ValidateScenario(scenario);
  if (problems.empty()) return;
  std::ostringstream msg;
  msg << "invalid scenario:";
  for (const std::string& p : problems) msg << "\n  " << p;
  throw std::invalid_argument(msg.str());
}

Profile ApplyCommitmentMap(const Profile& profile, const Scenario& s) {
  CheckShape(s);
  if (static_cast<int>(profile.size()) != s.num_players()) {
    throw std::invalid_argument("profile has wrong number of players");
  }
  Profile out;
  out.reserve(profile.size());
  for (int i = 0; i < s.num_players(); ++i) {
    std::vector<double> g = Aggregate(profile, i, s.aggregator);
    out.push_back(EvaluateCcf(s.submissions[i].ccf, g, s.space.PlayerBounds(i)));
  }
  return out;
}

bool CheckFeasible(const Profile& profile, const Scenario& s) {
  Profile committed = ApplyCommitmentMap(profile, s);
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (!LessEqual(profile[i], committed[i])) return false;
  }
  return true;
}

Liabilities SolveLargestFeasible(const Scenario& s, std::vector<Profile>* trace) {
  CheckShape(s);
  Profile current = ApplyCommitmentMap(s.space.TopProfile(), s);
  int iterations = 0;  // steps after the starting iterate M(top)
  if (trace != nullptr) trace->push_back(current);
  while (true) {
    if (iterations >= s.max_iterations) {
      throw NonConvergenceError(
          "largest feasible profile did not converge within " +
              std::to_string(s.max_iterations) + " iterations",
          iterations);
    }
    Profile next = ApplyCommitmentMap(current, s);
    ++iterations;
    if (trace != nullptr) trace->push_back(next);
    if (Equal(next, current, s.epsilon)) {
      return MakeLiabilities(std::move(next), s, iterations);
    }
    current = std::move(next);
  }
}

std::vector<std::optional<int>> BindingPoints(const Profile& profile,
                                              const Scenario& s) {
  std::vector<std::optional<int>> out(profile.size());
  for (std::size_t i = 0; i < profile.size() && i < s.submissions.size(); ++i) {
    const auto* step = std::get_if<StepCcf>(&s.submissions[i].ccf);
    if (step == nullptr) continue;
    for (std::size_t j = 0; j < step->points.size(); ++j) {
      if (step->points[j].offer.size() == profile[i].size() &&
          Compare(step->points[j].offer, profile[i]) == Ordering::kEqual) {
        out[i] = static_cast<int>(j);
        break;
      }
    }
  }
  return out;
}

std::vector<FeasibleAssignment> EnumerateFeasibleCombinations(
    const Scenario& s, std::uint64_t max_combinations) {
  CheckShape(s);
  CheckStepOnly(s, "combination enumeration");
  const int n = s.num_players();
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) {
    total = SaturatingMul(total, static_cast<std::uint64_t>(NumPoints(s, i)) + 1);
  }
  CheckGuard(total, max_combinations, "combination enumeration");

  std::vector<FeasibleAssignment> out;
  std::vector<int> choice(n, kNoPoint);
  while (true) {
    Profile p = InducedProfile(s, choice);
    if (CheckFeasible(p, s)) out.push_back({choice, std::move(p)});
    int i = n - 1;
    while (i >= 0) {
      if (++choice[i] < NumPoints(s, i)) break;
      choice[i] = kNoPoint;
      --i;
    }
    if (i < 0) break;
  }
  return out;
}

Liabilities SolvePrioritized(const Scenario& s) {
  std::vector<FeasibleAssignment> feasible = EnumerateFeasibleCombinations(s);
  Profile result = s.space.BottomProfile();
  for (int i = 0; i < s.num_players(); ++i) {
    int best = NumPoints(s, i);
    for (const FeasibleAssignment& fa : feasible) {
      best = std::min(best, PriorityKey(s, i, fa.choice[i]));
    }
    Profile favourite = s.space.BottomProfile();
    for (const FeasibleAssignment& fa : feasible) {
      if (PriorityKey(s, i, fa.choice[i]) == best) {
        favourite = Join(favourite, fa.profile);
      }
    }
    result = Join(result, favourite);
  }
  return MakeLiabilities(std::move(result), s, 0);
}

std::vector<double> BordaScores(const std::vector<FeasibleAssignment>& feasible,
                                const Scenario& s) {
  const std::size_t m = feasible.size();
  std::vector<double> scores(m, 0.0);
  std::vector<std::size_t> order(m);
  for (int i = 0; i < s.num_players(); ++i) {
    std::vector<int> keys(m);
    for (std::size_t a = 0; a < m; ++a) {
      keys[a] = PriorityKey(s, i, feasible[a].choice[i]);
    }
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return keys[x] < keys[y]; });
    std::size_t start = 0;
    while (start < m) {
      std::size_t stop = start;
      while (stop < m && keys[order[stop]] == keys[order[start]]) ++stop;
      const double rank = 0.5 * static_cast<double>(start + stop - 1);
      for (std::size_t r = start; r < stop; ++r) {
        scores[order[r]] += static_cast<double>(m - 1) - rank;
      }
      start = stop;
    }
  }
  return scores;
}

Liabilities SolveBorda(const Scenario& s) {
  std::vector<FeasibleAssignment> feasible = EnumerateFeasibleCombinations(s);
  // The all-"none" assignment is always feasible, so this never triggers for
  // well-formed scenarios.
  if (feasible.empty()) throw std::logic_error("no feasible assignment");
  std::vector<double> scores = BordaScores(feasible, s);
  std::size_t winner = 0;
  for (std::size_t a = 1; a < feasible.size(); ++a) {
    if (scores[a] > scores[winner]) {
      winner = a;
    } else if (scores[a] == scores[winner] &&
               ProfileSum(feasible[a].profile) <
                   ProfileSum(feasible[winner].profile) - kCompareTolerance) {
      winner = a;
    }
  }
  return MakeLiabilities(feasible[winner].profile, s, 0);
}

std::vector<Submission> PreprocessAdjustToMean(
    const std::vector<Submission>& submissions, const ActionSpace& space) {
  const int n = static_cast<int>(submissions.size());
  bool any = false;
  for (const Submission& sub : submissions) any = any || sub.adjust_to_mean;
  if (!any) return submissions;
  if (n < 2) {
    throw std::invalid_argument("adjustToMean needs at least one other player");
  }
  for (const Submission& sub : submissions) {
    const auto* step = std::get_if<StepCcf>(&sub.ccf);
    if (step == nullptr || step->points.empty()) {
      throw std::invalid_argument(
          "adjustToMean requires non-empty step CCFs for every player");
    }
  }
  std::vector<Submission> out = submissions;
  for (int i = 0; i < n; ++i) {
    if (!submissions[i].adjust_to_mean) continue;
    const OfferPoint& own = std::get<StepCcf>(submissions[i].ccf).points[0];
    std::vector<double> offer(own.offer.size(), 0.0);
    std::vector<double> threshold(own.threshold.size(), 0.0);
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const OfferPoint& other = std::get<StepCcf>(submissions[j].ccf).points[0];
      if (other.offer.size() != offer.size() ||
          other.threshold.size() != threshold.size()) {
        throw std::invalid_argument("adjustToMean: dimension mismatch");
      }
      for (std::size_t d = 0; d < offer.size(); ++d) offer[d] += other.offer[d];
      for (std::size_t d = 0; d < threshold.size(); ++d) {
        threshold[d] += other.threshold[d];
      }
    }
    for (double& x : offer) x /= (n - 1);
    for (double& x : threshold) x /= (n - 1);
    OfferPoint& target = std::get<StepCcf>(out[i].ccf).points[0];
    target.offer = space.Clip(i, Action(std::move(offer)));
    target.threshold = std::move(threshold);
  }
  return out;
}

Liabilities Solve(const Scenario& scenario) {
  const Scenario* s = &scenario;
  Scenario adjusted;
  bool any = std::any_of(scenario.submissions.begin(), scenario.submissions.end(),
                         [](const Submission& x) { return x.adjust_to_mean; });
  if (any) {
    adjusted = scenario;
    adjusted.submissions = PreprocessAdjustToMean(scenario.submissions, scenario.space);
    s = &adjusted;
  }
  switch (s->variant) {
    case Variant::kBasic:
      return SolveLargestFeasible(*s);
    case Variant::kPrioritized:
      return SolvePrioritized(*s);
    case Variant::kBorda:
      return SolveBorda(*s);
  }
  throw std::logic_error("unknown variant");
}

}  // namespace ccfmech
