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
#include "ccfmech/analysis.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "ccfmech/parallel.h"

namespace ccfmech {
namespace {

std::uint64_t IntPow(std::uint64_t base, int exponent) {
  std::uint64_t out = 1;
  for (int e = 0; e < exponent; ++e) out = SaturatingMul(out, base);
  return out;
}

// Mixed-radix decode with player 0 most significant.
void DecodeProfile(std::uint64_t index, std::uint64_t radix,
                   std::vector<int>& digits) {
  for (int i = static_cast<int>(digits.size()) - 1; i >= 0; --i) {
    digits[i] = static_cast<int>(index % radix);
    index /= radix;
  }
}

std::uint64_t EncodeProfile(const std::vector<int>& digits, std::uint64_t radix) {
  std::uint64_t index = 0;
  for (int d : digits) index = index * radix + static_cast<std::uint64_t>(d);
  return index;
}

bool Dominates(const std::vector<double>& q, const std::vector<double>& p) {
  bool strictly = false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (q[i] < p[i] - kCompareTolerance) return false;
    if (q[i] > p[i] + kCompareTolerance) strictly = true;
  }
  return strictly;
}

std::string FormatNumber(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", x);
  return buf;
}

}  // namespace

std::vector<double> GridLevels(double lower, double upper, double step) {
  if (!(step > 0.0) || !std::isfinite(step) || !(upper >= lower)) {
    throw std::invalid_argument("grid step must be positive and bounds ordered");
  }
  const double span = (upper - lower) / step;
  const double count = std::round(span);
  if (std::abs(span - count) > 1e-9 * std::max(1.0, count)) {
    throw std::invalid_argument("grid step " + FormatNumber(step) +
                                " does not divide [" + FormatNumber(lower) +
                                ", " + FormatNumber(upper) + "] evenly");
  }
  const auto n = static_cast<std::int64_t>(count);
  std::vector<double> levels;
  levels.reserve(n + 1);
  for (std::int64_t i = 0; i <= n; ++i) {
    levels.push_back(n == 0 ? lower
                            : lower + (upper - lower) * static_cast<double>(i) /
                                          static_cast<double>(n));
  }
  return levels;
}

CommitmentGame::CommitmentGame(const BaseGame& game, CommitmentRules rules)
    : game_(&game), rules_(std::move(rules)) {
  const int n = game.NumPlayers();
  for (int i = 0; i < n; ++i) base_.players.push_back("p" + std::to_string(i));
  base_.space = ActionSpace({{"action", game.LowerBound(), game.UpperBound()}}, n);
  base_.submissions.assign(n, Submission{StepCcf{}, false});
  base_.aggregator = rules_.aggregator;
  base_.variant = rules_.variant;
}

Scenario CommitmentGame::MakeScenario(const std::vector<StepCcf>& strategies) const {
  if (static_cast<int>(strategies.size()) != game_->NumPlayers()) {
    throw std::invalid_argument("expected one strategy per player");
  }
  Scenario s = base_;
  int max_points = 1;
  for (std::size_t i = 0; i < strategies.size(); ++i) {
    s.submissions[i].ccf = strategies[i];
    max_points = std::max(max_points, static_cast<int>(strategies[i].points.size()));
  }
  s.max_points = max_points;
  return s;
}

StrategyOutcome CommitmentGame::Play(const std::vector<StepCcf>& strategies) const {
  Liabilities l = Solve(MakeScenario(strategies));
  StrategyOutcome out;
  out.liabilities.reserve(l.profile.size());
  for (const Action& a : l.profile) out.liabilities.push_back(a[0]);
  out.actions = game_->ConstrainedPlay(out.liabilities);
  out.payoffs = game_->Payoffs(out.actions);
  return out;
}

std::vector<OfferPoint> GridPoints(const StrategyGrid& grid) {
  std::vector<OfferPoint> points;
  for (double a : grid.action_levels) {
    for (double t : grid.threshold_levels) {
      if (grid.non_exploitable && t < a - kCompareTolerance) continue;
      points.push_back({Action{a}, {t}});
    }
  }
  return points;
}

std::vector<StepCcf> EnumerateGridStrategies(const StrategyGrid& grid,
                                             std::uint64_t max_strategies) {
  if (grid.k < 1) throw std::invalid_argument("grid strategies need k >= 1");
  std::vector<OfferPoint> points = GridPoints(grid);
  if (points.empty()) throw std::invalid_argument("strategy grid has no points");
  const std::uint64_t total = IntPow(points.size(), grid.k);
  CheckGuard(total, max_strategies, "grid strategy enumeration");
  std::vector<StepCcf> out;
  out.reserve(total);
  std::vector<int> digits(grid.k, 0);
  for (std::uint64_t s = 0; s < total; ++s) {
    DecodeProfile(s, points.size(), digits);
    StepCcf ccf;
    for (int d : digits) ccf.points.push_back(points[d]);
    out.push_back(std::move(ccf));
  }
  return out;
}

std::string DescribeStrategy(const StepCcf& strategy) {
  std::string out;
  for (std::size_t j = 0; j < strategy.points.size(); ++j) {
    if (j > 0) out += ';';
    const OfferPoint& p = strategy.points[j];
    for (std::size_t d = 0; d < p.offer.size(); ++d) {
      if (d > 0) out += '/';
      out += FormatNumber(p.offer[d]);
    }
    out += '@';
    for (std::size_t d = 0; d < p.threshold.size(); ++d) {
      if (d > 0) out += '/';
      out += FormatNumber(p.threshold[d]);
    }
  }
  return out;
}

double Welfare(std::span<const double> payoffs) {
  return std::accumulate(payoffs.begin(), payoffs.end(), 0.0);
}

std::vector<ParetoPoint> ParetoFront(const BaseGame& game, double step,
                                     std::uint64_t max_profiles) {
  const std::vector<double> levels =
      GridLevels(game.LowerBound(), game.UpperBound(), step);
  const int n = game.NumPlayers();
  const std::uint64_t total = IntPow(levels.size(), n);
  CheckGuard(total, max_profiles, "Pareto front enumeration");

  std::vector<ParetoPoint> all(total);
  std::vector<int> digits(n);
  for (std::uint64_t p = 0; p < total; ++p) {
    DecodeProfile(p, levels.size(), digits);
    all[p].actions.resize(n);
    for (int i = 0; i < n; ++i) all[p].actions[i] = levels[digits[i]];
    all[p].payoffs = game.Payoffs(all[p].actions);
  }
  // Anything that dominates a profile is lexicographically no smaller, so
  // scanning in descending order only needs the front found so far.
  std::vector<std::uint64_t> order(total);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::uint64_t a, std::uint64_t b) {
    return all[a].payoffs > all[b].payoffs;
  });
  std::vector<std::uint64_t> front;
  for (std::uint64_t candidate : order) {
    bool dominated = false;
    for (std::uint64_t f : front) {
      if (Dominates(all[f].payoffs, all[candidate].payoffs)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) front.push_back(candidate);
  }
  std::vector<std::uint64_t> kept;
  for (std::uint64_t f : front) {
    bool dominated = false;
    for (std::uint64_t g : front) {
      if (g != f && Dominates(all[g].payoffs, all[f].payoffs)) dominated = true;
    }
    if (!dominated) kept.push_back(f);
  }
  std::sort(kept.begin(), kept.end());
  std::vector<ParetoPoint> out;
  out.reserve(kept.size());
  for (std::uint64_t f : kept) out.push_back(std::move(all[f]));
  return out;
}

std::vector<bool> IsIndividuallyRational(const BaseGame& game,
                                         std::span<const double> profile) {
  std::vector<double> disagreement = game.Payoffs(game.DisagreementProfile());
  std::vector<double> payoffs = game.Payoffs(profile);
  std::vector<bool> out(payoffs.size());
  for (std::size_t i = 0; i < payoffs.size(); ++i) {
    out[i] = payoffs[i] >= disagreement[i] - kCompareTolerance;
  }
  return out;
}

CoreVerdict CoreMembership(const BaseGame& game, std::span<const double> profile,
                           double step, BlockingConvention convention,
                           std::uint64_t max_evaluations) {
  const int n = game.NumPlayers();
  if (static_cast<int>(profile.size()) != n) {
    throw std::invalid_argument("profile has wrong number of players");
  }
  if (n > 20) throw std::invalid_argument("core membership supports N <= 20");
  const std::vector<double> levels =
      GridLevels(game.LowerBound(), game.UpperBound(), step);
  CheckGuard(IntPow(levels.size() + 1, n) - 1, max_evaluations,
             "core membership scan");

  const std::vector<double> base = game.Payoffs(profile);
  const std::vector<double> outside =
      convention == BlockingConvention::kNashReversion
          ? game.DisagreementProfile()
          : std::vector<double>(n, game.LowerBound());

  std::vector<std::uint32_t> masks;
  for (std::uint32_t m = 1; m < (1u << n); ++m) masks.push_back(m);
  std::stable_sort(masks.begin(), masks.end(), [](std::uint32_t a, std::uint32_t b) {
    const int pa = __builtin_popcount(a);
    const int pb = __builtin_popcount(b);
    if (pa != pb) return pa < pb;
    // Lexicographic member order: lower bits first.
    for (int i = 0; i < 32; ++i) {
      const bool ia = (a >> i) & 1u;
      const bool ib = (b >> i) & 1u;
      if (ia != ib) return ia;
    }
    return false;
  });

  for (std::uint32_t mask : masks) {
    std::vector<int> members;
    for (int i = 0; i < n; ++i) {
      if ((mask >> i) & 1u) members.push_back(i);
    }
    const std::uint64_t count = IntPow(levels.size(), static_cast<int>(members.size()));
    std::vector<int> digits(members.size());
    std::vector<double> actions = outside;
    double best_gain = 0.0;
    std::optional<std::vector<double>> best;
    std::vector<double> best_payoffs;
    for (std::uint64_t c = 0; c < count; ++c) {
      DecodeProfile(c, levels.size(), digits);
      for (std::size_t m = 0; m < members.size(); ++m) {
        actions[members[m]] = levels[digits[m]];
      }
      std::vector<double> payoffs = game.Payoffs(actions);
      double min_gain = std::numeric_limits<double>::infinity();
      for (int i : members) min_gain = std::min(min_gain, payoffs[i] - base[i]);
      if (min_gain > kCompareTolerance && (!best || min_gain > best_gain)) {
        best_gain = min_gain;
        best.emplace();
        best_payoffs.clear();
        for (int i : members) {
          best->push_back(actions[i]);
          best_payoffs.push_back(payoffs[i]);
        }
      }
    }
    if (best) return {false, members, *best, best_payoffs};
  }
  return {};
}

EquilibriumReport CommitmentEquilibria(const BaseGame& game,
                                       const StrategyGrid& grid,
                                       const EquilibriumOptions& options) {
  EquilibriumReport report;
  report.strategies = EnumerateGridStrategies(grid, options.max_evaluations);
  const int n = game.NumPlayers();
  const std::uint64_t radix = report.strategies.size();
  const std::uint64_t total = IntPow(radix, n);
  CheckGuard(total, options.max_evaluations, "commitment game enumeration");

  CommitmentGame commitment(game, options.rules);
  std::vector<StrategyOutcome> table(total);
  ParallelFor(total, options.workers, [&](std::size_t p) {
    std::vector<int> digits(n);
    DecodeProfile(p, radix, digits);
    std::vector<StepCcf> profile;
    profile.reserve(n);
    for (int d : digits) profile.push_back(report.strategies[d]);
    table[p] = commitment.Play(profile);
  });

  auto payoff = [&](std::uint64_t p, int i) { return table[p].payoffs[i]; };

  std::vector<char> is_nash(total, 0);
  ParallelFor(total, options.workers, [&](std::size_t p) {
    std::vector<int> digits(n);
    DecodeProfile(p, radix, digits);
    for (int i = 0; i < n; ++i) {
      const int own = digits[i];
      for (std::uint64_t s = 0; s < radix; ++s) {
        digits[i] = static_cast<int>(s);
        if (payoff(EncodeProfile(digits, radix), i) > payoff(p, i) + kCompareTolerance) {
          return;
        }
      }
      digits[i] = own;
    }
    is_nash[p] = 1;
  });

  std::vector<char> is_strong(total, 0);
  ParallelFor(total, options.workers, [&](std::size_t p) {
    if (!is_nash[p]) return;
    std::vector<int> digits(n);
    DecodeProfile(p, radix, digits);
    const std::vector<int> original = digits;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      if (__builtin_popcount(mask) < 2) continue;
      std::vector<int> members;
      for (int i = 0; i < n; ++i) {
        if ((mask >> i) & 1u) members.push_back(i);
      }
      const std::uint64_t count = IntPow(radix, static_cast<int>(members.size()));
      std::vector<int> joint(members.size());
      for (std::uint64_t c = 0; c < count; ++c) {
        DecodeProfile(c, radix, joint);
        digits = original;
        for (std::size_t m = 0; m < members.size(); ++m) digits[members[m]] = joint[m];
        const std::uint64_t q = EncodeProfile(digits, radix);
        bool all_better = true;
        for (int i : members) {
          if (!(payoff(q, i) > payoff(p, i) + kCompareTolerance)) {
            all_better = false;
            break;
          }
        }
        if (all_better) return;
      }
    }
    is_strong[p] = 1;
  });

  std::vector<int> digits(n);
  for (std::uint64_t p = 0; p < total; ++p) {
    if (!is_nash[p]) continue;
    DecodeProfile(p, radix, digits);
    report.nash.push_back(digits);
    if (is_strong[p]) report.strong.push_back(digits);
    report.outcomes.push_back({digits, table[p], is_strong[p] != 0});
  }
  return report;
}

bool IsNashProfile(const CommitmentGame& game, const std::vector<StepCcf>& profile,
                   const std::vector<StepCcf>& alternatives) {
  const std::vector<double> base = game.Play(profile).payoffs;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    std::vector<StepCcf> deviation = profile;
    for (const StepCcf& alt : alternatives) {
      deviation[i] = alt;
      if (game.Play(deviation).payoffs[i] > base[i] + kCompareTolerance) return false;
    }
  }
  return true;
}

}  // namespace ccfmech
