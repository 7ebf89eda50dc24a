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
#include "ccfmech/ccf.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ccfmech {
namespace {

bool ThresholdMet(const OfferPoint& point, std::span<const double> aggregate) {
  for (std::size_t d = 0; d < point.threshold.size(); ++d) {
    if (aggregate[d] < point.threshold[d] - kCompareTolerance) return false;
  }
  return true;
}

double EffectiveWeight(const Aggregator& agg, int player, int num_players) {
  if (!agg.weights.empty()) return agg.weights[player];
  return agg.normalized ? 1.0 / num_players : 1.0;
}

}  // namespace

std::vector<std::string> ValidateAggregator(const Aggregator& agg,
                                            int num_players) {
  std::vector<std::string> problems;
  if (num_players < 1) problems.push_back("aggregator needs at least one player");
  if (!agg.include_self && num_players < 2) {
    problems.push_back("aggregator excludes self but there are no other players");
  }
  if (agg.mode == AggregatorMode::kMin || agg.weights.empty()) return problems;
  if (static_cast<int>(agg.weights.size()) != num_players) {
    problems.push_back("aggregator has " + std::to_string(agg.weights.size()) +
                       " weights for " + std::to_string(num_players) +
                       " players");
    return problems;
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < agg.weights.size(); ++j) {
    double w = agg.weights[j];
    if (!std::isfinite(w) || w < 0.0) {
      problems.push_back("aggregator weight " + std::to_string(j) +
                         " must be finite and nonnegative");
    }
    sum += w;
  }
  if (agg.normalized && std::abs(sum - 1.0) > kCompareTolerance) {
    problems.push_back("normalized aggregator weights must sum to 1");
  }
  return problems;
}

std::vector<double> Aggregate(const Profile& profile, int player,
                              const Aggregator& agg) {
  const int n = static_cast<int>(profile.size());
  if (n == 0) throw std::invalid_argument("cannot aggregate an empty profile");
  if (player < 0 || player >= n) {
    throw std::out_of_range("aggregate: player index out of range");
  }
  if (!agg.weights.empty() && agg.mode == AggregatorMode::kWeightedAverage &&
      static_cast<int>(agg.weights.size()) != n) {
    throw std::invalid_argument("aggregate: weight count mismatch");
  }
  const std::size_t dims = profile[0].size();
  for (const Action& a : profile) {
    if (a.size() != dims) throw std::invalid_argument("dimension mismatch");
  }
  auto included = [&](int j) { return agg.include_self || j != player; };
  bool any = false;
  for (int j = 0; j < n; ++j) any = any || included(j);
  if (!any) throw std::invalid_argument("aggregate: empty player set after exclusion");

  std::vector<double> out(dims, 0.0);
  if (agg.mode == AggregatorMode::kMin) {
    std::fill(out.begin(), out.end(), std::numeric_limits<double>::infinity());
    for (int j = 0; j < n; ++j) {
      if (!included(j)) continue;
      for (std::size_t d = 0; d < dims; ++d) out[d] = std::min(out[d], profile[j][d]);
    }
    return out;
  }

  double total_weight = 0.0;
  for (int j = 0; j < n; ++j) {
    if (!included(j)) continue;
    const double w = EffectiveWeight(agg, j, n);
    total_weight += w;
    for (std::size_t d = 0; d < dims; ++d) out[d] += w * profile[j][d];
  }
  if (!agg.normalized) return out;
  if (agg.include_self) return out;
  // Renormalize over the remaining players.
  if (total_weight <= 0.0) {
    throw std::invalid_argument("aggregate: remaining players have zero weight");
  }
  for (double& x : out) x /= total_weight;
  return out;
}

std::vector<int> SatisfiedPoints(const StepCcf& ccf,
                                 std::span<const double> aggregate) {
  std::vector<int> out;
  for (std::size_t j = 0; j < ccf.points.size(); ++j) {
    if (ThresholdMet(ccf.points[j], aggregate)) out.push_back(static_cast<int>(j));
  }
  return out;
}

Action EvaluateCcf(const Ccf& ccf, std::span<const double> aggregate,
                   const Bounds& bounds) {
  Action result(bounds.lower);
  if (const auto* step = std::get_if<StepCcf>(&ccf)) {
    for (const OfferPoint& point : step->points) {
      if (point.threshold.size() > aggregate.size()) {
        throw std::invalid_argument("threshold has more dimensions than the aggregate");
      }
      if (ThresholdMet(point, aggregate)) result = Join(result, point.offer);
    }
    return result;
  }
  const auto& matching = std::get<MatchingCcf>(ccf);
  if (matching.dim < 0 || matching.dim >= static_cast<int>(result.size()) ||
      matching.dim >= static_cast<int>(aggregate.size())) {
    throw std::invalid_argument("matching CCF dimension out of range");
  }
  const int d = matching.dim;
  double committed = std::min(matching.rate * aggregate[d], matching.cap);
  result[d] = std::clamp(committed, bounds.lower[d], bounds.upper[d]);
  return result;
}

bool StepCcfDominates(const StepCcf& a, const StepCcf& b, const Bounds& bounds,
                      bool strict) {
  std::size_t dims = 0;
  for (const auto* ccf : {&a, &b}) {
    for (const OfferPoint& p : ccf->points) dims = std::max(dims, p.threshold.size());
  }
  // Candidate corners per dimension: every threshold value of either CCF.
  std::vector<std::vector<double>> values(dims);
  for (const auto* ccf : {&a, &b}) {
    for (const OfferPoint& p : ccf->points) {
      for (std::size_t d = 0; d < p.threshold.size(); ++d) {
        values[d].push_back(p.threshold[d]);
      }
    }
  }
  for (auto& v : values) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    if (v.empty()) v.push_back(0.0);
  }
  bool differs = false;
  std::vector<std::size_t> index(dims, 0);
  std::vector<double> g(dims);
  while (true) {
    for (std::size_t d = 0; d < dims; ++d) g[d] = values[d][index[d]];
    Action va = EvaluateCcf(a, g, bounds);
    Action vb = EvaluateCcf(b, g, bounds);
    Ordering o = Compare(va, vb);
    if (o == Ordering::kLess || o == Ordering::kIncomparable) return false;
    if (o == Ordering::kGreater) differs = true;
    std::size_t d = 0;
    while (d < dims && ++index[d] == values[d].size()) index[d++] = 0;
    if (d == dims) break;
  }
  return strict ? differs : true;
}

std::vector<Violation> ValidateCcf(const Ccf& ccf, const CcfContext& context) {
  std::vector<Violation> out;
  const int dims = static_cast<int>(context.bounds.lower.size());
  if (const auto* step = std::get_if<StepCcf>(&ccf)) {
    const int k = static_cast<int>(step->points.size());
    if (k < 1 || k > context.max_points) {
      out.push_back({std::nullopt, std::nullopt,
                     "step CCF has " + std::to_string(k) +
                         " points, allowed 1.." +
                         std::to_string(context.max_points)});
    }
    for (int j = 0; j < k; ++j) {
      const OfferPoint& p = step->points[j];
      if (static_cast<int>(p.offer.size()) != dims) {
        out.push_back({j, std::nullopt, "offer has wrong dimension count"});
      } else {
        for (int d = 0; d < dims; ++d) {
          const double x = p.offer[d];
          if (!std::isfinite(x) || x < context.bounds.lower[d] - kCompareTolerance ||
              x > context.bounds.upper[d] + kCompareTolerance) {
            out.push_back({j, d, "offer component " + std::to_string(x) +
                                     " outside [" +
                                     std::to_string(context.bounds.lower[d]) +
                                     ", " +
                                     std::to_string(context.bounds.upper[d]) + "]"});
          }
        }
      }
      if (static_cast<int>(p.threshold.size()) != dims) {
        out.push_back({j, std::nullopt, "threshold has wrong dimension count"});
      } else {
        for (int d = 0; d < dims; ++d) {
          if (!std::isfinite(p.threshold[d])) {
            out.push_back({j, d, "threshold is not finite"});
          }
        }
      }
    }
    return out;
  }
  const auto& m = std::get<MatchingCcf>(ccf);
  if (m.dim < 0 || m.dim >= dims) {
    out.push_back({std::nullopt, m.dim, "matching dimension out of range"});
  }
  if (!std::isfinite(m.rate) || m.rate < 0.0) {
    out.push_back({std::nullopt, m.dim, "matching rate must be finite and >= 0"});
  }
  if (!std::isfinite(m.cap) || m.cap < 0.0) {
    out.push_back({std::nullopt, m.dim, "matching cap must be finite and >= 0"});
  }
  return out;
}

std::string FormatViolation(const Violation& v) {
  std::string s;
  if (v.point) s += "point " + std::to_string(*v.point) + ": ";
  if (v.dim) s += "dim " + std::to_string(*v.dim) + ": ";
  return s + v.message;
}

}  // namespace ccfmech
