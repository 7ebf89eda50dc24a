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
#include "ccfmech/learning.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "ccfmech/random.h"

namespace ccfmech {
namespace {

EpisodeRecord MakeRecord(int episode, const std::vector<StepCcf>& strategies,
                         const StrategyOutcome& outcome, double alpha) {
  EpisodeRecord r;
  r.episode = episode;
  for (const StepCcf& s : strategies) r.strategies.push_back(DescribeStrategy(s));
  r.liabilities = outcome.liabilities;
  r.actions = outcome.actions;
  r.payoffs = outcome.payoffs;
  r.shaped = ShapedReward(outcome.payoffs, alpha);
  r.welfare = Welfare(outcome.payoffs);
  r.alpha = alpha;
  return r;
}

std::string DescribeGrid(const StrategyGrid& grid) {
  std::ostringstream out;
  out.precision(17);
  out << "actions=";
  for (double a : grid.action_levels) out << a << ',';
  out << ";thresholds=";
  for (double t : grid.threshold_levels) out << t << ',';
  out << ";k=" << grid.k << ";nonExploitable=" << grid.non_exploitable;
  return out.str();
}

Bounds GameBounds(const BaseGame& game) {
  return {{game.LowerBound()}, {game.UpperBound()}};
}

}  // namespace

std::vector<double> ShapedReward(std::span<const double> payoffs, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("alpha must lie in [0, 1]");
  }
  std::vector<double> out(payoffs.begin(), payoffs.end());
  if (payoffs.empty() || alpha == 0.0) return out;
  double mean = 0.0;
  for (double r : payoffs) mean += r;
  mean /= static_cast<double>(payoffs.size());
  for (double& r : out) r = (1.0 - alpha) * r + alpha * mean;
  return out;
}

const char* ScheduleKindName(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::kConstantThenZero:
      return "constantThenZero";
    case ScheduleKind::kLinearDecayThenZero:
      return "linearDecayThenZero";
  }
  return "?";
}

int AltruismCutoff(const AltruismSchedule& schedule) {
  // ceil(2T/3) in integers.
  return (2 * schedule.total_episodes + 2) / 3;
}

double AlphaAt(const AltruismSchedule& schedule, int episode) {
  if (schedule.total_episodes < 1 || episode < 0 ||
      episode >= schedule.total_episodes) {
    throw std::out_of_range("episode " + std::to_string(episode) +
                            " outside the schedule");
  }
  if (!(schedule.alpha0 >= 0.0 && schedule.alpha0 <= 1.0)) {
    throw std::invalid_argument("alpha0 must lie in [0, 1]");
  }
  const int cutoff = AltruismCutoff(schedule);
  if (episode >= cutoff) return 0.0;
  if (schedule.kind == ScheduleKind::kConstantThenZero) return schedule.alpha0;
  return schedule.alpha0 * (1.0 - static_cast<double>(episode) / cutoff);
}

std::vector<StepCcf> BottomStrategies(const StrategyGrid& grid, int num_players) {
  std::vector<OfferPoint> points = GridPoints(grid);
  if (points.empty()) throw std::invalid_argument("strategy grid has no points");
  if (grid.k < 1) throw std::invalid_argument("grid strategies need k >= 1");
  StepCcf bottom;
  bottom.points.assign(grid.k, points.front());
  return std::vector<StepCcf>(num_players, bottom);
}

std::vector<StepCcf> RevisionCandidates(const StepCcf& current,
                                        const StrategyGrid& grid) {
  std::vector<OfferPoint> points = GridPoints(grid);
  std::vector<StepCcf> out;
  out.reserve(current.points.size() * points.size());
  for (std::size_t slot = 0; slot < current.points.size(); ++slot) {
    for (const OfferPoint& p : points) {
      const OfferPoint& old = current.points[slot];
      if (old.offer == p.offer && old.threshold == p.threshold) continue;
      StepCcf candidate = current;
      candidate.points[slot] = p;
      out.push_back(std::move(candidate));
    }
  }
  return out;
}

Trajectory BetterResponseDynamics(const CommitmentGame& game,
                                  const DynamicsConfig& config,
                                  const std::vector<StepCcf>* initial) {
  if (config.max_rounds < 1 || config.candidate_samples < 0) {
    throw std::invalid_argument("dynamics config needs max_rounds >= 1 and "
                                "candidate_samples >= 0");
  }
  const int n = game.game().NumPlayers();
  const Bounds bounds = GameBounds(game.game());
  Trajectory t;
  t.seed = config.seed;
  {
    std::ostringstream desc;
    desc << "br;" << DescribeGrid(config.grid) << ";maxRounds=" << config.max_rounds
         << ";samples=" << config.candidate_samples << ";variant="
         << VariantName(game.rules().variant) << ";" << game.game().Describe();
    t.config_hash = HexDigest(Fnv1a64(desc.str()));
  }
  std::vector<StepCcf> strategies =
      initial != nullptr ? *initial : BottomStrategies(config.grid, n);
  if (static_cast<int>(strategies.size()) != n) {
    throw std::invalid_argument("expected one initial strategy per player");
  }
  Rng rng(config.seed);
  StrategyOutcome outcome = game.Play(strategies);
  t.records.push_back(MakeRecord(0, strategies, outcome, 0.0));

  std::vector<int> order(n);
  for (int round = 1; round <= config.max_rounds; ++round) {
    for (int i = 0; i < n; ++i) order[i] = i;
    rng.Shuffle(order);
    int adoptions = 0;
    for (int player : order) {
      const double current = outcome.payoffs[player];
      std::vector<StepCcf> candidates = RevisionCandidates(strategies[player], config.grid);
      rng.Shuffle(candidates);
      if (config.candidate_samples > 0 &&
          candidates.size() > static_cast<std::size_t>(config.candidate_samples)) {
        candidates.resize(config.candidate_samples);
      }
      std::vector<StrategyOutcome> evaluated;
      evaluated.reserve(candidates.size());
      std::optional<std::size_t> pick;
      bool improving = false;
      std::vector<StepCcf> trial = strategies;
      for (std::size_t c = 0; c < candidates.size(); ++c) {
        trial[player] = candidates[c];
        evaluated.push_back(game.Play(trial));
        if (evaluated.back().payoffs[player] > current + kCompareTolerance) {
          pick = c;
          improving = true;
          break;
        }
      }
      if (!pick) {
        for (std::size_t c = 0; c < candidates.size(); ++c) {
          if (evaluated[c].payoffs[player] >= current - kCompareTolerance &&
              StepCcfDominates(candidates[c], strategies[player], bounds, true)) {
            pick = c;
            break;
          }
        }
      }
      if (!pick) continue;
      strategies[player] = candidates[*pick];
      t.adoptions.push_back({round, player, current,
                             evaluated[*pick].payoffs[player], improving});
      outcome = std::move(evaluated[*pick]);
      ++adoptions;
    }
    EpisodeRecord record = MakeRecord(round, strategies, outcome, 0.0);
    record.adoptions = adoptions;
    t.records.push_back(std::move(record));
    if (adoptions == 0) {
      t.converged = true;
      break;
    }
  }
  t.final_strategies = strategies;
  return t;
}

void ValidatePolicyGradientConfig(const PolicyGradientConfig& config) {
  if (config.episodes < 1) throw std::invalid_argument("episodes must be >= 1");
  if (!(config.learning_rate > 0.0) || !std::isfinite(config.learning_rate)) {
    throw std::invalid_argument("learning rate must be positive");
  }
  if (!(config.baseline_rate > 0.0 && config.baseline_rate <= 1.0)) {
    throw std::invalid_argument("baseline rate must lie in (0, 1]");
  }
  if (config.schedule.total_episodes != config.episodes) {
    throw std::invalid_argument("altruism schedule length must equal episodes");
  }
  if (!(config.schedule.alpha0 >= 0.0 && config.schedule.alpha0 <= 1.0)) {
    throw std::invalid_argument("alpha0 must lie in [0, 1]");
  }
}

Trajectory PolicyGradientTrain(const CommitmentGame& game,
                               const PolicyGradientConfig& config) {
  ValidatePolicyGradientConfig(config);
  const int n = game.game().NumPlayers();
  const std::vector<StepCcf> strategies = EnumerateGridStrategies(config.grid);
  const std::size_t count = strategies.size();

  Trajectory t;
  t.seed = config.seed;
  {
    std::ostringstream desc;
    desc.precision(17);
    desc << "pg;" << DescribeGrid(config.grid) << ";episodes=" << config.episodes
         << ";lr=" << config.learning_rate << ";baseline=" << config.baseline_rate
         << ";schedule=" << ScheduleKindName(config.schedule.kind) << ","
         << config.schedule.alpha0 << ";variant=" << VariantName(game.rules().variant)
         << ";" << game.game().Describe();
    t.config_hash = HexDigest(Fnv1a64(desc.str()));
  }

  Rng rng(config.seed);
  std::vector<std::vector<double>> logits(n, std::vector<double>(count, 0.0));
  std::vector<std::vector<double>> probs(n, std::vector<double>(count, 0.0));
  std::vector<double> baseline;
  std::unordered_map<std::uint64_t, StrategyOutcome> cache;
  std::vector<std::size_t> choice(n);
  std::vector<StepCcf> profile(n);

  auto play = [&](const std::vector<std::size_t>& picks) -> const StrategyOutcome& {
    std::uint64_t key = 0;
    for (std::size_t c : picks) key = key * count + c;
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    for (int i = 0; i < n; ++i) profile[i] = strategies[picks[i]];
    return cache.emplace(key, game.Play(profile)).first->second;
  };

  for (int episode = 0; episode < config.episodes; ++episode) {
    for (int i = 0; i < n; ++i) {
      const double top = *std::max_element(logits[i].begin(), logits[i].end());
      double total = 0.0;
      for (std::size_t s = 0; s < count; ++s) {
        probs[i][s] = std::exp(logits[i][s] - top);
        total += probs[i][s];
      }
      for (double& p : probs[i]) p /= total;
      choice[i] = rng.Categorical(probs[i]);
    }
    const StrategyOutcome& outcome = play(choice);
    const double alpha = AlphaAt(config.schedule, episode);
    for (int i = 0; i < n; ++i) profile[i] = strategies[choice[i]];
    EpisodeRecord record = MakeRecord(episode, profile, outcome, alpha);
    if (baseline.empty()) baseline = record.shaped;
    for (int i = 0; i < n; ++i) {
      const double advantage = record.shaped[i] - baseline[i];
      for (std::size_t s = 0; s < count; ++s) {
        const double indicator = s == choice[i] ? 1.0 : 0.0;
        logits[i][s] += config.learning_rate * advantage * (indicator - probs[i][s]);
      }
      baseline[i] += config.baseline_rate * (record.shaped[i] - baseline[i]);
    }
    t.records.push_back(std::move(record));
  }

  for (int i = 0; i < n; ++i) {
    choice[i] = static_cast<std::size_t>(
        std::max_element(logits[i].begin(), logits[i].end()) - logits[i].begin());
  }
  const StrategyOutcome& greedy = play(choice);
  for (int i = 0; i < n; ++i) profile[i] = strategies[choice[i]];
  EpisodeRecord record = MakeRecord(config.episodes, profile, greedy, 0.0);
  record.greedy = true;
  t.records.push_back(std::move(record));
  t.final_strategies = profile;
  t.converged = true;
  return t;
}

}  // namespace ccfmech
