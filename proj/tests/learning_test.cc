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

#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "ccfmech/games.h"

namespace ccfmech {
namespace {

const PublicGoodsParams kReference{2, 0.09, 0.3};

StrategyGrid Grid(double step, int k, bool non_exploitable = true) {
  StrategyGrid grid;
  grid.action_levels = GridLevels(0.0, 1.0, step);
  grid.threshold_levels = grid.action_levels;
  grid.k = k;
  grid.non_exploitable = non_exploitable;
  return grid;
}

TEST(ShapedRewardTest, Examples) {
  std::vector<double> r = {0.6, 0.8};
  EXPECT_EQ(ShapedReward(r, 0.0), r);
  auto full = ShapedReward(r, 1.0);
  EXPECT_NEAR(full[0], 0.7, 1e-12);
  EXPECT_NEAR(full[1], 0.7, 1e-12);
  auto half = ShapedReward(r, 0.5);
  EXPECT_NEAR(half[0], 0.65, 1e-12);
  EXPECT_NEAR(half[1], 0.75, 1e-12);
  EXPECT_THROW(ShapedReward(r, -0.1), std::invalid_argument);
  EXPECT_THROW(ShapedReward(r, 1.5), std::invalid_argument);
}

TEST(ShapedRewardTest, ConservesTotal) {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 10000; ++t) {
    std::vector<double> r(1 + t % 6);
    for (double& x : r) x = u(rng) * 4 - 2;
    auto s = ShapedReward(r, u(rng));
    const double before = std::accumulate(r.begin(), r.end(), 0.0);
    const double after = std::accumulate(s.begin(), s.end(), 0.0);
    EXPECT_NEAR(after, before, 1e-12 * (1 + std::abs(before)));
  }
}

TEST(AlphaAtTest, LinearDecay) {
  AltruismSchedule s{ScheduleKind::kLinearDecayThenZero, 0.9, 300};
  EXPECT_EQ(AltruismCutoff(s), 200);
  EXPECT_DOUBLE_EQ(AlphaAt(s, 0), 0.9);
  EXPECT_NEAR(AlphaAt(s, 100), 0.45, 1e-12);
  for (int e = 200; e < 300; ++e) EXPECT_EQ(AlphaAt(s, e), 0.0);
  EXPECT_GT(AlphaAt(s, 199), 0.0);
  EXPECT_THROW(AlphaAt(s, 300), std::out_of_range);
  EXPECT_THROW(AlphaAt(s, -1), std::out_of_range);
}

TEST(AlphaAtTest, FinalThirdIsZeroForEverySchedule) {
  for (ScheduleKind kind : {ScheduleKind::kConstantThenZero, ScheduleKind::kLinearDecayThenZero}) {
    for (int total = 1; total <= 60; ++total) {
      AltruismSchedule s{kind, 0.7, total};
      const int cutoff = AltruismCutoff(s);
      EXPECT_GE(3 * cutoff, 2 * total);
      EXPECT_LT(3 * (cutoff - 1), 2 * total);
      for (int e = 0; e < total; ++e) {
        const double a = AlphaAt(s, e);
        EXPECT_GE(a, 0.0);
        EXPECT_LE(a, 1.0);
        if (e >= cutoff) EXPECT_EQ(a, 0.0);
        if (kind == ScheduleKind::kConstantThenZero && e < cutoff) EXPECT_EQ(a, 0.7);
      }
    }
  }
}

TEST(RevisionCandidatesTest, ReplaceOneSlot) {
  StrategyGrid grid = Grid(0.5, 2);
  auto points = GridPoints(grid);  // 6 non-exploitable points
  ASSERT_EQ(points.size(), 6u);
  auto bottom = BottomStrategies(grid, 3);
  ASSERT_EQ(bottom.size(), 3u);
  EXPECT_EQ(bottom[0].points.size(), 2u);
  EXPECT_EQ(bottom[0].points[0].offer, Action{0.0});
  EXPECT_EQ(RevisionCandidates(bottom[0], grid).size(), 10u);
}

TEST(BetterResponseTest, AdoptionsAreImprovingOrNeutralRefinements) {
  PublicGoodsGame game(kReference);
  CommitmentGame cg(game, {});
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    DynamicsConfig config{Grid(0.1, 3), 200, 0, seed};
    Trajectory t = BetterResponseDynamics(cg, config);
    EXPECT_TRUE(t.converged);
    for (const AdoptionEvent& a : t.adoptions) {
      if (a.improving) {
        EXPECT_GT(a.payoff_after, a.payoff_before);
      } else {
        EXPECT_GE(a.payoff_after, a.payoff_before - 1e-9);
      }
    }
    // Every record's welfare is the sum of its payoffs.
    for (const EpisodeRecord& r : t.records) {
      EXPECT_NEAR(r.welfare, std::accumulate(r.payoffs.begin(), r.payoffs.end(), 0.0), 1e-12);
    }
  }
}

TEST(BetterResponseTest, PairProfileIsAFixedPoint) {
  PublicGoodsGame game(kReference);
  CommitmentGame cg(game, {});
  StepCcf pair{{{Action{0.6}, {0.6}}}};
  std::vector<StepCcf> start = {pair, pair};
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Trajectory t = BetterResponseDynamics(cg, {Grid(0.05, 1), 50, 0, seed}, &start);
    EXPECT_TRUE(t.converged);
    EXPECT_TRUE(t.adoptions.empty());
    EXPECT_EQ(t.records.size(), 2u);
    EXPECT_NEAR(t.TerminalWelfare(), 1.496, 1e-9);
  }
}

TEST(BetterResponseTest, TerminalProfilesAreNash) {
  PublicGoodsGame game(kReference);
  CommitmentGame cg(game, {});
  StrategyGrid grid;
  grid.action_levels = {0.0, 0.3, 0.6};
  grid.threshold_levels = {0.0, 0.3, 0.6};
  grid.non_exploitable = true;
  auto all = EnumerateGridStrategies(grid);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Trajectory t = BetterResponseDynamics(cg, {grid, 100, 0, seed});
    ASSERT_TRUE(t.converged);
    EXPECT_TRUE(IsNashProfile(cg, t.final_strategies, all)) << "seed " << seed;
  }
}

TEST(BetterResponseTest, SinglePlayerReachesOwnOptimum) {
  PublicGoodsGame game({1, 0.09, 0.3});
  CommitmentGame cg(game, {});
  Trajectory t = BetterResponseDynamics(cg, {Grid(0.1, 2), 100, 0, 3});
  EXPECT_TRUE(t.converged);
  EXPECT_LE(t.records.back().liabilities[0], 0.3 + 1e-12);
  std::vector<double> own = {0.3};
  EXPECT_NEAR(t.TerminalWelfare(), game.Payoffs(own)[0], 1e-12);
}

TEST(BetterResponseTest, DeterministicPerSeed) {
  PublicGoodsGame game(kReference);
  CommitmentGame cg(game, {});
  DynamicsConfig config{Grid(0.1, 2), 100, 0, 99};
  Trajectory a = BetterResponseDynamics(cg, config);
  Trajectory b = BetterResponseDynamics(cg, config);
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(a.records[i].strategies, b.records[i].strategies);
    EXPECT_EQ(a.records[i].payoffs, b.records[i].payoffs);
  }
  EXPECT_EQ(a.config_hash, b.config_hash);
  EXPECT_THROW(BetterResponseDynamics(cg, {Grid(0.1, 2), 0, 0, 1}), std::invalid_argument);
}

TEST(BetterResponseTest, CandidateSampling) {
  PublicGoodsGame game(kReference);
  CommitmentGame cg(game, {});
  Trajectory t = BetterResponseDynamics(cg, {Grid(0.1, 2), 3, 5, 4});
  EXPECT_LE(t.records.size(), 4u);
}

PolicyGradientConfig PgConfig(std::uint64_t seed, int episodes, double alpha0) {
  PolicyGradientConfig c;
  c.grid = Grid(0.1, 1);
  c.episodes = episodes;
  c.schedule = {ScheduleKind::kLinearDecayThenZero, alpha0, episodes};
  c.seed = seed;
  return c;
}

TEST(PolicyGradientTest, RecordsAndGreedyEvaluation) {
  PublicGoodsGame game(kReference);
  CommitmentGame cg(game, {});
  Trajectory t = PolicyGradientTrain(cg, PgConfig(5, 300, 0.9));
  ASSERT_EQ(t.records.size(), 301u);
  EXPECT_TRUE(t.records.back().greedy);
  EXPECT_EQ(t.final_strategies.size(), 2u);
  for (int e = 0; e < 300; ++e) {
    const EpisodeRecord& r = t.records[e];
    EXPECT_EQ(r.episode, e);
    EXPECT_FALSE(r.greedy);
    if (e >= 200) {
      EXPECT_EQ(r.alpha, 0.0);
      EXPECT_EQ(r.shaped, r.payoffs);
    }
    EXPECT_NEAR(std::accumulate(r.shaped.begin(), r.shaped.end(), 0.0), r.welfare, 1e-12);
  }
  EXPECT_GT(t.TerminalWelfare(), 1.442 - 0.2);
}

TEST(PolicyGradientTest, SingleStrategyGridIsConstant) {
  PublicGoodsGame game(kReference);
  CommitmentGame cg(game, {});
  PolicyGradientConfig c = PgConfig(1, 50, 0.0);
  c.grid.action_levels = {0.0};
  c.grid.threshold_levels = {0.0};
  Trajectory t = PolicyGradientTrain(cg, c);
  for (const EpisodeRecord& r : t.records) EXPECT_NEAR(r.welfare, 1.442, 1e-12);
}

TEST(PolicyGradientTest, DeterministicAndValidated) {
  PublicGoodsGame game(kReference);
  CommitmentGame cg(game, {});
  Trajectory a = PolicyGradientTrain(cg, PgConfig(8, 400, 0.5));
  Trajectory b = PolicyGradientTrain(cg, PgConfig(8, 400, 0.5));
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(a.records[i].strategies, b.records[i].strategies);
  }
  PolicyGradientConfig bad = PgConfig(1, 100, 0.0);
  bad.schedule.total_episodes = 99;
  EXPECT_THROW(PolicyGradientTrain(cg, bad), std::invalid_argument);
  bad = PgConfig(1, 100, 0.0);
  bad.learning_rate = 0.0;
  EXPECT_THROW(PolicyGradientTrain(cg, bad), std::invalid_argument);
  bad = PgConfig(1, 100, 1.5);
  EXPECT_THROW(PolicyGradientTrain(cg, bad), std::invalid_argument);
  bad = PgConfig(1, 0, 0.0);
  EXPECT_THROW(PolicyGradientTrain(cg, bad), std::invalid_argument);
}

}  // namespace
}  // namespace ccfmech
