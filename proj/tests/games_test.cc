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
#include "ccfmech/games.h"

#include <random>

#include <gtest/gtest.h>

namespace ccfmech {
namespace {

const PublicGoodsParams kReference{2, 0.09, 0.3};

double Total(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return s;
}

TEST(PgPayoffsTest, Examples) {
  std::vector<double> ne = {0.3, 0.3};
  auto p = PgPayoffs(kReference, ne);
  EXPECT_NEAR(Total(p), 1.442, 1e-12);
  EXPECT_NEAR(p[0], 0.721, 1e-12);
  std::vector<double> opt = {0.6, 0.6};
  EXPECT_NEAR(Total(PgPayoffs(kReference, opt)), 1.496, 1e-12);
  std::vector<double> zero = {0.0, 0.0};
  EXPECT_NEAR(PgPayoffs(kReference, zero)[1], 0.64, 1e-12);
  std::vector<double> over = {1.0, 1.0};
  EXPECT_NEAR(PgPayoffs(kReference, over)[0], 0.7, 1e-12);
  std::vector<double> bad = {1.2, 0.0};
  EXPECT_THROW(PgPayoffs(kReference, bad), std::invalid_argument);
  std::vector<double> short_profile = {0.3};
  EXPECT_THROW(PgPayoffs(kReference, short_profile), std::invalid_argument);
}

TEST(PgRatesTest, Examples) {
  EXPECT_NEAR(PgNash(kReference), 0.3, 1e-12);
  EXPECT_NEAR(PgSocialOptimum(kReference), 0.6, 1e-12);
  PublicGoodsParams zero{2, 0.0, 0.3};
  EXPECT_EQ(PgNash(zero), 0.0);
  EXPECT_EQ(PgSocialOptimum(zero), 0.0);
  PublicGoodsParams steep{2, 0.6, 0.3};
  EXPECT_EQ(PgNash(steep), 1.0);
  EXPECT_EQ(PgSocialOptimum(steep), 1.0);
}

TEST(PgClosedFormTest, Examples) {
  ClosedFormPayoffs cf = PgClosedFormPayoffs(kReference);
  EXPECT_NEAR(cf.nash, 0.721, 1e-12);
  EXPECT_NEAR(cf.optimum, 0.748, 1e-12);
  PublicGoodsParams single{1, 0.1, 0.4};
  ClosedFormPayoffs one = PgClosedFormPayoffs(single);
  EXPECT_NEAR(one.nash, one.optimum, 1e-15);
  PublicGoodsParams three{3, 0.05, 0.5};
  ClosedFormPayoffs cf3 = PgClosedFormPayoffs(three);
  std::vector<double> ne(3, PgNash(three)), opt(3, PgSocialOptimum(three));
  EXPECT_NEAR(cf3.nash, PgPayoffs(three, ne)[0], 1e-12);
  EXPECT_NEAR(cf3.optimum, PgPayoffs(three, opt)[0], 1e-12);
  EXPECT_THROW(PgClosedFormPayoffs({2, 0.2, 0.3}), ClippedRegimeError);
}

TEST(PgClosedFormTest, AgreesWithDirectEvaluation) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int checked = 0;
  while (checked < 500) {
    PublicGoodsParams p{1 + static_cast<int>(rng() % 6), u(rng) * 0.3, 0.05 + u(rng)};
    if (p.num_players * p.beta / p.gamma > 1.0) continue;
    ClosedFormPayoffs cf = PgClosedFormPayoffs(p);
    std::vector<double> ne(p.num_players, PgNash(p)), opt(p.num_players, PgSocialOptimum(p));
    EXPECT_NEAR(cf.nash, PgPayoffs(p, ne)[0], 1e-12);
    EXPECT_NEAR(cf.optimum, PgPayoffs(p, opt)[0], 1e-12);
    ++checked;
  }
}

TEST(ConstrainedPlayTest, Examples) {
  std::vector<double> l = {0.6, 0.1};
  EXPECT_EQ(PgConstrainedPlay(kReference, l), (std::vector<double>{0.6, 0.3}));
  std::vector<double> zero = {0.0, 0.0};
  auto play = PgConstrainedPlay(kReference, zero);
  EXPECT_NEAR(play[0], 0.3, 1e-12);
  // Grid oracle for liability 0.1: maximize over mu in [0.1, 1].
  double best = -1, arg = -1;
  for (int k = 100; k <= 1000; ++k) {
    std::vector<double> mu = {k / 1000.0, 0.3};
    double v = PgPayoffs(kReference, mu)[0];
    if (v > best) best = v, arg = mu[0];
  }
  EXPECT_NEAR(arg, 0.3, 1e-12);
}

TEST(ConstrainedPlayTest, NoProfitablePerturbation) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 1000; ++t) {
    PublicGoodsParams p{2 + t % 3, u(rng) * 0.2, 0.1 + u(rng)};
    std::vector<double> liab(p.num_players);
    for (double& x : liab) x = u(rng);
    std::vector<double> play = PgConstrainedPlay(p, liab);
    const int i = t % p.num_players;
    const double base = PgPayoffs(p, play)[i];
    for (double delta : {-0.05, -0.001, 0.001, 0.05}) {
      std::vector<double> dev = play;
      dev[i] += delta;
      if (dev[i] < liab[i] || dev[i] < 0.0 || dev[i] > 1.0) continue;
      EXPECT_LE(PgPayoffs(p, dev)[i], base + 1e-12);
    }
  }
}

TEST(PgShapeTest, ExternalityAndConcavity) {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(0.0, 0.9);
  for (int t = 0; t < 1000; ++t) {
    PublicGoodsParams p{3, 0.01 + u(rng) * 0.2, 0.1 + u(rng)};
    std::vector<double> mu = {u(rng), u(rng), u(rng)};
    std::vector<double> more = mu;
    more[1] += 0.05;
    EXPECT_GT(PgPayoffs(p, more)[0], PgPayoffs(p, mu)[0]);
    // Strict concavity in the own rate: midpoint beats the chord.
    std::vector<double> lo = mu, hi = mu, mid = mu;
    hi[0] = mu[0] + 0.1;
    mid[0] = mu[0] + 0.05;
    EXPECT_GT(PgPayoffs(p, mid)[0],
              0.5 * (PgPayoffs(p, lo)[0] + PgPayoffs(p, hi)[0]));
  }
}

TEST(PgShapeTest, OptimumBeatsSymmetricGrid) {
  for (PublicGoodsParams p : {kReference, PublicGoodsParams{3, 0.05, 0.5}}) {
    std::vector<double> opt(p.num_players, PgSocialOptimum(p));
    const double best = Total(PgPayoffs(p, opt));
    for (int k = 0; k <= 100; ++k) {
      std::vector<double> mu(p.num_players, k / 100.0);
      EXPECT_GE(best + 1e-12, Total(PgPayoffs(p, mu)));
    }
  }
}

TEST(PublicGoodsGameTest, Interface) {
  PublicGoodsGame game(kReference);
  EXPECT_EQ(game.NumPlayers(), 2);
  EXPECT_EQ(game.LowerBound(), 0.0);
  EXPECT_EQ(game.UpperBound(), 1.0);
  auto d = game.DisagreementProfile();
  EXPECT_NEAR(d[0], 0.3, 1e-12);
  EXPECT_FALSE(game.Describe().empty());
  EXPECT_THROW(PublicGoodsGame({0, 0.1, 0.3}), std::invalid_argument);
  EXPECT_THROW(PublicGoodsGame({2, -0.1, 0.3}), std::invalid_argument);
  EXPECT_THROW(PublicGoodsGame({2, 0.1, 0.0}), std::invalid_argument);
}

}  // namespace
}  // namespace ccfmech
