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
#include "ccfmech/action_order.h"

#include <random>

#include <gtest/gtest.h>

namespace ccfmech {
namespace {

TEST(CompareTest, Examples) {
  EXPECT_EQ(Compare({0.2, 0.8}, {0.4, 0.9}), Ordering::kLess);
  EXPECT_EQ(Compare({0.4, 0.9}, {0.2, 0.8}), Ordering::kGreater);
  EXPECT_EQ(Compare({0.2, 0.9}, {0.4, 0.8}), Ordering::kIncomparable);
  EXPECT_EQ(Compare({0.3, 0.3}, {0.3, 0.3}), Ordering::kEqual);
  EXPECT_STREQ(OrderingName(Ordering::kLess), "LE");
  EXPECT_STREQ(OrderingName(Ordering::kIncomparable), "INCOMPARABLE");
}

TEST(CompareTest, ToleranceAndMismatch) {
  EXPECT_EQ(Compare({0.3}, {0.3 + 1e-12}), Ordering::kEqual);
  EXPECT_EQ(Compare({0.3}, {0.3 + 1e-6}), Ordering::kLess);
  EXPECT_THROW(Compare({0.1}, {0.1, 0.2}), std::invalid_argument);
  EXPECT_THROW(Join(Action{0.1}, Action{0.1, 0.2}), std::invalid_argument);
  EXPECT_THROW(Meet(Action{0.1}, Action{0.1, 0.2}), std::invalid_argument);
}

TEST(LatticeTest, JoinMeetExamples) {
  EXPECT_EQ(Join(Action{0.2, 0.9}, Action{0.4, 0.8}), (Action{0.4, 0.9}));
  EXPECT_EQ(Meet(Action{0.2, 0.9}, Action{0.4, 0.8}), (Action{0.2, 0.8}));
  Action a{0.1, 0.7, 0.3};
  EXPECT_EQ(Join(a, a), a);
}

Action RandomAction(std::mt19937_64& rng, int dims) {
  std::uniform_int_distribution<int> level(0, 10);
  std::vector<double> c;
  for (int d = 0; d < dims; ++d) c.push_back(level(rng) / 10.0);
  return Action(c);
}

TEST(LatticeTest, LawsOnRandomActions) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    const int dims = 1 + trial % 3;
    Action a = RandomAction(rng, dims), b = RandomAction(rng, dims),
           c = RandomAction(rng, dims);
    EXPECT_EQ(Join(a, b), Join(b, a));
    EXPECT_EQ(Meet(a, b), Meet(b, a));
    EXPECT_EQ(Join(Join(a, b), c), Join(a, Join(b, c)));
    EXPECT_EQ(Meet(Meet(a, b), c), Meet(a, Meet(b, c)));
    EXPECT_EQ(Join(a, a), a);
    EXPECT_EQ(Meet(a, a), a);
    EXPECT_EQ(Join(a, Meet(a, b)), a);
    EXPECT_EQ(Meet(a, Join(a, b)), a);
    Ordering o = Compare(a, Join(a, b));
    EXPECT_TRUE(o == Ordering::kLess || o == Ordering::kEqual);
  }
}

TEST(LatticeTest, PartialOrderOnRandomTriples) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 2000; ++trial) {
    Action a = RandomAction(rng, 2), b = RandomAction(rng, 2), c = RandomAction(rng, 2);
    EXPECT_TRUE(LessEqual(a, a));
    if (LessEqual(a, b) && LessEqual(b, a)) EXPECT_EQ(Compare(a, b), Ordering::kEqual);
    if (LessEqual(a, b) && LessEqual(b, c)) EXPECT_TRUE(LessEqual(a, c));
  }
}

TEST(ProfileTest, JoinAndOrder) {
  Profile a = {{0.1, 0.5}, {0.3, 0.3}};
  Profile b = {{0.2, 0.4}, {0.3, 0.1}};
  Profile j = Join(a, b);
  EXPECT_TRUE(LessEqual(a, j));
  EXPECT_TRUE(LessEqual(b, j));
  EXPECT_FALSE(LessEqual(a, b));
  EXPECT_TRUE(Equal(j, Profile{{0.2, 0.5}, {0.3, 0.3}}));
  EXPECT_THROW(Join(a, Profile{{0.1, 0.5}}), std::invalid_argument);
}

TEST(TariffCapTest, Examples) {
  EXPECT_NEAR(TariffCap(0.7, 1.0), 0.3, 1e-12);
  for (double m : {0.0, 0.25, 0.9, 1.0}) EXPECT_DOUBLE_EQ(TariffCap(0.0, m), 1.0);
  EXPECT_DOUBLE_EQ(TariffCap(1.0, 1.0), 0.0);
  EXPECT_THROW(TariffCap(1.1, 0.5), std::invalid_argument);
  EXPECT_THROW(TariffCap(0.5, -0.1), std::invalid_argument);
}

TEST(TariffCapTest, WeaklyDecreasingInBothArguments) {
  for (int i = 0; i <= 10; ++i) {
    for (int j = 0; j <= 10; ++j) {
      const double n = i / 10.0, m = j / 10.0;
      EXPECT_DOUBLE_EQ(TariffCap(n, 0.0), 1.0);
      if (i < 10) EXPECT_LE(TariffCap((i + 1) / 10.0, m), TariffCap(n, m));
      if (j < 10) EXPECT_LE(TariffCap(n, (j + 1) / 10.0), TariffCap(n, m));
    }
  }
}

TEST(ActionSpaceTest, BoundsAndClip) {
  ActionSpace space({{"mit", 0.0, 1.0}, {"gtc", 0.0, 20.0}}, 2);
  EXPECT_EQ(space.num_dims(), 2);
  EXPECT_EQ(space.DimIndex("gtc"), 1);
  EXPECT_FALSE(space.DimIndex("nope").has_value());
  EXPECT_EQ(space.Bottom(0), (Action{0.0, 0.0}));
  EXPECT_EQ(space.Top(1), (Action{1.0, 20.0}));
  space.SetPlayerBounds(1, {{0.2, 0.0}, {0.8, 10.0}});
  EXPECT_TRUE(space.HasPlayerBounds(1));
  EXPECT_EQ(space.Bottom(1), (Action{0.2, 0.0}));
  EXPECT_TRUE(space.Contains(1, {0.5, 5.0}));
  EXPECT_FALSE(space.Contains(1, {0.9, 5.0}));
  EXPECT_EQ(space.Clip(1, {0.9, -1.0}), (Action{0.8, 0.0}));
  EXPECT_THROW(space.SetPlayerBounds(0, {{-0.1, 0.0}, {1.0, 20.0}}), std::invalid_argument);
  EXPECT_THROW(space.Bottom(2), std::out_of_range);
  EXPECT_THROW(ActionSpace({{"x", 1.0, 0.0}}, 1), std::invalid_argument);
  EXPECT_THROW(ActionSpace({{"x", 0.0, 1.0}}, 0), std::invalid_argument);
}

}  // namespace
}  // namespace ccfmech
