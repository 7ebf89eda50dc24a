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
// Bounded, componentwise-ordered action spaces. Every component is stored in
// "more is more cooperative" orientation, so the product order is the
// cooperativeness order the mechanism works with.

#ifndef CCFMECH_ACTION_ORDER_H_
#define CCFMECH_ACTION_ORDER_H_

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace ccfmech {

// Absolute tolerance for all lattice comparisons.
inline constexpr double kCompareTolerance = 1e-9;

struct VariableSpec {
  std::string name;
  double lower = 0.0;
  double upper = 1.0;
};

struct Bounds {
  std::vector<double> lower;
  std::vector<double> upper;
};

class Action {
 public:
  Action() = default;
  explicit Action(std::vector<double> components)
      : components_(std::move(components)) {}
  Action(std::initializer_list<double> components) : components_(components) {}

  std::size_t size() const { return components_.size(); }
  double operator[](std::size_t d) const { return components_[d]; }
  double& operator[](std::size_t d) { return components_[d]; }
  const std::vector<double>& components() const { return components_; }
  auto begin() const { return components_.begin(); }
  auto end() const { return components_.end(); }

  bool operator==(const Action&) const = default;

 private:
  std::vector<double> components_;
};

// One Action per player.
using Profile = std::vector<Action>;

enum class Ordering { kLess, kGreater, kEqual, kIncomparable };

const char* OrderingName(Ordering ordering);

// kLess means a <= b componentwise but not b <= a; kEqual means both.
Ordering Compare(const Action& a, const Action& b,
                 double tolerance = kCompareTolerance);
bool LessEqual(const Action& a, const Action& b,
               double tolerance = kCompareTolerance);

Action Join(const Action& a, const Action& b);
Action Meet(const Action& a, const Action& b);

bool LessEqual(const Profile& a, const Profile& b,
               double tolerance = kCompareTolerance);
bool Equal(const Profile& a, const Profile& b,
           double tolerance = kCompareTolerance);
Profile Join(const Profile& a, const Profile& b);

// Largest import tariff a country may levy on a supplier, given the
// country's "non-tariff on clean imports" rate and the supplier's
// mitigation rate. Both inputs must lie in [0, 1].
double TariffCap(double non_tariff, double supplier_mitigation);

// Dimensions shared by all players, with optional per-player bounds nested
// inside the global ones.
class ActionSpace {
 public:
  ActionSpace() = default;
  ActionSpace(std::vector<VariableSpec> dims, int num_players);

  int num_dims() const { return static_cast<int>(dims_.size()); }
  int num_players() const { return num_players_; }
  const std::vector<VariableSpec>& dims() const { return dims_; }

  // Index of the named dimension, if any.
  std::optional<int> DimIndex(const std::string& name) const;

  void SetPlayerBounds(int player, Bounds bounds);
  bool HasPlayerBounds(int player) const;
  Bounds PlayerBounds(int player) const;

  Action Bottom(int player) const;
  Action Top(int player) const;
  Profile BottomProfile() const;
  Profile TopProfile() const;

  bool Contains(int player, const Action& action,
                double tolerance = kCompareTolerance) const;
  Action Clip(int player, const Action& action) const;

 private:
  void CheckPlayer(int player) const;

  std::vector<VariableSpec> dims_;
  int num_players_ = 0;
  std::vector<std::optional<Bounds>> player_bounds_;
};

}  // namespace ccfmech

#endif  // CCFMECH_ACTION_ORDER_H_
