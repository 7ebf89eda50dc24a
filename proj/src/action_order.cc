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

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ccfmech {
namespace {

void CheckSameSize(const Action& a, const Action& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("dimension mismatch: " +
                                std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()));
  }
}

void CheckSameSize(const Profile& a, const Profile& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("profile size mismatch: " +
                                std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()));
  }
}

}  // namespace

const char* OrderingName(Ordering ordering) {
  switch (ordering) {
    case Ordering::kLess:
      return "LE";
    case Ordering::kGreater:
      return "GE";
    case Ordering::kEqual:
      return "EQ";
    case Ordering::kIncomparable:
      return "INCOMPARABLE";
  }
  return "?";
}

Ordering Compare(const Action& a, const Action& b, double tolerance) {
  CheckSameSize(a, b);
  bool le = true;
  bool ge = true;
  for (std::size_t d = 0; d < a.size(); ++d) {
    if (a[d] > b[d] + tolerance) le = false;
    if (b[d] > a[d] + tolerance) ge = false;
  }
  if (le && ge) return Ordering::kEqual;
  if (le) return Ordering::kLess;
  if (ge) return Ordering::kGreater;
  return Ordering::kIncomparable;
}

bool LessEqual(const Action& a, const Action& b, double tolerance) {
  Ordering o = Compare(a, b, tolerance);
  return o == Ordering::kLess || o == Ordering::kEqual;
}

Action Join(const Action& a, const Action& b) {
  CheckSameSize(a, b);
  std::vector<double> out(a.size());
  for (std::size_t d = 0; d < a.size(); ++d) out[d] = std::max(a[d], b[d]);
  return Action(std::move(out));
}

Action Meet(const Action& a, const Action& b) {
  CheckSameSize(a, b);
  std::vector<double> out(a.size());
  for (std::size_t d = 0; d < a.size(); ++d) out[d] = std::min(a[d], b[d]);
  return Action(std::move(out));
}

bool LessEqual(const Profile& a, const Profile& b, double tolerance) {
  CheckSameSize(a, b);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!LessEqual(a[i], b[i], tolerance)) return false;
  }
  return true;
}

bool Equal(const Profile& a, const Profile& b, double tolerance) {
  CheckSameSize(a, b);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (Compare(a[i], b[i], tolerance) != Ordering::kEqual) return false;
  }
  return true;
}

Profile Join(const Profile& a, const Profile& b) {
  CheckSameSize(a, b);
  Profile out;
  out.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(Join(a[i], b[i]));
  return out;
}

double TariffCap(double non_tariff, double supplier_mitigation) {
  auto in_unit = [](double x) { return std::isfinite(x) && x >= 0.0 && x <= 1.0; };
  if (!in_unit(non_tariff) || !in_unit(supplier_mitigation)) {
    throw std::invalid_argument("tariff cap inputs must lie in [0, 1]");
  }
  return 1.0 - non_tariff * supplier_mitigation;
}

ActionSpace::ActionSpace(std::vector<VariableSpec> dims, int num_players)
    : dims_(std::move(dims)),
      num_players_(num_players),
      player_bounds_(num_players > 0 ? num_players : 0) {
  if (num_players < 1) {
    throw std::invalid_argument("action space needs at least one player");
  }
  for (const VariableSpec& v : dims_) {
    if (!std::isfinite(v.lower) || !std::isfinite(v.upper)) {
      throw std::invalid_argument("variable '" + v.name +
                                  "' has non-finite bounds");
    }
    if (v.lower > v.upper) {
      throw std::invalid_argument("variable '" + v.name +
                                  "' has lower > upper");
    }
  }
}

std::optional<int> ActionSpace::DimIndex(const std::string& name) const {
  for (int d = 0; d < num_dims(); ++d) {
    if (dims_[d].name == name) return d;
  }
  return std::nullopt;
}

void ActionSpace::CheckPlayer(int player) const {
  if (player < 0 || player >= num_players_) {
    throw std::out_of_range("player index " + std::to_string(player) +
                            " out of range");
  }
}

void ActionSpace::SetPlayerBounds(int player, Bounds bounds) {
  CheckPlayer(player);
  if (static_cast<int>(bounds.lower.size()) != num_dims() ||
      static_cast<int>(bounds.upper.size()) != num_dims()) {
    throw std::invalid_argument("player bounds have wrong dimension count");
  }
  for (int d = 0; d < num_dims(); ++d) {
    const double lo = bounds.lower[d];
    const double hi = bounds.upper[d];
    if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi ||
        lo < dims_[d].lower || hi > dims_[d].upper) {
      throw std::invalid_argument("player " + std::to_string(player) +
                                  " bounds for '" + dims_[d].name +
                                  "' do not nest inside the global bounds");
    }
  }
  player_bounds_[player] = std::move(bounds);
}

bool ActionSpace::HasPlayerBounds(int player) const {
  CheckPlayer(player);
  return player_bounds_[player].has_value();
}

Bounds ActionSpace::PlayerBounds(int player) const {
  CheckPlayer(player);
  if (player_bounds_[player]) return *player_bounds_[player];
  Bounds b;
  for (const VariableSpec& v : dims_) {
    b.lower.push_back(v.lower);
    b.upper.push_back(v.upper);
  }
  return b;
}

Action ActionSpace::Bottom(int player) const {
  return Action(PlayerBounds(player).lower);
}

Action ActionSpace::Top(int player) const {
  return Action(PlayerBounds(player).upper);
}

Profile ActionSpace::BottomProfile() const {
  Profile p;
  for (int i = 0; i < num_players_; ++i) p.push_back(Bottom(i));
  return p;
}

Profile ActionSpace::TopProfile() const {
  Profile p;
  for (int i = 0; i < num_players_; ++i) p.push_back(Top(i));
  return p;
}

bool ActionSpace::Contains(int player, const Action& action,
                           double tolerance) const {
  if (static_cast<int>(action.size()) != num_dims()) return false;
  Bounds b = PlayerBounds(player);
  for (int d = 0; d < num_dims(); ++d) {
    if (!std::isfinite(action[d])) return false;
    if (action[d] < b.lower[d] - tolerance) return false;
    if (action[d] > b.upper[d] + tolerance) return false;
  }
  return true;
}

Action ActionSpace::Clip(int player, const Action& action) const {
  Bounds b = PlayerBounds(player);
  if (static_cast<int>(action.size()) != num_dims()) {
    throw std::invalid_argument("action has wrong dimension count");
  }
  std::vector<double> out(action.size());
  for (int d = 0; d < num_dims(); ++d) {
    out[d] = std::clamp(action[d], b.lower[d], b.upper[d]);
  }
  return Action(std::move(out));
}

}  // namespace ccfmech
