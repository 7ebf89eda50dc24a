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

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ccfmech/errors.h"

namespace ccfmech {

void ValidateParams(const PublicGoodsParams& p) {
  if (p.num_players < 1) throw std::invalid_argument("N must be >= 1");
  if (!std::isfinite(p.beta) || p.beta < 0.0) {
    throw std::invalid_argument("beta must be finite and >= 0");
  }
  if (!std::isfinite(p.gamma) || p.gamma <= 0.0) {
    throw std::invalid_argument("gamma must be finite and > 0");
  }
}

std::vector<double> PgPayoffs(const PublicGoodsParams& p,
                              std::span<const double> mu) {
  ValidateParams(p);
  if (static_cast<int>(mu.size()) != p.num_players) {
    throw std::invalid_argument("expected one mitigation rate per player");
  }
  double total = 0.0;
  for (double m : mu) {
    if (!std::isfinite(m) || m < 0.0 || m > 1.0) {
      throw std::invalid_argument("mitigation rates must lie in [0, 1]");
    }
    total += m;
  }
  const double n = p.num_players;
  std::vector<double> out(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) {
    out[i] = 1.0 - p.gamma * mu[i] * mu[i] - 2.0 * p.beta * n + 2.0 * p.beta * total;
  }
  return out;
}

double PgNash(const PublicGoodsParams& p) {
  ValidateParams(p);
  return std::clamp(p.beta / p.gamma, 0.0, 1.0);
}

double PgSocialOptimum(const PublicGoodsParams& p) {
  ValidateParams(p);
  return std::clamp(p.num_players * p.beta / p.gamma, 0.0, 1.0);
}

ClosedFormPayoffs PgClosedFormPayoffs(const PublicGoodsParams& p) {
  ValidateParams(p);
  const double n = p.num_players;
  const double ratio = p.beta / p.gamma;
  if (ratio > 1.0 || n * ratio > 1.0) {
    throw ClippedRegimeError(
        "closed forms need beta/gamma <= 1 and N beta/gamma <= 1");
  }
  const double base = 1.0 - 2.0 * p.beta * n;
  const double b2g = p.beta * p.beta / p.gamma;
  return {base + (2.0 * n - 1.0) * b2g, base + n * n * b2g};
}

std::vector<double> PgConstrainedPlay(const PublicGoodsParams& p,
                                      std::span<const double> liabilities) {
  const double unconstrained = PgNash(p);
  std::vector<double> out(liabilities.size());
  for (std::size_t i = 0; i < liabilities.size(); ++i) {
    const double l = liabilities[i];
    if (!std::isfinite(l) || l < 0.0 || l > 1.0) {
      throw std::invalid_argument("liabilities must lie in [0, 1]");
    }
    out[i] = std::max(l, unconstrained);
  }
  return out;
}

PublicGoodsGame::PublicGoodsGame(PublicGoodsParams params) : params_(params) {
  ValidateParams(params_);
}

std::vector<double> PublicGoodsGame::Payoffs(std::span<const double> actions) const {
  return PgPayoffs(params_, actions);
}

std::vector<double> PublicGoodsGame::ConstrainedPlay(
    std::span<const double> liabilities) const {
  return PgConstrainedPlay(params_, liabilities);
}

std::vector<double> PublicGoodsGame::DisagreementProfile() const {
  return std::vector<double>(params_.num_players, PgNash(params_));
}

std::string PublicGoodsGame::Describe() const {
  std::ostringstream out;
  out << "public goods game N=" << params_.num_players
      << " beta=" << params_.beta << " gamma=" << params_.gamma;
  return out.str();
}

}  // namespace ccfmech
