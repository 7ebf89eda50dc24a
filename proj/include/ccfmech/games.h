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
// Base games wrapped by the mechanism.

#ifndef CCFMECH_GAMES_H_
#define CCFMECH_GAMES_H_

#include <span>
#include <string>
#include <vector>

#include "ccfmech/errors.h"

namespace ccfmech {

// A one-shot game with one scalar, cooperativeness-ordered control variable
// per player. Analysis and learning only see this interface.
class BaseGame {
 public:
  virtual ~BaseGame() = default;

  virtual int NumPlayers() const = 0;
  virtual double LowerBound() const { return 0.0; }
  virtual double UpperBound() const { return 1.0; }
  virtual std::vector<double> Payoffs(std::span<const double> actions) const = 0;
  // Play of every player given lower bounds on their actions.
  virtual std::vector<double> ConstrainedPlay(
      std::span<const double> liabilities) const = 0;
  // Base-game Nash profile, used as the disagreement point.
  virtual std::vector<double> DisagreementProfile() const = 0;
  virtual std::string Describe() const = 0;
};

// Regions with unit capital and production, quadratic mitigation cost and
// linear climate damage:
//   payoff_i = 1 - gamma mu_i^2 - 2 beta N + 2 beta sum_j mu_j.
struct PublicGoodsParams {
  int num_players = 2;
  double beta = 0.09;
  double gamma = 0.3;
};

// Throws std::invalid_argument unless N >= 1, beta >= 0, gamma > 0, finite.
void ValidateParams(const PublicGoodsParams& p);

// Each mu_i must lie in [0, 1].
std::vector<double> PgPayoffs(const PublicGoodsParams& p,
                              std::span<const double> mu);

// beta / gamma, clipped to [0, 1].
double PgNash(const PublicGoodsParams& p);
// N beta / gamma, clipped to [0, 1].
double PgSocialOptimum(const PublicGoodsParams& p);

struct ClosedFormPayoffs {
  double nash = 0.0;
  double optimum = 0.0;
};

// Per-player payoffs at the symmetric Nash and optimum profiles. Throws
// ClippedRegimeError when either unclipped rate exceeds 1.
ClosedFormPayoffs PgClosedFormPayoffs(const PublicGoodsParams& p);

// mu_i = max(liability_i, clipped beta / gamma).
std::vector<double> PgConstrainedPlay(const PublicGoodsParams& p,
                                      std::span<const double> liabilities);

class PublicGoodsGame : public BaseGame {
 public:
  explicit PublicGoodsGame(PublicGoodsParams params);

  const PublicGoodsParams& params() const { return params_; }

  int NumPlayers() const override { return params_.num_players; }
  std::vector<double> Payoffs(std::span<const double> actions) const override;
  std::vector<double> ConstrainedPlay(
      std::span<const double> liabilities) const override;
  std::vector<double> DisagreementProfile() const override;
  std::string Describe() const override;

 private:
  PublicGoodsParams params_;
};

}  // namespace ccfmech

#endif  // CCFMECH_GAMES_H_
