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
// Acceptance checks. Prints one [PASS]/[FAIL] line per criterion and exits
// nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ccfmech/analysis.h"
#include "ccfmech/cli.h"
#include "ccfmech/games.h"
#include "ccfmech/learning.h"
#include "ccfmech/results_io.h"
#include "ccfmech/scenario_io.h"
#include "test_support.h"

namespace ccfmech {
namespace {

namespace fs = std::filesystem;

struct Verdict {
  bool pass = true;
  std::string detail;
};

std::string DataPath(const std::string& rel) {
  return std::string(CCFMECH_DATA_DIR) + "/" + rel;
}

fs::path FreshDir(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("ccfmech_acceptance_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

int Cli(std::vector<std::string> args, std::string* out = nullptr) {
  args.insert(args.begin(), "ccfmech");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream o, e;
  int code = RunCli(static_cast<int>(argv.size()), argv.data(), o, e);
  if (out != nullptr) *out = o.str() + e.str();
  return code;
}

std::vector<std::vector<std::string>> ReadCsv(const fs::path& path) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(ReadFile(path.string()));
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::istringstream cs(line);
    for (std::string cell; std::getline(cs, cell, ',');) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

const PublicGoodsParams kReference{2, 0.09, 0.3};

StrategyGrid CriterionGrid() {
  StrategyGrid grid;
  grid.action_levels = {0.0, 0.3, 0.6};
  grid.threshold_levels = {0.0, 0.3, 0.6};
  grid.k = 1;
  return grid;
}

Verdict FourCountry() {
  fs::path dir = FreshDir("ac1");
  std::string log;
  int code = Cli({"solve", DataPath("scenarios/four_country.json"), "--out", dir.string()}, &log);
  if (code != 0) return {false, "exit " + std::to_string(code) + ": " + log};
  auto rows = ReadCsv(dir / "liabilities.csv");
  const std::vector<std::pair<std::string, double>> expected = {
      {"A", 10}, {"B", 8}, {"C", 8}, {"D", 8}};
  if (rows.size() != 5) return {false, "unexpected row count"};
  std::string got;
  bool ok = true;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    ok = ok && rows[i + 1][0] == expected[i].first &&
         std::stod(rows[i + 1][1]) == expected[i].second;
    got += rows[i + 1][0] + "=" + rows[i + 1][1] + " ";
  }
  return {ok, got};
}

Verdict ClosedForms() {
  const double mu_ne = PgNash(kReference), mu_opt = PgSocialOptimum(kReference);
  ClosedFormPayoffs cf = PgClosedFormPayoffs(kReference);
  const double w_ne = 2 * cf.nash, w_opt = 2 * cf.optimum;
  bool ok = std::abs(mu_ne - 0.3) <= 1e-9 && std::abs(mu_opt - 0.6) <= 1e-9 &&
            std::abs(w_ne - 1.442) <= 1e-9 && std::abs(w_opt - 1.496) <= 1e-9;
  return {ok, "muNE=" + FormatNumber(mu_ne) + " muOpt=" + FormatNumber(mu_opt) +
                  " welfareNE=" + FormatNumber(w_ne) + " welfareOpt=" + FormatNumber(w_opt)};
}

Verdict MechanismOptimum() {
  Scenario s = LoadScenario(DataPath("scenarios/pair_offers.json"));
  Liabilities l = Solve(s);
  PublicGoodsGame game(kReference);
  std::vector<double> liab = {l.profile[0][0], l.profile[1][0]};
  const double welfare = Welfare(game.Payoffs(game.ConstrainedPlay(liab)));
  bool ok = liab[0] == 0.6 && liab[1] == 0.6 && std::abs(welfare - 1.496) <= 1e-9;
  return {ok, "liabilities=(" + JoinNumbers(liab, ',') + ") welfare=" + FormatNumber(welfare)};
}

Verdict EquilibriumStructure() {
  PublicGoodsGame game(kReference);
  EquilibriumReport r = CommitmentEquilibria(game, CriterionGrid());
  int pair = -1;
  for (std::size_t s = 0; s < r.strategies.size(); ++s) {
    const OfferPoint& p = r.strategies[s].points[0];
    if (p.offer[0] == 0.6 && p.threshold[0] == 0.6) pair = static_cast<int>(s);
  }
  const std::vector<int> profile = {pair, pair};
  bool nash = false, strong = false;
  std::vector<double> actions;
  for (const ProfileOutcome& o : r.outcomes) {
    if (o.strategies != profile) continue;
    nash = true;
    strong = o.strong;
    actions = o.outcome.actions;
  }
  if (!nash) return {false, "pair profile is not Nash"};
  bool pareto = false;
  for (const ParetoPoint& p : ParetoFront(game, 0.05)) {
    pareto = pareto || (std::abs(p.actions[0] - actions[0]) < 1e-12 &&
                        std::abs(p.actions[1] - actions[1]) < 1e-12);
  }
  auto ir = IsIndividuallyRational(game, actions);
  bool core = CoreMembership(game, actions, 0.05).in_core;
  bool ok = nash && strong && pareto && ir[0] && ir[1] && core;
  std::ostringstream d;
  d << "nash=" << nash << " strong=" << strong << " pareto=" << pareto
    << " ir=" << (ir[0] && ir[1]) << " core=" << core << " (" << r.nash.size()
    << " Nash, " << r.strong.size() << " strong profiles)";
  return {ok, d.str()};
}

Verdict OracleEquivalence() {
  std::mt19937_64 rng(20260214);
  const int trials = 1000;
  int agree = 0;
  for (int t = 0; t < trials; ++t) {
    Scenario s = testing::RandomStepScenario(rng);
    auto expected = testing::BruteForceLargestFeasible(s, testing::kFiveLevels);
    auto got = testing::ToRows(SolveLargestFeasible(s).profile);
    bool same = true;
    for (std::size_t i = 0; i < got.size(); ++i)
      for (std::size_t d = 0; d < got[i].size(); ++d)
        same = same && std::abs(got[i][d] - expected[i][d]) <= 1e-12;
    agree += same;
  }
  return {agree == trials, std::to_string(agree) + "/" + std::to_string(trials) + " agree"};
}

Verdict VariantEquivalence() {
  PublicGoodsGame game(kReference);
  auto outcomes = [&](Variant v) {
    EquilibriumOptions options;
    options.rules.variant = v;
    std::set<std::vector<double>> out;
    for (const ProfileOutcome& o : CommitmentEquilibria(game, CriterionGrid(), options).outcomes)
      if (o.strong) out.insert(o.outcome.actions);
    return out;
  };
  auto basic = outcomes(Variant::kBasic);
  auto prioritized = outcomes(Variant::kPrioritized);
  std::string d = std::to_string(basic.size()) + " strong outcome(s):";
  for (const auto& a : basic) d += " (" + JoinNumbers(a, ',') + ")";
  return {!basic.empty() && basic == prioritized, d};
}

Verdict LearnSummary(const std::string& config, const std::string& runs, const fs::path& dir,
                     double* median, double* fraction) {
  std::string log;
  int code = Cli({"learn", DataPath(config), "--runs", runs, "--seed", "2026",
                  "--out", dir.string()}, &log);
  if (code != 0) return {false, "exit " + std::to_string(code) + ": " + log};
  auto rows = ReadCsv(dir / "summary_stats.csv");
  *median = std::stod(rows[1][2]);
  *fraction = std::stod(rows[1][3]);
  return {true, ""};
}

Verdict BetterResponse() {
  double median = 0, fraction = 0;
  Verdict v = LearnSummary("configs/better_response.json", "100", FreshDir("ac7"), &median, &fraction);
  if (!v.pass) return v;
  return {fraction >= 0.9, "fraction within 1% = " + FormatNumber(fraction) +
                               ", median " + FormatNumber(median)};
}

Verdict PolicyGradient() {
  double median = 0, fraction = 0;
  Verdict v = LearnSummary("configs/policy_gradient.json", "20", FreshDir("ac8"), &median, &fraction);
  if (!v.pass) return v;
  return {median > 1.442 && median <= 1.496 + 1e-6, "median terminal welfare " + FormatNumber(median)};
}

Verdict RewardShaping() {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int t = 0; t < 100000; ++t) {
    std::vector<double> r(1 + t % 8);
    for (double& x : r) x = u(rng) * 2 - 0.5;
    auto s = ShapedReward(r, u(rng));
    double a = 0, b = 0;
    for (double x : r) a += x;
    for (double x : s) b += x;
    worst = std::max(worst, std::abs(a - b));
  }
  bool schedules = true;
  for (ScheduleKind kind : {ScheduleKind::kConstantThenZero, ScheduleKind::kLinearDecayThenZero}) {
    for (int total = 1; total <= 3000; total += (total < 100 ? 1 : 97)) {
      AltruismSchedule s{kind, 0.9, total};
      for (int e = 0; e < total; ++e) {
        if (3 * e >= 2 * total && AlphaAt(s, e) != 0.0) schedules = false;
      }
    }
  }
  return {worst <= 1e-12 && schedules,
          "max |sum r' - sum r| = " + FormatNumber(worst) + ", final third zero: " +
              (schedules ? "yes" : "no")};
}

Verdict Determinism() {
  struct Case {
    std::string name;
    std::vector<std::string> args;
    std::vector<std::string> files;
  };
  const std::vector<Case> cases = {
      {"br", {"learn", DataPath("configs/better_response.json"), "--runs", "6", "--seed", "7",
              "--grid", "0.1"}, {"summary.csv", "summary_stats.csv"}},
      {"pg", {"learn", DataPath("configs/policy_gradient.json"), "--seeds", "7,8,9,10",
              "--episodes", "500"}, {"run_7.csv", "run_10.csv", "summary.csv"}},
      {"eq", {"analyze", "--mode", "equilibria", "--levels", "0,0.3,0.6", "--k", "2"},
       {"equilibria.csv"}},
      {"core", {"analyze", "--mode", "core", "--grid", "0.1"}, {"core.csv"}},
  };
  int files = 0;
  for (const Case& c : cases) {
    fs::path one = FreshDir("ac10_" + c.name + "_1"), four = FreshDir("ac10_" + c.name + "_4");
    std::vector<std::string> a = c.args, b = c.args;
    a.insert(a.end(), {"--parallel", "1", "--out", one.string()});
    b.insert(b.end(), {"--parallel", "4", "--out", four.string()});
    if (Cli(a) != 0 || Cli(b) != 0) return {false, c.name + ": command failed"};
    for (const auto& entry : fs::directory_iterator(one)) {
      if (ReadFile(entry.path().string()) !=
          ReadFile((four / entry.path().filename()).string())) {
        return {false, c.name + ": " + entry.path().filename().string() + " differs"};
      }
      ++files;
    }
    for (const std::string& f : c.files) {
      if (!fs::exists(one / f)) return {false, c.name + ": missing " + f};
    }
  }
  return {true, std::to_string(files) + " files byte-identical across --parallel 1 and 4"};
}

struct Criterion {
  const char* id;
  const char* name;
  double limit_seconds;
  std::function<Verdict()> check;
};

}  // namespace
}  // namespace ccfmech

int main() {
  using namespace ccfmech;
  const std::vector<Criterion> criteria = {
      {"AC1", "four-country bill liabilities (10, 8, 8, 8)", 1, FourCountry},
      {"AC2", "two-player closed forms", 1, ClosedForms},
      {"AC3", "pair offers reach the optimum", 1, MechanismOptimum},
      {"AC4", "pair profile is a strong equilibrium with a rational core outcome", 60,
       EquilibriumStructure},
      {"AC5", "largest feasible profile matches brute force", 300, OracleEquivalence},
      {"AC6", "basic and prioritized strong outcomes agree", 60, VariantEquivalence},
      {"AC7", "better-response runs end near the optimum", 300, BetterResponse},
      {"AC8", "policy-gradient median between disagreement and optimum", 600, PolicyGradient},
      {"AC9", "reward shaping identities", 60, RewardShaping},
      {"AC10", "results independent of --parallel", 300, Determinism},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > c.limit_seconds) {
      v.pass = false;
      v.detail += " [over time limit]";
    }
    failed += !v.pass;
    std::printf("[%s] %-4s %s: %s (%.2fs)\n", v.pass ? "PASS" : "FAIL", c.id, c.name,
                v.detail.c_str(), seconds);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
