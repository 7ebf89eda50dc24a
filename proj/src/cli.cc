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
#include "ccfmech/cli.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <map>
#include <sstream>

#include "CLI11.hpp"

#include "ccfmech/parallel.h"
#include "ccfmech/random.h"
#include "ccfmech/results_io.h"
#include "ccfmech/scenario_io.h"

namespace ccfmech {
namespace {

using nlohmann::json;

struct GlobalOptions {
  std::uint64_t seed = 0;
  std::string out = ".";
  int parallel = 1;
  std::string variant;
  double grid = 0.0;
};

std::string OutPath(const GlobalOptions& g, const std::string& name) {
  return (std::filesystem::path(g.out) / name).string();
}

std::optional<Variant> VariantOverride(const GlobalOptions& g) {
  if (g.variant.empty()) return std::nullopt;
  auto v = ParseVariant(g.variant);
  if (!v) throw std::invalid_argument("unknown variant '" + g.variant + "'");
  return v;
}

std::vector<double> ParseList(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string("bad number '") + item + "' in " + what);
    }
  }
  if (out.empty()) throw std::invalid_argument(std::string(what) + " is empty");
  return out;
}

std::string Joined(const std::vector<int>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ';';
    out += std::to_string(values[i]);
  }
  return out;
}

double Median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t m = values.size() / 2;
  if (values.size() % 2 == 1) return values[m];
  return 0.5 * (values[m - 1] + values[m]);
}

double OptimalWelfare(const PublicGoodsParams& p) {
  std::vector<double> mu(p.num_players, PgSocialOptimum(p));
  return Welfare(PgPayoffs(p, mu));
}

// ---------------------------------------------------------------------------
// solve

struct SolveArgs {
  std::string scenario;
};

int RunSolve(const GlobalOptions& g, const SolveArgs& a, std::ostream& out) {
  Scenario s = LoadScenario(a.scenario);
  if (auto v = VariantOverride(g)) s.variant = *v;
  const auto start = std::chrono::steady_clock::now();
  Liabilities l = Solve(s);
  const double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start).count();

  std::vector<std::string> header = {"player"};
  for (const VariableSpec& d : s.space.dims()) header.push_back(d.name);
  header.push_back("binding");
  std::ostringstream csv;
  CsvWriter w(csv, g.seed, ScenarioHash(s), header);
  for (int i = 0; i < s.num_players(); ++i) {
    w.Add(s.players[i]);
    for (double x : l.profile[i]) w.Add(x);
    w.Add(l.binding[i] ? std::to_string(*l.binding[i]) : std::string());
    w.EndRow();
  }
  const std::string path = OutPath(g, "liabilities.csv");
  WriteTextFile(path, csv.str());

  out << "variant " << VariantName(s.variant) << ", " << l.iterations
      << " iterations, " << FormatNumber(std::round(ms * 1000) / 1000) << " ms\n";
  for (int i = 0; i < s.num_players(); ++i) {
    out << "  " << s.players[i] << ": " << JoinNumbers(l.profile[i].components(), ',');
    if (l.binding[i]) out << "  (point " << *l.binding[i] << ")";
    out << "\n";
  }
  out << "wrote " << path << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// analyze

struct AnalyzeArgs {
  std::string mode = "pareto";
  std::string scenario;
  int n = 2;
  double beta = 0.09;
  double gamma = 0.3;
  std::string profile;
  std::string levels;
  int k = 1;
  bool non_exploitable = false;
  std::string convention = "nash";
};

std::vector<std::string> Columns(const std::string& prefix, int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

void Append(std::vector<std::string>& to, const std::vector<std::string>& more) {
  to.insert(to.end(), more.begin(), more.end());
}

int RunAnalyze(const GlobalOptions& g, const AnalyzeArgs& a, std::ostream& out) {
  PublicGoodsParams params{a.n, a.beta, a.gamma};
  PublicGoodsGame game(params);
  const int n = game.NumPlayers();
  const double step = g.grid > 0.0 ? g.grid : 0.05;

  CommitmentRules rules;
  std::string hash;
  if (!a.scenario.empty()) {
    Scenario s = LoadScenario(a.scenario);
    rules.variant = s.variant;
    rules.aggregator = s.aggregator;
    hash = ScenarioHash(s);
  }
  if (auto v = VariantOverride(g)) rules.variant = *v;
  {
    std::ostringstream desc;
    desc << game.Describe() << ";mode=" << a.mode << ";grid=" << FormatNumber(step)
         << ";variant=" << VariantName(rules.variant) << ";scenario=" << hash
         << ";profile=" << a.profile << ";levels=" << a.levels << ";k=" << a.k
         << ";nonExploitable=" << a.non_exploitable << ";convention=" << a.convention;
    hash = HexDigest(Fnv1a64(desc.str()));
  }
  std::ostringstream csv;

  if (a.mode == "pareto") {
    std::vector<ParetoPoint> front = ParetoFront(game, step);
    std::vector<std::string> header = Columns("mu_", n);
    Append(header, Columns("payoff_", n));
    Append(header, {"welfare", "individuallyRational"});
    CsvWriter w(csv, g.seed, hash, header);
    for (const ParetoPoint& p : front) {
      for (double x : p.actions) w.Add(x);
      for (double x : p.payoffs) w.Add(x);
      auto ir = IsIndividuallyRational(game, p.actions);
      w.Add(Welfare(p.payoffs));
      w.Add(std::all_of(ir.begin(), ir.end(), [](bool b) { return b; }));
      w.EndRow();
    }
    WriteTextFile(OutPath(g, "pareto.csv"), csv.str());
    out << front.size() << " Pareto-optimal grid profiles at step "
        << FormatNumber(step) << "\n";
  } else if (a.mode == "core") {
    BlockingConvention convention;
    if (a.convention == "nash") {
      convention = BlockingConvention::kNashReversion;
    } else if (a.convention == "minimal") {
      convention = BlockingConvention::kMinimalAction;
    } else {
      throw std::invalid_argument("unknown convention '" + a.convention + "' (nash, minimal)");
    }
    std::vector<std::vector<double>> profiles;
    if (!a.profile.empty()) {
      profiles.push_back(ParseList(a.profile, "--profile"));
      if (static_cast<int>(profiles[0].size()) != n) {
        throw std::invalid_argument("--profile needs " + std::to_string(n) + " values");
      }
    } else {
      std::vector<double> levels = GridLevels(game.LowerBound(), game.UpperBound(), step);
      std::uint64_t total = 1;
      for (int i = 0; i < n; ++i) total = SaturatingMul(total, levels.size());
      CheckGuard(total, MaxEnumeration(), "core scan over grid profiles");
      std::vector<std::size_t> digits(n, 0);
      for (std::uint64_t c = 0; c < total; ++c) {
        std::vector<double> mu(n);
        for (int i = 0; i < n; ++i) mu[i] = levels[digits[i]];
        profiles.push_back(mu);
        for (int i = n - 1; i >= 0; --i) {
          if (++digits[i] < levels.size()) break;
          digits[i] = 0;
        }
      }
    }
    std::vector<CoreVerdict> verdicts(profiles.size());
    ParallelFor(profiles.size(), g.parallel, [&](std::size_t i) {
      verdicts[i] = CoreMembership(game, profiles[i], step, convention);
    });
    std::vector<std::string> header = Columns("mu_", n);
    Append(header, {"inCore", "coalition", "deviation", "deviationPayoffs"});
    CsvWriter w(csv, g.seed, hash, header);
    int in_core = 0;
    for (std::size_t i = 0; i < profiles.size(); ++i) {
      for (double x : profiles[i]) w.Add(x);
      const CoreVerdict& v = verdicts[i];
      in_core += v.in_core;
      w.Add(v.in_core).Add(Joined(v.coalition)).Add(JoinNumbers(v.deviation, ';'))
          .Add(JoinNumbers(v.deviation_payoffs, ';'));
      w.EndRow();
    }
    WriteTextFile(OutPath(g, "core.csv"), csv.str());
    if (profiles.size() == 1) {
      const CoreVerdict& v = verdicts[0];
      out << "profile (" << JoinNumbers(profiles[0], ',') << ") "
          << (v.in_core ? "is in the core" : "is blocked");
      if (!v.in_core) {
        out << " by coalition {" << Joined(v.coalition) << "} deviating to ("
            << JoinNumbers(v.deviation, ',') << ")";
      }
      out << "\n";
    } else {
      out << in_core << " of " << profiles.size() << " grid profiles in the core\n";
    }
  } else if (a.mode == "equilibria") {
    StrategyGrid grid;
    grid.action_levels = a.levels.empty()
                             ? GridLevels(game.LowerBound(), game.UpperBound(), step)
                             : ParseList(a.levels, "--levels");
    grid.threshold_levels = grid.action_levels;
    grid.k = a.k;
    grid.non_exploitable = a.non_exploitable;
    EquilibriumOptions options;
    options.rules = rules;
    options.workers = g.parallel;
    EquilibriumReport report = CommitmentEquilibria(game, grid, options);

    std::vector<std::string> header = Columns("strategy_", n);
    Append(header, Columns("liability_", n));
    Append(header, Columns("action_", n));
    Append(header, Columns("payoff_", n));
    Append(header, {"welfare", "strong"});
    CsvWriter w(csv, g.seed, hash, header);
    std::map<std::vector<double>, std::vector<double>> strong_outcomes;
    for (const ProfileOutcome& p : report.outcomes) {
      for (int s : p.strategies) w.Add(DescribeStrategy(report.strategies[s]));
      for (double x : p.outcome.liabilities) w.Add(x);
      for (double x : p.outcome.actions) w.Add(x);
      for (double x : p.outcome.payoffs) w.Add(x);
      w.Add(Welfare(p.outcome.payoffs)).Add(p.strong);
      w.EndRow();
      if (p.strong) strong_outcomes[p.outcome.actions] = p.outcome.payoffs;
    }
    WriteTextFile(OutPath(g, "equilibria.csv"), csv.str());
    out << report.strategies.size() << " strategies per player, "
        << report.nash.size() << " Nash profiles, " << report.strong.size()
        << " strong\n";
    for (const auto& [actions, payoffs] : strong_outcomes) {
      out << "  strong outcome (" << JoinNumbers(actions, ',') << ") payoffs ("
          << JoinNumbers(payoffs, ',') << ")\n";
    }
  } else {
    throw std::invalid_argument("unknown mode '" + a.mode + "' (pareto, core, equilibria)");
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// learn

struct LearnArgs {
  std::string config;
  std::string algo;
  std::vector<std::uint64_t> seeds;
  int runs = 1;
  int episodes = 0;
};

int RunLearn(const GlobalOptions& g, const LearnArgs& a, std::ostream& out) {
  LearnSetup setup;
  if (!a.config.empty()) setup = LearnSetupFromJson(json::parse(ReadFile(a.config)));
  if (!a.algo.empty()) setup.algo = a.algo;
  if (setup.algo != "br" && setup.algo != "pg") {
    throw std::invalid_argument("unknown algorithm '" + setup.algo + "' (br, pg)");
  }
  if (auto v = VariantOverride(g)) setup.rules.variant = *v;
  if (g.grid > 0.0) setup.grid_step = g.grid;
  if (a.episodes > 0) setup.episodes = a.episodes;

  std::vector<std::uint64_t> seeds = a.seeds;
  if (seeds.empty()) {
    if (a.runs < 1) throw std::invalid_argument("--runs must be >= 1");
    for (int i = 0; i < a.runs; ++i) seeds.push_back(DeriveSeed(g.seed, i));
  }
  std::vector<Trajectory> runs = RunLearning(setup, seeds, g.parallel);
  std::stable_sort(runs.begin(), runs.end(), [](const Trajectory& a, const Trajectory& b) {
    return a.seed < b.seed;
  });

  const double optimum = OptimalWelfare(setup.game);
  std::vector<double> terminal;
  int near = 0;
  std::ostringstream summary;
  const std::string hash = runs.front().config_hash;
  CsvWriter w(summary, g.seed, hash,
              {"seed", "terminalWelfare", "withinOnePercent", "converged", "steps"});
  for (const Trajectory& t : runs) {
    WriteTextFile(OutPath(g, "run_" + std::to_string(t.seed) + ".csv"),
                  TrajectoryCsv(t, setup.game.num_players));
    const double welfare = t.TerminalWelfare();
    const bool within = std::abs(welfare - optimum) <= 0.01 * std::abs(optimum);
    near += within;
    terminal.push_back(welfare);
    w.Add(t.seed).Add(welfare).Add(within).Add(t.converged)
        .Add(static_cast<int>(t.records.size()) - 1);
    w.EndRow();
  }
  WriteTextFile(OutPath(g, "summary.csv"), summary.str());

  const double median = Median(terminal);
  const double fraction = static_cast<double>(near) / runs.size();
  std::ostringstream stats;
  CsvWriter s(stats, g.seed, hash,
              {"algo", "runs", "medianTerminalWelfare", "fractionNearOptimum",
               "optimalWelfare"});
  s.Add(setup.algo).Add(static_cast<int>(runs.size())).Add(median).Add(fraction)
      .Add(optimum);
  s.EndRow();
  WriteTextFile(OutPath(g, "summary_stats.csv"), stats.str());

  out << setup.algo << ": " << runs.size() << " runs, median terminal welfare "
      << FormatNumber(median) << ", " << near << " within 1% of "
      << FormatNumber(optimum) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// repro-appendix

struct AppendixArgs {
  int n = 2;
  double beta = 0.09;
  double gamma = 0.3;
};

int RunAppendix(const GlobalOptions& g, const AppendixArgs& a, std::ostream& out) {
  PublicGoodsParams p{a.n, a.beta, a.gamma};
  PublicGoodsGame game(p);
  const bool reference = a.n == 2 && a.beta == 0.09 && a.gamma == 0.3;
  const double tol = 1e-9;

  struct Row {
    std::string quantity;
    std::string expected;
    std::string computed;
    bool pass;
  };
  std::vector<Row> rows;
  auto check = [&](const std::string& name, double expected, double computed) {
    rows.push_back({name, FormatNumber(expected), FormatNumber(computed),
                    std::abs(expected - computed) <= tol});
  };

  const double mu_ne = PgNash(p);
  const double mu_opt = PgSocialOptimum(p);
  const std::vector<double> ne_profile(p.num_players, mu_ne);
  const std::vector<double> opt_profile(p.num_players, mu_opt);
  const double w_ne = Welfare(PgPayoffs(p, ne_profile));
  const double w_opt = Welfare(PgPayoffs(p, opt_profile));

  if (reference) {
    check("muNE", 0.3, mu_ne);
    check("muOpt", 0.6, mu_opt);
    check("welfareNE", 1.442, w_ne);
    check("welfareOpt", 1.496, w_opt);
  } else {
    check("muNE", std::clamp(p.beta / p.gamma, 0.0, 1.0), mu_ne);
    check("muOpt", std::clamp(p.num_players * p.beta / p.gamma, 0.0, 1.0), mu_opt);
    try {
      ClosedFormPayoffs cf = PgClosedFormPayoffs(p);
      check("welfareNE", p.num_players * cf.nash, w_ne);
      check("welfareOpt", p.num_players * cf.optimum, w_opt);
    } catch (const ClippedRegimeError&) {
      rows.push_back({"welfareNE", "clipped", FormatNumber(w_ne), true});
      rows.push_back({"welfareOpt", "clipped", FormatNumber(w_opt), true});
    }
  }

  // Everyone offers the optimum conditional on the average reaching it.
  CommitmentGame commitment(game, CommitmentRules{});
  StepCcf offer{{OfferPoint{Action{mu_opt}, {mu_opt}}}};
  StrategyOutcome outcome =
      commitment.Play(std::vector<StepCcf>(p.num_players, offer));
  bool outcome_ok = true;
  for (double x : outcome.actions) outcome_ok &= std::abs(x - mu_opt) <= tol;
  rows.push_back({"mechanismOutcome", JoinNumbers(opt_profile, ';'),
                  JoinNumbers(outcome.actions, ';'), outcome_ok});
  check("mechanismWelfare", w_opt, Welfare(outcome.payoffs));

  std::ostringstream csv;
  CsvWriter w(csv, g.seed, HexDigest(Fnv1a64(game.Describe())),
              {"quantity", "expected", "computed", "status"});
  bool all = true;
  for (const Row& r : rows) {
    all &= r.pass;
    w.Add(r.quantity).Add(r.expected).Add(r.computed)
        .Add(std::string(r.pass ? "pass" : "fail"));
    w.EndRow();
    out << "  " << r.quantity << std::string(18 - std::min<std::size_t>(17, r.quantity.size()), ' ')
        << "expected " << r.expected << ", computed " << r.computed << "  "
        << (r.pass ? "pass" : "FAIL") << "\n";
  }
  WriteTextFile(OutPath(g, "appendix.csv"), csv.str());
  return all ? kExitOk : kExitCheckFailed;
}

template <typename T>
std::optional<T> Field(const json& obj, const std::string& path, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) return std::nullopt;
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw ScenarioParseError(path + "." + key + ": wrong type");
  }
}

}  // namespace

LearnSetup LearnSetupFromJson(const json& doc) {
  if (!doc.is_object()) throw ScenarioParseError("$: expected a JSON object");
  LearnSetup s;
  if (auto v = Field<int>(doc, "$", "schemaVersion"); v && *v != kSchemaVersion) {
    throw ScenarioParseError("schemaVersion: unsupported version " + std::to_string(*v));
  }
  s.algo = Field<std::string>(doc, "$", "algo").value_or(s.algo);
  if (auto it = doc.find("game"); it != doc.end()) {
    s.game.num_players = Field<int>(*it, "game", "players").value_or(s.game.num_players);
    s.game.beta = Field<double>(*it, "game", "beta").value_or(s.game.beta);
    s.game.gamma = Field<double>(*it, "game", "gamma").value_or(s.game.gamma);
  }
  try {
    ValidateParams(s.game);
  } catch (const std::invalid_argument& e) {
    throw ScenarioParseError(std::string("game: ") + e.what());
  }
  if (auto v = Field<std::string>(doc, "$", "variant")) {
    auto variant = ParseVariant(*v);
    if (!variant) throw ScenarioParseError("variant: unknown variant '" + *v + "'");
    s.rules.variant = *variant;
  }
  if (auto it = doc.find("aggregator"); it != doc.end()) {
    const std::string mode = Field<std::string>(*it, "aggregator", "mode").value_or("weightedAverage");
    if (mode == "min") {
      s.rules.aggregator.mode = AggregatorMode::kMin;
    } else if (mode != "weightedAverage") {
      throw ScenarioParseError("aggregator.mode: unknown mode '" + mode + "'");
    }
    s.rules.aggregator.weights =
        Field<std::vector<double>>(*it, "aggregator", "weights").value_or(std::vector<double>{});
    s.rules.aggregator.normalized =
        Field<bool>(*it, "aggregator", "normalized").value_or(true);
    s.rules.aggregator.include_self =
        Field<bool>(*it, "aggregator", "includeSelf").value_or(true);
    auto problems = ValidateAggregator(s.rules.aggregator, s.game.num_players);
    if (!problems.empty()) throw ScenarioParseError("aggregator: " + problems.front());
  }
  if (auto it = doc.find("grid"); it != doc.end()) {
    s.grid_step = Field<double>(*it, "grid", "step").value_or(0.0);
    s.k = Field<int>(*it, "grid", "k").value_or(0);
    s.non_exploitable = Field<bool>(*it, "grid", "nonExploitable").value_or(true);
  }
  if (auto it = doc.find("br"); it != doc.end()) {
    s.max_rounds = Field<int>(*it, "br", "maxRounds").value_or(s.max_rounds);
    s.candidate_samples =
        Field<int>(*it, "br", "candidateSamples").value_or(s.candidate_samples);
  }
  if (auto it = doc.find("pg"); it != doc.end()) {
    s.episodes = Field<int>(*it, "pg", "episodes").value_or(s.episodes);
    s.learning_rate = Field<double>(*it, "pg", "learningRate").value_or(s.learning_rate);
    s.baseline_rate = Field<double>(*it, "pg", "baselineRate").value_or(s.baseline_rate);
    if (auto sched = it->find("schedule"); sched != it->end()) {
      const std::string kind =
          Field<std::string>(*sched, "pg.schedule", "kind").value_or("linearDecayThenZero");
      if (kind == "constantThenZero") {
        s.schedule = ScheduleKind::kConstantThenZero;
      } else if (kind == "linearDecayThenZero") {
        s.schedule = ScheduleKind::kLinearDecayThenZero;
      } else {
        throw ScenarioParseError("pg.schedule.kind: unknown schedule '" + kind + "'");
      }
      s.alpha0 = Field<double>(*sched, "pg.schedule", "alpha0").value_or(0.0);
    }
  }
  return s;
}

StrategyGrid LearnGrid(const LearnSetup& setup) {
  const bool br = setup.algo == "br";
  const double step = setup.grid_step > 0.0 ? setup.grid_step : (br ? 0.05 : 0.1);
  StrategyGrid grid;
  grid.action_levels = GridLevels(0.0, 1.0, step);
  grid.threshold_levels = grid.action_levels;
  grid.k = setup.k > 0 ? setup.k : (br ? 4 : 1);
  grid.non_exploitable = setup.non_exploitable;
  return grid;
}

std::vector<Trajectory> RunLearning(const LearnSetup& setup,
                                    const std::vector<std::uint64_t>& seeds,
                                    int workers) {
  if (seeds.empty()) throw std::invalid_argument("no seeds to run");
  PublicGoodsGame game(setup.game);
  CommitmentGame commitment(game, setup.rules);
  const StrategyGrid grid = LearnGrid(setup);
  std::vector<Trajectory> out(seeds.size());
  if (setup.algo == "br") {
    ParallelFor(seeds.size(), workers, [&](std::size_t i) {
      DynamicsConfig config{grid, setup.max_rounds, setup.candidate_samples, seeds[i]};
      out[i] = BetterResponseDynamics(commitment, config);
    });
  } else if (setup.algo == "pg") {
    PolicyGradientConfig base;
    base.grid = grid;
    base.episodes = setup.episodes;
    base.learning_rate = setup.learning_rate;
    base.baseline_rate = setup.baseline_rate;
    base.schedule = {setup.schedule, setup.alpha0, setup.episodes};
    ValidatePolicyGradientConfig(base);
    ParallelFor(seeds.size(), workers, [&](std::size_t i) {
      PolicyGradientConfig config = base;
      config.seed = seeds[i];
      out[i] = PolicyGradientTrain(commitment, config);
    });
  } else {
    throw std::invalid_argument("unknown algorithm '" + setup.algo + "'");
  }
  return out;
}

std::string TrajectoryCsv(const Trajectory& t, int num_players) {
  std::vector<std::string> header = {"episode", "alpha", "welfare", "adoptions", "greedy"};
  Append(header, Columns("liability_", num_players));
  Append(header, Columns("payoff_", num_players));
  Append(header, Columns("shaped_", num_players));
  Append(header, Columns("strategy_", num_players));
  std::ostringstream csv;
  CsvWriter w(csv, t.seed, t.config_hash, header);
  for (const EpisodeRecord& r : t.records) {
    w.Add(r.episode).Add(r.alpha).Add(r.welfare).Add(r.adoptions).Add(r.greedy);
    for (double x : r.liabilities) w.Add(x);
    for (double x : r.payoffs) w.Add(x);
    for (double x : r.shaped) w.Add(x);
    for (const std::string& s : r.strategies) w.Add(s);
    w.EndRow();
  }
  return csv.str();
}

int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Conditional commitment mechanism laboratory"};
  app.require_subcommand(1);
  GlobalOptions g;
  app.add_option("--seed", g.seed, "Master seed")->default_val(0);
  app.add_option("--out", g.out, "Output directory")->default_val(".");
  app.add_option("--parallel", g.parallel, "Worker threads")
      ->default_val(1)->check(CLI::PositiveNumber);
  app.add_option("--variant", g.variant, "basic, prioritized or borda");
  app.add_option("--grid", g.grid, "Grid step")->check(CLI::PositiveNumber);

  SolveArgs solve_args;
  CLI::App* solve = app.add_subcommand("solve", "Compute liabilities for a scenario file");
  solve->add_option("scenario", solve_args.scenario, "Scenario JSON")->required();

  AnalyzeArgs an;
  CLI::App* analyze = app.add_subcommand(
      "analyze", "Pareto front, core verdicts or commitment equilibria of the public goods game");
  analyze->add_option("--mode", an.mode, "pareto, core or equilibria")
      ->check(CLI::IsMember({"pareto", "core", "equilibria"}));
  analyze->add_option("--scenario", an.scenario,
                      "Take the aggregator and variant from this scenario file");
  analyze->add_option("--n", an.n, "Players");
  analyze->add_option("--beta", an.beta);
  analyze->add_option("--gamma", an.gamma);
  analyze->add_option("--profile", an.profile, "Comma-separated profile for --mode core");
  analyze->add_option("--levels", an.levels,
                      "Comma-separated action/threshold levels for --mode equilibria");
  analyze->add_option("--k", an.k, "Points per strategy");
  analyze->add_flag("--non-exploitable", an.non_exploitable,
                    "Only points with threshold >= offer");
  analyze->add_option("--convention", an.convention,
                      "Outsiders of a blocking coalition: nash or minimal");

  LearnArgs la;
  CLI::App* learn = app.add_subcommand("learn", "Run learning dynamics over seeds");
  learn->add_option("config", la.config, "Learning config JSON");
  learn->add_option("--algo", la.algo, "br or pg")->check(CLI::IsMember({"br", "pg"}));
  learn->add_option("--seeds", la.seeds, "Explicit run seeds")->delimiter(',');
  learn->add_option("--runs", la.runs, "Runs with seeds derived from --seed");
  learn->add_option("--episodes", la.episodes, "Override pg episodes");

  AppendixArgs ap;
  CLI::App* appendix = app.add_subcommand(
      "repro-appendix", "Check the two-player closed forms and mechanism outcome");
  appendix->add_option("--n", ap.n);
  appendix->add_option("--beta", ap.beta);
  appendix->add_option("--gamma", ap.gamma);

  for (CLI::App* sub : {solve, analyze, learn, appendix}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*solve) return RunSolve(g, solve_args, out);
    if (*analyze) return RunAnalyze(g, an, out);
    if (*learn) return RunLearn(g, la, out);
    if (*appendix) return RunAppendix(g, ap, out);
  } catch (const ScenarioParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NonConvergenceError& e) {
    err << "error: " << e.what() << " (after " << e.iterations() << " iterations)\n";
    return kExitNonConvergence;
  } catch (const GuardExceededError& e) {
    err << "error: " << e.what() << "; needs " << e.required() << " evaluations, limit "
        << e.limit() << ". Coarsen --grid, reduce --k or players, or raise "
        << "CCF_MECH_MAX_ENUM.\n";
    return kExitGuard;
  } catch (const ClippedRegimeError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}

}  // namespace ccfmech
