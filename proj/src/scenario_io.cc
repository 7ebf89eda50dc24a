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
#include "ccfmech/scenario_io.h"

#include <fstream>
#include <map>
#include <sstream>

#include "ccfmech/random.h"

namespace ccfmech {
namespace {

using nlohmann::json;

[[noreturn]] void Fail(const std::string& path, const std::string& problem) {
  throw ScenarioParseError(path + ": " + problem);
}

const json& Require(const json& obj, const std::string& path, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) Fail(path, std::string("missing field '") + key + "'");
  return *it;
}

double AsNumber(const json& v, const std::string& path) {
  if (!v.is_number()) Fail(path, "expected a number");
  return v.get<double>();
}

bool AsBool(const json& v, const std::string& path) {
  if (!v.is_boolean()) Fail(path, "expected true or false");
  return v.get<bool>();
}

int AsInt(const json& v, const std::string& path) {
  if (!v.is_number_integer()) Fail(path, "expected an integer");
  return v.get<int>();
}

std::string AsString(const json& v, const std::string& path) {
  if (!v.is_string()) Fail(path, "expected a string");
  return v.get<std::string>();
}

std::vector<double> AsVector(const json& v, const std::string& path, int dims) {
  std::vector<double> out;
  if (v.is_number()) {
    out.push_back(v.get<double>());
  } else if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      out.push_back(AsNumber(v[i], path + "[" + std::to_string(i) + "]"));
    }
  } else {
    Fail(path, "expected a number or an array of numbers");
  }
  if (static_cast<int>(out.size()) != dims) {
    Fail(path, "expected " + std::to_string(dims) + " components, got " +
                   std::to_string(out.size()));
  }
  return out;
}

template <typename T>
std::optional<T> Optional(const json& obj, const std::string& path, const char* key,
                          T (*convert)(const json&, const std::string&)) {
  auto it = obj.find(key);
  if (it == obj.end()) return std::nullopt;
  return convert(*it, path + "." + key);
}

Aggregator ParseAggregator(const json& v, const std::string& path) {
  if (!v.is_object()) Fail(path, "expected an object");
  Aggregator agg;
  const std::string mode = AsString(Require(v, path, "mode"), path + ".mode");
  if (mode == "weightedAverage") {
    agg.mode = AggregatorMode::kWeightedAverage;
  } else if (mode == "min") {
    agg.mode = AggregatorMode::kMin;
  } else {
    Fail(path + ".mode", "unknown mode '" + mode + "' (weightedAverage, min)");
  }
  if (auto it = v.find("weights"); it != v.end()) {
    if (!it->is_array()) Fail(path + ".weights", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      agg.weights.push_back(
          AsNumber((*it)[i], path + ".weights[" + std::to_string(i) + "]"));
    }
  }
  agg.normalized = Optional(v, path, "normalized", AsBool).value_or(true);
  agg.include_self = Optional(v, path, "includeSelf", AsBool).value_or(true);
  return agg;
}

Ccf ParseCcf(const json& v, const std::string& path, const ActionSpace& space) {
  const std::string type = AsString(Require(v, path, "type"), path + ".type");
  if (type == "step") {
    const json& points = Require(v, path, "points");
    if (!points.is_array()) Fail(path + ".points", "expected an array");
    StepCcf step;
    for (std::size_t j = 0; j < points.size(); ++j) {
      const std::string p = path + ".points[" + std::to_string(j) + "]";
      if (!points[j].is_object()) Fail(p, "expected an object");
      OfferPoint point;
      point.offer = Action(AsVector(Require(points[j], p, "offer"), p + ".offer",
                                    space.num_dims()));
      point.threshold = AsVector(Require(points[j], p, "threshold"),
                                 p + ".threshold", space.num_dims());
      step.points.push_back(std::move(point));
    }
    return step;
  }
  if (type == "matching") {
    MatchingCcf m;
    const json& dim = Require(v, path, "dim");
    if (dim.is_string()) {
      auto index = space.DimIndex(dim.get<std::string>());
      if (!index) Fail(path + ".dim", "unknown variable '" + dim.get<std::string>() + "'");
      m.dim = *index;
    } else {
      m.dim = AsInt(dim, path + ".dim");
    }
    m.rate = AsNumber(Require(v, path, "rate"), path + ".rate");
    m.cap = AsNumber(Require(v, path, "cap"), path + ".cap");
    return m;
  }
  Fail(path + ".type", "unknown CCF type '" + type + "' (step, matching)");
}

json VectorJson(const std::vector<double>& values) { return json(values); }

}  // namespace

Scenario ScenarioFromJson(const json& doc) {
  if (!doc.is_object()) Fail("$", "expected a JSON object");
  const int version = AsInt(Require(doc, "$", "schemaVersion"), "schemaVersion");
  if (version != kSchemaVersion) {
    Fail("schemaVersion", "unsupported version " + std::to_string(version) +
                              " (expected " + std::to_string(kSchemaVersion) + ")");
  }

  Scenario s;
  const json& players = Require(doc, "$", "players");
  if (!players.is_array() || players.empty()) {
    Fail("players", "expected a non-empty array of names");
  }
  std::map<std::string, int> index_of;
  for (std::size_t i = 0; i < players.size(); ++i) {
    const std::string name = AsString(players[i], "players[" + std::to_string(i) + "]");
    if (!index_of.emplace(name, static_cast<int>(i)).second) {
      Fail("players[" + std::to_string(i) + "]", "duplicate player '" + name + "'");
    }
    s.players.push_back(name);
  }

  const json& variables = Require(doc, "$", "variables");
  if (!variables.is_array() || variables.empty()) {
    Fail("variables", "expected a non-empty array");
  }
  std::vector<VariableSpec> dims;
  for (std::size_t d = 0; d < variables.size(); ++d) {
    const std::string p = "variables[" + std::to_string(d) + "]";
    if (!variables[d].is_object()) Fail(p, "expected an object");
    VariableSpec spec;
    spec.name = AsString(Require(variables[d], p, "name"), p + ".name");
    spec.lower = AsNumber(Require(variables[d], p, "min"), p + ".min");
    spec.upper = AsNumber(Require(variables[d], p, "max"), p + ".max");
    dims.push_back(spec);
  }
  try {
    s.space = ActionSpace(dims, s.num_players());
  } catch (const std::invalid_argument& e) {
    Fail("variables", e.what());
  }

  if (auto it = doc.find("playerBounds"); it != doc.end()) {
    if (!it->is_object()) Fail("playerBounds", "expected an object keyed by player");
    for (const auto& [name, value] : it->items()) {
      const std::string p = "playerBounds." + name;
      auto found = index_of.find(name);
      if (found == index_of.end()) Fail(p, "unknown player");
      Bounds b;
      b.lower = AsVector(Require(value, p, "min"), p + ".min", s.space.num_dims());
      b.upper = AsVector(Require(value, p, "max"), p + ".max", s.space.num_dims());
      try {
        s.space.SetPlayerBounds(found->second, b);
      } catch (const std::invalid_argument& e) {
        Fail(p, e.what());
      }
    }
  }

  if (auto it = doc.find("aggregator"); it != doc.end()) {
    s.aggregator = ParseAggregator(*it, "aggregator");
  }

  const json& submissions = Require(doc, "$", "submissions");
  if (!submissions.is_array()) Fail("submissions", "expected an array");
  if (submissions.size() != s.players.size()) {
    Fail("submissions", "expected one submission per player (" +
                            std::to_string(s.players.size()) + "), got " +
                            std::to_string(submissions.size()));
  }
  std::vector<std::optional<Submission>> slots(s.players.size());
  for (std::size_t i = 0; i < submissions.size(); ++i) {
    std::string p = "submissions[" + std::to_string(i) + "]";
    const json& sub = submissions[i];
    if (!sub.is_object()) Fail(p, "expected an object");
    std::size_t player = i;
    if (auto named = sub.find("player"); named != sub.end()) {
      const std::string name = AsString(*named, p + ".player");
      auto found = index_of.find(name);
      if (found == index_of.end()) Fail(p + ".player", "unknown player '" + name + "'");
      player = static_cast<std::size_t>(found->second);
    }
    p += " (player " + s.players[player] + ")";
    if (slots[player]) Fail(p, "second submission for this player");
    Submission submission;
    submission.ccf = ParseCcf(sub, p, s.space);
    submission.adjust_to_mean =
        Optional(sub, p, "adjustToMean", AsBool).value_or(false);
    slots[player] = std::move(submission);
  }
  for (auto& slot : slots) s.submissions.push_back(std::move(*slot));

  if (auto it = doc.find("variant"); it != doc.end()) {
    const std::string name = AsString(*it, "variant");
    auto variant = ParseVariant(name);
    if (!variant) Fail("variant", "unknown variant '" + name + "' (basic, prioritized, borda)");
    s.variant = *variant;
  }
  s.epsilon = Optional(doc, "", "epsilon", AsNumber).value_or(s.epsilon);
  s.max_iterations = Optional(doc, "", "maxIterations", AsInt).value_or(s.max_iterations);
  s.max_points = Optional(doc, "", "maxPoints", AsInt).value_or(s.max_points);

  // Per-submission problems are reported against the submission's path.
  for (int i = 0; i < s.num_players(); ++i) {
    CcfContext context{s.space.PlayerBounds(i), s.max_points};
    auto violations = ValidateCcf(s.submissions[i].ccf, context);
    if (!violations.empty()) {
      Fail("submissions[" + std::to_string(i) + "] (player " + s.players[i] + ")",
           FormatViolation(violations.front()));
    }
  }
  auto problems = ValidateScenario(s);
  if (!problems.empty()) Fail("scenario", problems.front());
  return s;
}

Scenario ParseScenario(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // Convert the byte offset into a line number.
    std::size_t line = 1;
    for (std::size_t i = 0; i < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') ++line;
    }
    throw ScenarioParseError("line " + std::to_string(line) + ": " + e.what());
  }
  return ScenarioFromJson(doc);
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioParseError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Scenario LoadScenario(const std::string& path) {
  return ParseScenario(ReadFile(path));
}

json ScenarioToJson(const Scenario& s) {
  json doc;
  doc["schemaVersion"] = kSchemaVersion;
  doc["players"] = s.players;
  json variables = json::array();
  for (const VariableSpec& spec : s.space.dims()) {
    variables.push_back({{"name", spec.name}, {"min", spec.lower}, {"max", spec.upper}});
  }
  doc["variables"] = variables;
  json bounds = json::object();
  for (int i = 0; i < s.num_players(); ++i) {
    if (!s.space.HasPlayerBounds(i)) continue;
    Bounds b = s.space.PlayerBounds(i);
    bounds[s.players[i]] = {{"min", b.lower}, {"max", b.upper}};
  }
  if (!bounds.empty()) doc["playerBounds"] = bounds;
  doc["aggregator"] = {
      {"mode", s.aggregator.mode == AggregatorMode::kMin ? "min" : "weightedAverage"},
      {"weights", s.aggregator.weights},
      {"normalized", s.aggregator.normalized},
      {"includeSelf", s.aggregator.include_self}};
  json submissions = json::array();
  for (int i = 0; i < s.num_players(); ++i) {
    const Submission& sub = s.submissions[i];
    json entry;
    entry["player"] = s.players[i];
    if (const auto* step = std::get_if<StepCcf>(&sub.ccf)) {
      entry["type"] = "step";
      json points = json::array();
      for (const OfferPoint& p : step->points) {
        points.push_back({{"offer", VectorJson(p.offer.components())},
                          {"threshold", VectorJson(p.threshold)}});
      }
      entry["points"] = points;
    } else {
      const auto& m = std::get<MatchingCcf>(sub.ccf);
      entry["type"] = "matching";
      entry["dim"] = s.space.dims()[m.dim].name;
      entry["rate"] = m.rate;
      entry["cap"] = m.cap;
    }
    entry["adjustToMean"] = sub.adjust_to_mean;
    submissions.push_back(entry);
  }
  doc["submissions"] = submissions;
  doc["variant"] = VariantName(s.variant);
  doc["epsilon"] = s.epsilon;
  doc["maxIterations"] = s.max_iterations;
  doc["maxPoints"] = s.max_points;
  return doc;
}

std::string SerializeScenario(const Scenario& scenario) {
  return ScenarioToJson(scenario).dump(2) + "\n";
}

std::string ScenarioHash(const Scenario& scenario) {
  return HexDigest(Fnv1a64(ScenarioToJson(scenario).dump()));
}

}  // namespace ccfmech
