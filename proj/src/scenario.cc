// Copyright 2026 The ModalGame Authors
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

#include "modalgame/scenario.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "modalgame/error.h"

namespace modalgame {
namespace {

using nlohmann::json;

constexpr double kMinutesPerHour = 60.0;
constexpr double kSecondsPerHour = 3600.0;

[[noreturn]] void Invalid(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::kValidationError, field + ": " + what);
}

double Number(const json& doc, const std::string& field, const std::string& where = "") {
  if (!doc.contains(field)) Invalid(where + field, "missing");
  const json& v = doc.at(field);
  if (!v.is_number()) Invalid(where + field, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) Invalid(where + field, "must be finite");
  return x;
}

std::string String(const json& doc, const std::string& field) {
  if (!doc.contains(field)) Invalid(field, "missing");
  if (!doc.at(field).is_string()) Invalid(field, "expected a string");
  return doc.at(field).get<std::string>();
}

void RejectUnknown(const json& doc, const std::set<std::string>& known, const std::string& where) {
  for (const auto& [key, value] : doc.items()) {
    if (key.size() >= 4 && key.compare(key.size() - 4, 4, "_eur") == 0) {
      Invalid(where + key, "monetary fields must be given in USD");
    }
    if (!known.count(key)) Invalid(where + key, "unknown field");
  }
}

std::map<std::string, double> NumberMap(const json& doc, const std::string& field) {
  const json& v = doc.at(field);
  if (!v.is_object()) Invalid(field, "expected an object of numbers");
  std::map<std::string, double> out;
  for (const auto& [key, value] : v.items()) {
    if (!value.is_number() || value.get<double>() < 0.0) {
      Invalid(field + "." + key, "expected a nonnegative number");
    }
    out[key] = value.get<double>();
  }
  return out;
}

std::int64_t ParseId(const std::string& text, const std::string& where) {
  std::size_t used = 0;
  std::int64_t id = 0;
  try {
    id = std::stoll(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw Error(ErrorCode::kParseError, where + ": expected an integer, got '" + text + "'");
  }
  return id;
}

MultiGraph Prepare(const MultiGraph& raw, const ScenarioConfig& config) {
  MultiGraph graph = ApplyCongestion(raw, config.congestion_factor);
  if (config.walk_speed_m_per_s) {
    const double kmh = *config.walk_speed_m_per_s * kSecondsPerHour / 1000.0;
    std::vector<double> times;
    for (const Arc& arc : graph.arcs()) {
      times.push_back(arc.mode == Mode::kWalk ? arc.length_km / kmh : arc.travel_time_h);
    }
    graph = graph.WithTravelTimes(times);
  }
  return graph;
}

}  // namespace

ScenarioConfig ParseScenarioConfig(const json& doc) {
  if (!doc.is_object()) Invalid("scenario", "expected a JSON object");
  RejectUnknown(doc,
                {"name", "description", "currency", "network", "demands", "pt_fare_usd",
                 "vot_min_usd_per_h", "vot_max_usd_per_h", "noise_width_usd", "amod_wait_min",
                 "congestion_factor", "service_tax", "vot_reference", "transit_wait_min",
                 "transit_access_s", "walk_speed_m_per_s", "operators"},
                "");
  if (doc.contains("currency") && doc.at("currency") != "USD") {
    Invalid("currency", "only USD is supported");
  }
  ScenarioConfig c;
  c.network = String(doc, "network");
  c.demands = String(doc, "demands");
  c.pt_fare_usd = Number(doc, "pt_fare_usd");
  c.vot_min_usd_per_h = Number(doc, "vot_min_usd_per_h");
  c.vot_max_usd_per_h = Number(doc, "vot_max_usd_per_h");
  c.noise_width_usd = Number(doc, "noise_width_usd");
  c.amod_wait_min = Number(doc, "amod_wait_min");
  c.congestion_factor = Number(doc, "congestion_factor");
  c.service_tax = Number(doc, "service_tax");
  if (c.pt_fare_usd < 0.0) Invalid("pt_fare_usd", "must be nonnegative");
  if (!(c.vot_min_usd_per_h > 0.0 && c.vot_min_usd_per_h < c.vot_max_usd_per_h)) {
    Invalid("vot_min_usd_per_h", "need 0 < vot_min_usd_per_h < vot_max_usd_per_h");
  }
  if (!(c.noise_width_usd > 0.0)) Invalid("noise_width_usd", "must be positive");
  if (c.amod_wait_min < 0.0) Invalid("amod_wait_min", "must be nonnegative");
  if (c.congestion_factor < 1.0) Invalid("congestion_factor", "must be at least 1");
  if (!(c.service_tax >= 0.0 && c.service_tax <= 1.0)) Invalid("service_tax", "must lie in [0, 1]");
  if (doc.contains("vot_reference")) {
    const json& v = doc.at("vot_reference");
    if (v.is_string() && v == "midpoint") {
      c.vot_reference_usd_per_h.reset();
    } else if (v.is_number() && v.get<double>() > 0.0) {
      c.vot_reference_usd_per_h = v.get<double>();
    } else {
      Invalid("vot_reference", "expected \"midpoint\" or a positive number");
    }
  }
  if (doc.contains("transit_wait_min")) c.transit_wait_min = NumberMap(doc, "transit_wait_min");
  if (doc.contains("transit_access_s")) {
    if (doc.at("transit_access_s").is_number()) {
      const double s = Number(doc, "transit_access_s");
      if (s < 0.0) Invalid("transit_access_s", "must be nonnegative");
      c.transit_access_s = {{"ubahn", s}, {"sbahn", s}};
    } else {
      c.transit_access_s = NumberMap(doc, "transit_access_s");
    }
  }
  if (doc.contains("walk_speed_m_per_s")) {
    c.walk_speed_m_per_s = Number(doc, "walk_speed_m_per_s");
    if (!(*c.walk_speed_m_per_s > 0.0)) Invalid("walk_speed_m_per_s", "must be positive");
  }
  if (!doc.contains("operators")) Invalid("operators", "missing");
  const json& ops = doc.at("operators");
  if (!ops.is_array() || ops.empty() || ops.size() > 2) {
    Invalid("operators", "expected a list of 1 or 2 operators");
  }
  for (std::size_t k = 0; k < ops.size(); ++k) {
    const std::string where = "operators[" + std::to_string(k) + "].";
    if (!ops[k].is_object()) Invalid(where, "expected an object");
    RejectUnknown(ops[k], {"fleet_size", "cost_per_km_usd"}, where);
    OperatorConfig op;
    op.fleet_size = Number(ops[k], "fleet_size", where);
    op.cost_per_km_usd = Number(ops[k], "cost_per_km_usd", where);
    if (op.fleet_size < 0.0) Invalid(where + "fleet_size", "must be nonnegative");
    if (op.cost_per_km_usd < 0.0) Invalid(where + "cost_per_km_usd", "must be nonnegative");
    c.operators.push_back(op);
  }
  return c;
}

json ScenarioConfigToJson(const ScenarioConfig& c) {
  json doc;
  doc["currency"] = "USD";
  doc["network"] = c.network;
  doc["demands"] = c.demands;
  doc["pt_fare_usd"] = c.pt_fare_usd;
  doc["vot_min_usd_per_h"] = c.vot_min_usd_per_h;
  doc["vot_max_usd_per_h"] = c.vot_max_usd_per_h;
  doc["noise_width_usd"] = c.noise_width_usd;
  doc["amod_wait_min"] = c.amod_wait_min;
  doc["congestion_factor"] = c.congestion_factor;
  doc["service_tax"] = c.service_tax;
  if (c.vot_reference_usd_per_h) {
    doc["vot_reference"] = *c.vot_reference_usd_per_h;
  } else {
    doc["vot_reference"] = "midpoint";
  }
  doc["transit_wait_min"] = c.transit_wait_min;
  doc["transit_access_s"] = c.transit_access_s;
  if (c.walk_speed_m_per_s) doc["walk_speed_m_per_s"] = *c.walk_speed_m_per_s;
  doc["operators"] = json::array();
  for (const OperatorConfig& op : c.operators) {
    doc["operators"].push_back({{"fleet_size", op.fleet_size},
                                {"cost_per_km_usd", op.cost_per_km_usd}});
  }
  return doc;
}

MarketConfig ToMarketConfig(const ScenarioConfig& c) {
  MarketConfig m;
  m.pt_fare_usd = c.pt_fare_usd;
  m.vot = {c.vot_min_usd_per_h, c.vot_max_usd_per_h};
  m.noise = {c.noise_width_usd};
  m.vot_reference = c.vot_reference_usd_per_h;
  m.timing.amod_wait_h = c.amod_wait_min / kMinutesPerHour;
  for (const auto& [cls, minutes] : c.transit_wait_min) {
    m.timing.transit_wait_h[cls] = minutes / kMinutesPerHour;
  }
  for (const auto& [cls, seconds] : c.transit_access_s) {
    m.timing.transit_access_h[cls] = seconds / kSecondsPerHour;
  }
  if (c.walk_speed_m_per_s) m.timing.walk_speed_kmh = *c.walk_speed_m_per_s * 3.6;
  m.service_tax = c.service_tax;
  m.operators = c.operators;
  return m;
}

json ReadJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParseError, path.string() + ": " + e.what());
  }
}

MultiGraph LoadNetwork(const std::filesystem::path& path) {
  const json doc = ReadJsonFile(path);
  if (!doc.is_object() || !doc.contains("vertices") || !doc.contains("arcs") ||
      !doc.at("vertices").is_array() || !doc.at("arcs").is_array()) {
    Invalid(path.string(), "expected {\"vertices\": [...], \"arcs\": [...]}");
  }
  std::vector<std::int64_t> vertices;
  for (const json& v : doc.at("vertices")) {
    if (!v.is_object() || !v.contains("id") || !v.at("id").is_number_integer()) {
      Invalid("vertices", "every vertex needs an integer id");
    }
    vertices.push_back(v.at("id").get<std::int64_t>());
  }
  std::vector<RawArc> arcs;
  for (std::size_t k = 0; k < doc.at("arcs").size(); ++k) {
    const json& a = doc.at("arcs")[k];
    const std::string where = "arcs[" + std::to_string(k) + "].";
    if (!a.is_object()) Invalid(where, "expected an object");
    RejectUnknown(a, {"id", "source", "target", "mode", "travel_time_h", "length_km", "line"},
                  where);
    RawArc arc;
    for (const char* key : {"id", "source", "target"}) {
      if (!a.contains(key) || !a.at(key).is_number_integer()) {
        Invalid(where + key, "expected an integer");
      }
    }
    arc.id = a.at("id").get<std::int64_t>();
    arc.source = a.at("source").get<std::int64_t>();
    arc.target = a.at("target").get<std::int64_t>();
    const auto mode = ParseMode(String(a, "mode"));
    if (!mode) Invalid(where + "mode", "expected walk, road or transit");
    arc.mode = *mode;
    arc.travel_time_h = Number(a, "travel_time_h", where);
    arc.length_km = Number(a, "length_km", where);
    if (a.contains("line")) arc.line = String(a, "line");
    arcs.push_back(std::move(arc));
  }
  return MultiGraph::Build(vertices, arcs);
}

std::vector<Demand> LoadDemands(const std::filesystem::path& path, const MultiGraph& graph) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kParseError, path.string() + ": empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "origin,destination,rate_per_s") {
    throw Error(ErrorCode::kParseError,
                path.string() + ": header must be origin,destination,rate_per_s");
  }
  std::vector<Demand> demands;
  std::map<std::pair<int, int>, int> seen;
  for (int row = 2; std::getline(in, line); ++row) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = path.string() + ":" + std::to_string(row);
    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
    if (fields.size() != 3) throw Error(ErrorCode::kParseError, where + ": expected 3 fields");
    const auto origin = graph.FindVertex(ParseId(fields[0], where));
    const auto destination = graph.FindVertex(ParseId(fields[1], where));
    if (!origin || !destination) Invalid(where, "unknown vertex");
    double rate = 0.0;
    try {
      std::size_t used = 0;
      rate = std::stod(fields[2], &used);
      if (used != fields[2].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw Error(ErrorCode::kParseError, where + ": bad rate '" + fields[2] + "'");
    }
    if (!(rate > 0.0) || !std::isfinite(rate)) Invalid(where, "rate must be positive");
    if (*origin == *destination) Invalid(where, "origin equals destination");
    const auto key = std::make_pair(Index(*origin), Index(*destination));
    if (auto it = seen.find(key); it != seen.end()) {
      demands[it->second].rate_per_s += rate;
      continue;
    }
    seen[key] = static_cast<int>(demands.size());
    demands.push_back({*origin, *destination, rate});
  }
  return demands;
}

Scenario LoadScenario(const std::filesystem::path& path) {
  Scenario s;
  s.directory = path.parent_path();
  s.config = ParseScenarioConfig(ReadJsonFile(path));
  s.raw_graph = LoadNetwork(s.directory / s.config.network);
  s.graph = Prepare(s.raw_graph, s.config);
  s.demands = LoadDemands(s.directory / s.config.demands, s.raw_graph);
  return s;
}

Scenario WithConfig(const Scenario& base, const ScenarioConfig& config) {
  Scenario s = base;
  s.config = config;
  s.graph = Prepare(s.raw_graph, config);
  return s;
}

Market BuildScenarioMarket(const Scenario& scenario) {
  return BuildMarket(scenario.graph, scenario.demands, ToMarketConfig(scenario.config));
}

std::string SweepParameterName(SweepParameter parameter) {
  switch (parameter) {
    case SweepParameter::kFleetSize:
      return "fleet_size";
    case SweepParameter::kCostPerKm:
      return "cost_per_km";
    case SweepParameter::kPtFare:
      return "pt_fare";
    case SweepParameter::kServiceTax:
      return "service_tax";
  }
  return "unknown";
}

SweepSpec ParseSweepSpec(const json& doc) {
  if (!doc.is_object()) Invalid("sweep", "expected a JSON object");
  RejectUnknown(doc, {"parameter", "values", "split_rule"}, "");
  SweepSpec spec;
  const std::string name = String(doc, "parameter");
  bool known = false;
  for (SweepParameter p : {SweepParameter::kFleetSize, SweepParameter::kCostPerKm,
                           SweepParameter::kPtFare, SweepParameter::kServiceTax}) {
    if (SweepParameterName(p) == name) {
      spec.parameter = p;
      known = true;
    }
  }
  if (!known) Invalid("parameter", "expected fleet_size, cost_per_km, pt_fare or service_tax");
  if (!doc.contains("values") || !doc.at("values").is_array() || doc.at("values").empty()) {
    Invalid("values", "expected a nonempty list of numbers");
  }
  for (const json& v : doc.at("values")) {
    if (!v.is_number()) Invalid("values", "expected numbers");
    spec.values.push_back(v.get<double>());
  }
  if (!std::is_sorted(spec.values.begin(), spec.values.end())) {
    Invalid("values", "must be sorted ascending");
  }
  if (doc.contains("split_rule")) {
    const std::string rule = String(doc, "split_rule");
    if (rule == "equal") {
      spec.split_ratio = 1.0;
    } else if (rule.rfind("ratio(", 0) == 0 && rule.back() == ')') {
      try {
        spec.split_ratio = std::stod(rule.substr(6, rule.size() - 7));
      } catch (const std::exception&) {
        Invalid("split_rule", "bad ratio");
      }
      if (!(spec.split_ratio > 0.0)) Invalid("split_rule", "ratio must be positive");
    } else {
      Invalid("split_rule", "expected \"equal\" or \"ratio(r)\"");
    }
  }
  return spec;
}

SweepSpec LoadSweepSpec(const std::filesystem::path& path) {
  return ParseSweepSpec(ReadJsonFile(path));
}

std::vector<ScenarioConfig> ExpandSweep(const ScenarioConfig& base, const SweepSpec& spec) {
  std::vector<ScenarioConfig> out;
  for (double value : spec.values) {
    ScenarioConfig c = base;
    switch (spec.parameter) {
      case SweepParameter::kFleetSize:
        if (c.operators.size() == 1) {
          c.operators[0].fleet_size = value;
        } else {
          const double r = spec.split_ratio;
          c.operators[0].fleet_size = value * r / (1.0 + r);
          c.operators[1].fleet_size = value / (1.0 + r);
        }
        break;
      case SweepParameter::kCostPerKm:
        for (OperatorConfig& op : c.operators) op.cost_per_km_usd = value;
        break;
      case SweepParameter::kPtFare:
        c.pt_fare_usd = value;
        break;
      case SweepParameter::kServiceTax:
        c.service_tax = value;
        break;
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace modalgame
