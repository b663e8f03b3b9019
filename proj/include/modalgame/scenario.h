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

#ifndef MODALGAME_SCENARIO_H_
#define MODALGAME_SCENARIO_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "modalgame/demand.h"
#include "modalgame/graph.h"
#include "modalgame/market.h"

namespace modalgame {

// Scenario file contents, in file units (minutes, seconds, m/s, USD).
struct ScenarioConfig {
  std::string network;  // path, relative to the scenario file
  std::string demands;
  double pt_fare_usd = 3.12;
  double vot_min_usd_per_h = 10.0;
  double vot_max_usd_per_h = 17.0;
  double noise_width_usd = 1.0;
  double amod_wait_min = 3.0;
  double congestion_factor = 1.0;
  double service_tax = 0.0;
  std::optional<double> vot_reference_usd_per_h;  // midpoint when unset
  std::map<std::string, double> transit_wait_min = {
      {"ubahn", 5.0}, {"sbahn", 5.0}, {"tram", 7.0}, {"bus", 10.0}};
  std::map<std::string, double> transit_access_s = {{"ubahn", 60.0}, {"sbahn", 60.0}};
  // Overrides walk arc times as length / speed when set.
  std::optional<double> walk_speed_m_per_s;
  std::vector<OperatorConfig> operators;
};

// Throws kValidationError naming the offending field.
ScenarioConfig ParseScenarioConfig(const nlohmann::json& doc);
// Canonical form: every field written, defaults included.
nlohmann::json ScenarioConfigToJson(const ScenarioConfig& config);

MarketConfig ToMarketConfig(const ScenarioConfig& config);

struct Scenario {
  std::filesystem::path directory;
  ScenarioConfig config;
  MultiGraph raw_graph;  // as read from the network file
  MultiGraph graph;      // congestion and walk speed applied
  std::vector<Demand> demands;
};

nlohmann::json ReadJsonFile(const std::filesystem::path& path);
MultiGraph LoadNetwork(const std::filesystem::path& path);
// Duplicate origin-destination rows are merged by adding rates.
std::vector<Demand> LoadDemands(const std::filesystem::path& path, const MultiGraph& graph);
Scenario LoadScenario(const std::filesystem::path& path);
// Builds the scenario's network and demands under `config` (used by sweeps).
Scenario WithConfig(const Scenario& base, const ScenarioConfig& config);
Market BuildScenarioMarket(const Scenario& scenario);

enum class SweepParameter { kFleetSize, kCostPerKm, kPtFare, kServiceTax };
std::string SweepParameterName(SweepParameter parameter);

struct SweepSpec {
  SweepParameter parameter = SweepParameter::kFleetSize;
  std::vector<double> values;
  // Fleet split between two operators: n1 / n2 = ratio (1 for equal).
  double split_ratio = 1.0;
};

SweepSpec ParseSweepSpec(const nlohmann::json& doc);
SweepSpec LoadSweepSpec(const std::filesystem::path& path);
std::vector<ScenarioConfig> ExpandSweep(const ScenarioConfig& base, const SweepSpec& spec);

}  // namespace modalgame

#endif  // MODALGAME_SCENARIO_H_
