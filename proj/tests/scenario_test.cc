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

#include <gtest/gtest.h>

#include <fstream>

#include "modalgame/error.h"
#include "test_util.h"

namespace modalgame {
namespace {

using nlohmann::json;
using testing::FreshTempDir;
using testing::ScenarioDir;

json MinimalConfig() {
  return json::parse(R"({
    "network": "net.json", "demands": "dem.csv", "pt_fare_usd": 2.0,
    "vot_min_usd_per_h": 10.0, "vot_max_usd_per_h": 17.0, "noise_width_usd": 1.0,
    "amod_wait_min": 3.0, "congestion_factor": 1.0, "service_tax": 0.0,
    "operators": [{"fleet_size": 100, "cost_per_km_usd": 0.34}]
  })");
}

ErrorCode ParseCode(const json& doc) {
  try {
    ParseScenarioConfig(doc);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "accepted " << doc.dump();
  return ErrorCode::kInvalidArgument;
}

TEST(ScenarioConfigTest, ParsesAndFillsDefaults) {
  const ScenarioConfig c = ParseScenarioConfig(MinimalConfig());
  EXPECT_EQ(c.pt_fare_usd, 2.0);
  EXPECT_EQ(c.operators.size(), 1u);
  EXPECT_FALSE(c.vot_reference_usd_per_h.has_value());
  EXPECT_EQ(c.transit_wait_min.at("tram"), 7.0);
  EXPECT_EQ(c.transit_access_s.at("ubahn"), 60.0);
  const MarketConfig m = ToMarketConfig(c);
  EXPECT_DOUBLE_EQ(m.timing.amod_wait_h, 0.05);
  EXPECT_DOUBLE_EQ(m.timing.transit_access_h.at("sbahn"), 60.0 / 3600.0);
  EXPECT_DOUBLE_EQ(VotReference(m), 13.5);
}

TEST(ScenarioConfigTest, CanonicalJsonRoundTrips) {
  json doc = MinimalConfig();
  doc["vot_reference"] = 12.5;
  doc["walk_speed_m_per_s"] = 1.2;
  doc["transit_access_s"] = 30;
  const ScenarioConfig c = ParseScenarioConfig(doc);
  EXPECT_EQ(c.transit_access_s.at("ubahn"), 30.0);
  EXPECT_EQ(c.transit_access_s.at("sbahn"), 30.0);
  const json canonical = ScenarioConfigToJson(c);
  const ScenarioConfig again = ParseScenarioConfig(canonical);
  EXPECT_EQ(ScenarioConfigToJson(again), canonical);
  EXPECT_EQ(*again.vot_reference_usd_per_h, 12.5);
  EXPECT_EQ(*again.walk_speed_m_per_s, 1.2);
}

TEST(ScenarioConfigTest, RejectsBadDocuments) {
  json doc = MinimalConfig();
  doc["pt_fare_eur"] = 2.9;
  EXPECT_EQ(ParseCode(doc), ErrorCode::kValidationError);
  doc = MinimalConfig();
  doc["currency"] = "EUR";
  EXPECT_EQ(ParseCode(doc), ErrorCode::kValidationError);
  doc = MinimalConfig();
  doc["surge_multiplier"] = 2;
  EXPECT_EQ(ParseCode(doc), ErrorCode::kValidationError);
  doc = MinimalConfig();
  doc.erase("operators");
  EXPECT_EQ(ParseCode(doc), ErrorCode::kValidationError);
  doc = MinimalConfig();
  doc["operators"] = json::array();
  EXPECT_EQ(ParseCode(doc), ErrorCode::kValidationError);
  doc = MinimalConfig();
  doc["operators"][0]["fleet_size"] = -1;
  EXPECT_EQ(ParseCode(doc), ErrorCode::kValidationError);
  doc = MinimalConfig();
  doc["operators"][0]["cost_per_km_eur"] = 0.3;
  EXPECT_EQ(ParseCode(doc), ErrorCode::kValidationError);
  doc = MinimalConfig();
  doc["service_tax"] = 1.5;
  EXPECT_EQ(ParseCode(doc), ErrorCode::kValidationError);
  doc = MinimalConfig();
  doc["vot_max_usd_per_h"] = 9.0;
  EXPECT_EQ(ParseCode(doc), ErrorCode::kValidationError);
  doc = MinimalConfig();
  doc["congestion_factor"] = 0.9;
  EXPECT_EQ(ParseCode(doc), ErrorCode::kValidationError);
  doc = MinimalConfig();
  doc["pt_fare_usd"] = "3.12";
  EXPECT_EQ(ParseCode(doc), ErrorCode::kValidationError);
  doc = MinimalConfig();
  doc["vot_reference"] = "mean";
  EXPECT_EQ(ParseCode(doc), ErrorCode::kValidationError);
}

TEST(ScenarioTest, LoadsShippedScenarios) {
  const Scenario two = LoadScenario(ScenarioDir() / "two_node.json");
  EXPECT_EQ(two.graph.num_vertices(), 2);
  EXPECT_EQ(two.demands.size(), 1u);
  const Scenario city = LoadScenario(ScenarioDir() / "mini_city.json");
  EXPECT_LE(city.graph.num_vertices(), 20);
  EXPECT_LE(city.demands.size(), 50u);
  EXPECT_TRUE(city.graph.HasMode(Mode::kTransit));
  const Market market = BuildScenarioMarket(city);
  EXPECT_EQ(market.num_operators(), 1);
  const Scenario duo = LoadScenario(ScenarioDir() / "mini_city_duopoly.json");
  EXPECT_EQ(BuildScenarioMarket(duo).num_operators(), 2);
}

class ScenarioFilesTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = FreshTempDir("scenario_files");
    std::ofstream(dir_ / "net.json") << R"({"vertices": [{"id": 1}, {"id": 2}, {"id": 3}],
      "arcs": [
        {"id": 1, "source": 1, "target": 2, "mode": "walk", "travel_time_h": 0.5, "length_km": 2.0},
        {"id": 2, "source": 2, "target": 1, "mode": "walk", "travel_time_h": 0.5, "length_km": 2.0},
        {"id": 3, "source": 2, "target": 3, "mode": "walk", "travel_time_h": 0.5, "length_km": 2.0},
        {"id": 4, "source": 3, "target": 2, "mode": "walk", "travel_time_h": 0.5, "length_km": 2.0},
        {"id": 5, "source": 1, "target": 3, "mode": "road", "travel_time_h": 0.1, "length_km": 3.0},
        {"id": 6, "source": 3, "target": 1, "mode": "road", "travel_time_h": 0.1, "length_km": 3.0}
      ]})";
  }
  void WriteDemands(const std::string& text) { std::ofstream(dir_ / "dem.csv") << text; }
  void WriteConfig(const json& doc) { std::ofstream(dir_ / "s.json") << doc.dump(); }
  std::filesystem::path dir_;
};

TEST_F(ScenarioFilesTest, DuplicateRowsMerge) {
  WriteDemands("origin,destination,rate_per_s\n1,3,0.5\n3,1,0.25\n1,3,0.125\n");
  WriteConfig(MinimalConfig());
  const Scenario s = LoadScenario(dir_ / "s.json");
  ASSERT_EQ(s.demands.size(), 2u);
  EXPECT_DOUBLE_EQ(s.demands[0].rate_per_s, 0.625);
  EXPECT_DOUBLE_EQ(s.demands[1].rate_per_s, 0.25);
}

TEST_F(ScenarioFilesTest, WalkSpeedAndCongestionRewriteTimes) {
  WriteDemands("origin,destination,rate_per_s\n1,3,0.5\n");
  json doc = MinimalConfig();
  doc["walk_speed_m_per_s"] = 1.0;  // 3.6 km/h
  doc["congestion_factor"] = 2.0;
  WriteConfig(doc);
  const Scenario s = LoadScenario(dir_ / "s.json");
  for (const Arc& arc : s.graph.arcs()) {
    if (arc.mode == Mode::kWalk) EXPECT_NEAR(arc.travel_time_h, 2.0 / 3.6, 1e-12);
    if (arc.mode == Mode::kRoad) EXPECT_NEAR(arc.travel_time_h, 0.2, 1e-12);
  }
  for (const Arc& arc : s.raw_graph.arcs()) {
    if (arc.mode == Mode::kWalk) EXPECT_EQ(arc.travel_time_h, 0.5);
  }
}

TEST_F(ScenarioFilesTest, MalformedDemandFiles) {
  WriteConfig(MinimalConfig());
  auto code_for = [&](const std::string& text) {
    WriteDemands(text);
    try {
      LoadScenario(dir_ / "s.json");
    } catch (const Error& e) {
      return e.code();
    }
    ADD_FAILURE() << "accepted " << text;
    return ErrorCode::kInvalidArgument;
  };
  EXPECT_EQ(code_for("from,to,rate\n1,3,0.5\n"), ErrorCode::kParseError);
  EXPECT_EQ(code_for("origin,destination,rate_per_s\n1,3\n"), ErrorCode::kParseError);
  EXPECT_EQ(code_for("origin,destination,rate_per_s\n1,3,abc\n"), ErrorCode::kParseError);
  EXPECT_EQ(code_for("origin,destination,rate_per_s\n1,x,0.5\n"), ErrorCode::kParseError);
  EXPECT_EQ(code_for("origin,destination,rate_per_s\n1,9,0.5\n"), ErrorCode::kValidationError);
  EXPECT_EQ(code_for("origin,destination,rate_per_s\n1,3,-0.5\n"), ErrorCode::kValidationError);
  EXPECT_EQ(code_for("origin,destination,rate_per_s\n1,1,0.5\n"), ErrorCode::kValidationError);
}

TEST_F(ScenarioFilesTest, MissingFilesAreIoErrors) {
  json doc = MinimalConfig();
  doc["network"] = "missing.json";
  WriteConfig(doc);
  try {
    LoadScenario(dir_ / "s.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIoError);
  }
}

TEST(SweepSpecTest, ShippedFleetSweepExpandsToTwelvePoints) {
  const SweepSpec spec = LoadSweepSpec(ScenarioDir() / "sweeps" / "fleet.json");
  const Scenario duo = LoadScenario(ScenarioDir() / "mini_city_duopoly.json");
  const std::vector<ScenarioConfig> configs = ExpandSweep(duo.config, spec);
  ASSERT_EQ(configs.size(), 12u);
  for (std::size_t k = 0; k < configs.size(); ++k) {
    EXPECT_DOUBLE_EQ(configs[k].operators[0].fleet_size + configs[k].operators[1].fleet_size,
                     spec.values[k]);
    EXPECT_DOUBLE_EQ(configs[k].operators[0].fleet_size, configs[k].operators[1].fleet_size);
  }
}

TEST(SweepSpecTest, RatioSplitAndOtherParameters) {
  const ScenarioConfig base = ParseScenarioConfig(json::parse(R"({
    "network": "n", "demands": "d", "pt_fare_usd": 2.0, "vot_min_usd_per_h": 10.0,
    "vot_max_usd_per_h": 17.0, "noise_width_usd": 1.0, "amod_wait_min": 3.0,
    "congestion_factor": 1.0, "service_tax": 0.0,
    "operators": [{"fleet_size": 1, "cost_per_km_usd": 0.3},
                  {"fleet_size": 1, "cost_per_km_usd": 0.4}]})"));
  SweepSpec spec = ParseSweepSpec(
      json::parse(R"j({"parameter": "fleet_size", "values": [9000], "split_rule": "ratio(1.5)"})j"));
  auto c = ExpandSweep(base, spec);
  EXPECT_DOUBLE_EQ(c[0].operators[0].fleet_size, 5400.0);
  EXPECT_DOUBLE_EQ(c[0].operators[1].fleet_size, 3600.0);

  spec = ParseSweepSpec(json::parse(R"({"parameter": "cost_per_km", "values": [0.5, 0.6]})"));
  c = ExpandSweep(base, spec);
  EXPECT_EQ(c[1].operators[0].cost_per_km_usd, 0.6);
  EXPECT_EQ(c[1].operators[1].cost_per_km_usd, 0.6);
  spec = ParseSweepSpec(json::parse(R"({"parameter": "service_tax", "values": [0.2]})"));
  EXPECT_EQ(ExpandSweep(base, spec)[0].service_tax, 0.2);
  spec = ParseSweepSpec(json::parse(R"({"parameter": "pt_fare", "values": [4]})"));
  EXPECT_EQ(ExpandSweep(base, spec)[0].pt_fare_usd, 4.0);

  for (const char* bad : {R"({"parameter": "wage", "values": [1]})",
                          R"({"parameter": "pt_fare", "values": []})",
                          R"({"parameter": "pt_fare", "values": [2, 1]})",
                          R"j({"parameter": "pt_fare", "values": [1], "split_rule": "ratio(-1)"})j",
                          R"({"parameter": "pt_fare", "values": [1], "split_rule": "thirds"})",
                          R"({"parameter": "pt_fare", "values": [1], "step": 2})"}) {
    EXPECT_THROW(ParseSweepSpec(json::parse(bad)), Error) << bad;
  }
}

}  // namespace
}  // namespace modalgame
