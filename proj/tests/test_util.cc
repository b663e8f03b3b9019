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


#include "test_util.h"

#include <fstream>
#include <sstream>

namespace modalgame::testing {

Market MakeTwoNodeMarket(const TwoNodeParams& p) {
  const std::vector<std::int64_t> vertices = {1, 2};
  const std::vector<RawArc> arcs = {
      {1, 1, 2, Mode::kRoad, p.road_time_h, p.road_length_km, ""},
      {2, 2, 1, Mode::kRoad, p.road_time_h, p.road_length_km, ""},
      {3, 1, 2, Mode::kWalk, p.walk_time_h, 5.0 * p.walk_time_h, ""},
      {4, 2, 1, Mode::kWalk, p.walk_time_h, 5.0 * p.walk_time_h, ""},
  };
  MarketConfig config;
  config.pt_fare_usd = 0.0;
  config.vot = {p.vot_min, p.vot_max};
  config.timing.amod_wait_h = 0.0;
  config.service_tax = p.tax;
  for (int j = 0; j < p.operators; ++j) config.operators.push_back({p.fleet, p.cost_per_km});
  return BuildMarket(MultiGraph::Build(vertices, arcs), {{VertexId{0}, VertexId{1}, p.rate}},
                     config);
}

std::filesystem::path FreshTempDir(const std::string& name) {
  const std::filesystem::path dir = std::filesystem::temp_directory_path() / ("modalgame_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::filesystem::path ScenarioDir() { return MODALGAME_SCENARIO_DIR; }

}  // namespace modalgame::testing
