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


#ifndef MODALGAME_TESTS_TEST_UTIL_H_
#define MODALGAME_TESTS_TEST_UTIL_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "modalgame/graph.h"
#include "modalgame/market.h"

namespace modalgame::testing {

// Two vertices joined by a road (both ways) and a walk link (both ways);
// one demand 1 -> 2. No transit, no fare, no AMoD wait.
struct TwoNodeParams {
  double road_time_h = 0.2;
  double road_length_km = 4.0;
  double walk_time_h = 1.0;
  double rate = 2.0;
  double cost_per_km = 0.5;
  double fleet = 1e6;
  double vot_min = 10.0;
  double vot_max = 17.0;
  double tax = 0.0;
  int operators = 1;
};
Market MakeTwoNodeMarket(const TwoNodeParams& params);

// Fresh empty directory under the system temp dir.
std::filesystem::path FreshTempDir(const std::string& name);

std::string ReadFile(const std::filesystem::path& path);

std::filesystem::path ScenarioDir();

}  // namespace modalgame::testing

#endif  // MODALGAME_TESTS_TEST_UTIL_H_
