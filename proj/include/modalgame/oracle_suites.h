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

#ifndef MODALGAME_ORACLE_SUITES_H_
#define MODALGAME_ORACLE_SUITES_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "modalgame/market.h"
#include "modalgame/monte_carlo.h"
#include "modalgame/oracle.h"

namespace modalgame {

// One line of an oracle-check run.
struct CheckLine {
  std::string suite;
  std::string name;
  bool passed = false;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

// Two-vertex network with operator-tagged road arcs (lengths chosen so each
// arc costs c_j at 1 USD/km), walking both ways, no transit, ample fleets and
// a narrow value-of-time band around v_t.
Market MakeBasicExampleMarket(const BasicExampleParams& params);

struct TinyInstanceOptions {
  bool duopoly = false;
  bool identical_operators = true;
  // Fleet as a multiple of the vehicles needed to serve every demand and
  // return empty.
  double min_fleet_factor = 0.3;
  double max_fleet_factor = 1.5;
};

// Random instance with 2-4 vertices, 1-3 distinct demands, walking as the
// alternative and road times proportional to length.
Market MakeRandomTinyMarket(std::uint64_t seed, const TinyInstanceOptions& options = {});

// Random single-demand reaction inputs with |t_transit - t_road| >= 0.05 h.
ReactionInputs MakeRandomReactionInputs(std::uint64_t seed);

std::vector<CheckLine> BasicExampleSuite();
std::vector<CheckLine> GridOracleSuite(int instances, std::uint64_t seed);
std::vector<CheckLine> MonteCarloSuite(int configurations, std::int64_t samples,
                                       std::uint64_t seed);
std::vector<CheckLine> EpsilonCertificateSuite(int instances, std::uint64_t seed);

// Suite names: basic-example, grid-oracle, monte-carlo, epsilon-certificate,
// all. Throws kInvalidArgument for other names.
std::vector<CheckLine> RunOracleSuite(std::string_view suite, std::uint64_t seed);

}  // namespace modalgame

#endif  // MODALGAME_ORACLE_SUITES_H_
