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

#ifndef MODALGAME_MARKET_H_
#define MODALGAME_MARKET_H_

#include <optional>
#include <vector>

#include "modalgame/demand.h"
#include "modalgame/graph.h"
#include "modalgame/reaction.h"

namespace modalgame {

struct OperatorConfig {
  double fleet_size = 0.0;  // vehicles
  double cost_per_km_usd = 0.34;
};

struct MarketConfig {
  double pt_fare_usd = 3.12;
  ValueOfTime vot;
  PreferenceNoise noise;
  // Value of time used for transit routing; midpoint of the band when unset.
  std::optional<double> vot_reference;
  ServiceTiming timing;
  double service_tax = 0.0;
  std::vector<OperatorConfig> operators;
};

// What one operator sees: its contexts (road times and costs are per
// operator), the road arcs it may use, and the per-arc driving cost.
struct OperatorView {
  OperatorConfig config;
  std::vector<DemandContext> contexts;
  std::vector<ArcId> road_arcs;
  std::vector<double> arc_cost;  // per graph arc; infinite off road_arcs
};

struct Market {
  MultiGraph graph;
  std::vector<Demand> demands;
  MarketConfig config;
  std::vector<OperatorView> operators;

  int num_operators() const { return static_cast<int>(operators.size()); }
  int num_demands() const { return static_cast<int>(demands.size()); }
};

double VotReference(const MarketConfig& config);

// Validates the configuration and builds one view per operator. Throws
// kValidationError on bad parameters and propagates context errors.
Market BuildMarket(MultiGraph graph, std::vector<Demand> demands, const MarketConfig& config);

}  // namespace modalgame

#endif  // MODALGAME_MARKET_H_
