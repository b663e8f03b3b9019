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

#include "modalgame/market.h"

#include <limits>
#include <string>
#include <utility>

#include "modalgame/error.h"

namespace modalgame {

double VotReference(const MarketConfig& config) {
  return config.vot_reference.value_or(0.5 * (config.vot.v_min + config.vot.v_max));
}

Market BuildMarket(MultiGraph graph, std::vector<Demand> demands, const MarketConfig& config) {
  ValidateValueOfTime(config.vot);
  ValidateNoise(config.noise);
  if (config.operators.empty() || config.operators.size() > 2) {
    throw Error(ErrorCode::kValidationError, "operators: expected 1 or 2 entries");
  }
  if (!(config.service_tax >= 0.0 && config.service_tax <= 1.0)) {
    throw Error(ErrorCode::kValidationError, "service_tax must lie in [0, 1]");
  }
  if (!(config.pt_fare_usd >= 0.0)) {
    throw Error(ErrorCode::kValidationError, "pt_fare_usd must be nonnegative");
  }
  for (const OperatorConfig& op : config.operators) {
    if (!(op.fleet_size >= 0.0) || !(op.cost_per_km_usd >= 0.0)) {
      throw Error(ErrorCode::kValidationError,
                  "operator fleet_size and cost_per_km_usd must be nonnegative");
    }
  }

  Market market;
  market.config = config;
  market.operators.resize(config.operators.size());
  for (int j = 0; j < static_cast<int>(config.operators.size()); ++j) {
    OperatorView& view = market.operators[j];
    view.config = config.operators[j];
    ContextSettings settings;
    settings.pt_fare_usd = config.pt_fare_usd;
    settings.vot_reference = VotReference(config);
    settings.timing = config.timing;
    settings.cost_per_km_usd = view.config.cost_per_km_usd;
    settings.operator_index = j;
    view.contexts = BuildContexts(graph, demands, settings);
    view.road_arcs = OperatorRoadArcs(graph, j);
    view.arc_cost.assign(graph.num_arcs(), std::numeric_limits<double>::infinity());
    for (ArcId a : view.road_arcs) {
      view.arc_cost[Index(a)] = view.config.cost_per_km_usd * graph.arc(a).length_km;
    }
  }
  market.graph = std::move(graph);
  market.demands = std::move(demands);
  return market;
}

}  // namespace modalgame
