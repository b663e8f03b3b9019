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

#ifndef MODALGAME_REBALANCING_H_
#define MODALGAME_REBALANCING_H_

#include <span>
#include <vector>

#include "modalgame/graph.h"

namespace modalgame {

inline constexpr double kSecondsPerHour = 3600.0;

// Empty-vehicle flow completing a service flow to a circulation.
struct RebalancingFlow {
  std::vector<double> arc_flow;  // rate per graph arc; zero off the allowed set
  double cost = 0.0;             // sum of weight * flow
  double vehicles = 0.0;         // 3600 * sum of travel_time_h * flow
};

// Net inflow per vertex of a per-arc service flow (target minus source).
std::vector<double> ServiceImbalance(const MultiGraph& graph,
                                     std::span<const double> service_flow);

// Minimum-weight nonnegative flow on `arcs` whose net inflow cancels
// `imbalance` (vertices with positive imbalance send vehicles away).
// Successive shortest paths on the residual graph; arcs are uncapacitated.
// Throws kUnreachable if some surplus cannot reach a deficit.
RebalancingFlow MinCostRebalancing(const MultiGraph& graph, std::span<const ArcId> arcs,
                                   std::span<const double> arc_weights,
                                   std::span<const double> imbalance);

// As above with the extra bound vehicles <= vehicle_budget. Returns false if
// the bound cannot be met.
bool FleetConstrainedRebalancing(const MultiGraph& graph, std::span<const ArcId> arcs,
                                 std::span<const double> arc_weights,
                                 std::span<const double> imbalance, double vehicle_budget,
                                 RebalancingFlow* flow);

// Incidence rows of an arc set with one row dropped per weakly connected
// component, so the rows are linearly independent. `vertices[k]` is the graph
// vertex of row k; `arcs` gives the column order.
struct BalanceRows {
  std::vector<VertexId> vertices;
  std::vector<ArcId> arcs;
  Eigen::MatrixXd matrix;
  // Vertex -> component index over the arc set, -1 if untouched.
  std::vector<int> component;
};
BalanceRows BuildBalanceRows(const MultiGraph& graph, std::span<const ArcId> arcs);

}  // namespace modalgame

#endif  // MODALGAME_REBALANCING_H_
