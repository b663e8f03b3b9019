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

#ifndef MODALGAME_DEMAND_H_
#define MODALGAME_DEMAND_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "modalgame/graph.h"

namespace modalgame {

struct Demand {
  VertexId origin{};
  VertexId destination{};
  double rate_per_s = 0.0;
};

// Waiting and access allowances. Transit waits and access times are keyed by
// line class: the part of an arc's line tag before ':' ("ubahn:U2" has class
// "ubahn"), or the whole tag when it has no ':'.
struct ServiceTiming {
  double amod_wait_h = 0.05;
  std::map<std::string, double> transit_wait_h;
  // Charged at boarding and again at alighting.
  std::map<std::string, double> transit_access_h;
  double walk_speed_kmh = 5.04;
};

std::string LineClass(const std::string& line_tag);

// Road arcs an operator may drive on: untagged road arcs plus road arcs whose
// line tag is "op<k>" for the operator's 1-based index k.
std::vector<ArcId> OperatorRoadArcs(const MultiGraph& graph, int operator_index);

struct TransitRoute {
  // Underlying graph arcs: walk arcs and the transit hop arcs of each ride.
  WeightedPath path;
  double time_h = 0.0;
  double fare_usd = 0.0;
  int boardings = 0;
};

// Cheapest walk-and-ride route for a customer valuing time at
// `vot_reference` USD/h. Rides are taken on the fully-connected closure of
// each transit line; every boarding costs one fare plus the line-class wait
// and access allowances.
TransitRoute ComputeTransitRoute(const MultiGraph& graph, const Demand& demand,
                                 double fare_per_ride_usd, double vot_reference,
                                 const ServiceTiming& timing);

struct RoadRoute {
  std::vector<ArcId> arcs;
  double service_cost_usd = 0.0;
  double time_h = 0.0;  // driving time plus the AMoD wait
};

// Cheapest road path for `operator_index` under cost_per_km * length.
// Throws kRoadUnreachable.
RoadRoute ComputeRoadRoute(const MultiGraph& graph, const Demand& demand,
                           double cost_per_km_usd, const ServiceTiming& timing,
                           int operator_index = 0);

struct DemandContext {
  Demand demand;
  double t_road_h = 0.0;
  double t_transit_h = 0.0;
  double fare_transit_usd = 0.0;
  std::vector<ArcId> road_path;
  double service_cost_usd = 0.0;
  bool transit_path_has_transit_arc = false;
};

struct ContextSettings {
  double pt_fare_usd = 3.12;
  double vot_reference = 13.5;
  ServiceTiming timing;
  double cost_per_km_usd = 0.34;
  int operator_index = 0;
};

// One context per demand, in input order. Throws kDegenerateTiming when the
// AMoD and transit times coincide exactly.
std::vector<DemandContext> BuildContexts(const MultiGraph& graph,
                                         std::span<const Demand> demands,
                                         const ContextSettings& settings);

}  // namespace modalgame

#endif  // MODALGAME_DEMAND_H_
