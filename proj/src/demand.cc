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

#include "modalgame/demand.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "modalgame/error.h"

namespace modalgame {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Ride {
  VertexId from{};
  VertexId to{};
  std::vector<ArcId> hops;
  double effective_time_h = 0.0;
};

double LookupOrZero(const std::map<std::string, double>& table, const std::string& key) {
  auto it = table.find(key);
  return it == table.end() ? 0.0 : it->second;
}

// Fully-connected closure of every transit line: one ride per ordered pair of
// stations connected within the line, timed by the fastest in-line path plus
// the boarding allowances of the line class.
std::vector<Ride> BuildTransitClosure(const MultiGraph& graph, const ServiceTiming& timing) {
  std::map<std::string, std::vector<ArcId>> lines;
  for (const Arc& arc : graph.arcs()) {
    if (arc.mode == Mode::kTransit) lines[arc.line].push_back(arc.id);
  }
  std::vector<Ride> rides;
  for (const auto& [tag, arcs] : lines) {
    const std::string line_class = LineClass(tag);
    const double allowance = LookupOrZero(timing.transit_wait_h, line_class) +
                             2.0 * LookupOrZero(timing.transit_access_h, line_class);
    std::vector<double> weights(graph.num_arcs(), kInf);
    std::set<int> stations;
    for (ArcId a : arcs) {
      weights[Index(a)] = graph.arc(a).travel_time_h;
      stations.insert(Index(graph.arc(a).source));
      stations.insert(Index(graph.arc(a).target));
    }
    for (int u : stations) {
      for (int v : stations) {
        if (u == v) continue;
        WeightedPath hop_path;
        try {
          hop_path = ShortestPath(graph, weights, VertexId{u}, VertexId{v});
        } catch (const Error& e) {
          if (e.code() == ErrorCode::kUnreachable) continue;
          throw;
        }
        rides.push_back(Ride{VertexId{u}, VertexId{v}, hop_path.arcs,
                             hop_path.total_weight + allowance});
      }
    }
  }
  return rides;
}

TransitRoute RouteOnClosure(const MultiGraph& graph, const std::vector<Ride>& rides,
                            const Demand& demand, double fare, double vot) {
  // Auxiliary multigraph: walk arcs first, then rides, so ties prefer walking
  // arcs with smaller ids.
  std::vector<std::int64_t> vertex_ids;
  for (int v = 0; v < graph.num_vertices(); ++v) vertex_ids.push_back(v);
  std::vector<RawArc> raw;
  std::vector<double> weights;
  std::vector<ArcId> walk_arcs = graph.ArcsOfMode(Mode::kWalk);
  for (ArcId a : walk_arcs) {
    const Arc& arc = graph.arc(a);
    raw.push_back(RawArc{static_cast<std::int64_t>(raw.size()), Index(arc.source),
                         Index(arc.target), Mode::kWalk, arc.travel_time_h,
                         arc.length_km, ""});
    weights.push_back(vot * arc.travel_time_h);
  }
  for (const Ride& ride : rides) {
    raw.push_back(RawArc{static_cast<std::int64_t>(raw.size()), Index(ride.from),
                         Index(ride.to), Mode::kTransit, ride.effective_time_h, 0.0, ""});
    weights.push_back(fare + vot * ride.effective_time_h);
  }
  MultiGraph aux = MultiGraph::Build(vertex_ids, raw, ValidationMode::kSkipWalkConnectivity);
  WeightedPath aux_path = ShortestPath(aux, weights, demand.origin, demand.destination);

  TransitRoute route;
  route.path.origin = demand.origin;
  route.path.destination = demand.destination;
  route.path.total_weight = aux_path.total_weight;
  const int num_walk = static_cast<int>(walk_arcs.size());
  for (ArcId a : aux_path.arcs) {
    const int k = Index(a);
    if (k < num_walk) {
      route.path.arcs.push_back(walk_arcs[k]);
      route.time_h += graph.arc(walk_arcs[k]).travel_time_h;
    } else {
      const Ride& ride = rides[k - num_walk];
      route.path.arcs.insert(route.path.arcs.end(), ride.hops.begin(), ride.hops.end());
      route.time_h += ride.effective_time_h;
      route.fare_usd += fare;
      ++route.boardings;
    }
  }
  return route;
}

void CheckDemand(const MultiGraph& graph, const Demand& demand) {
  if (Index(demand.origin) < 0 || Index(demand.origin) >= graph.num_vertices() ||
      Index(demand.destination) < 0 || Index(demand.destination) >= graph.num_vertices()) {
    throw Error(ErrorCode::kInvalidArgument, "demand endpoint outside the graph");
  }
  if (demand.origin == demand.destination) {
    throw Error(ErrorCode::kInvalidArgument, "demand origin equals destination");
  }
  if (!(demand.rate_per_s > 0.0) || !std::isfinite(demand.rate_per_s)) {
    throw Error(ErrorCode::kInvalidArgument, "demand rate must be positive");
  }
}

}  // namespace

std::string LineClass(const std::string& line_tag) {
  const auto colon = line_tag.find(':');
  return colon == std::string::npos ? line_tag : line_tag.substr(0, colon);
}

std::vector<ArcId> OperatorRoadArcs(const MultiGraph& graph, int operator_index) {
  const std::string own_tag = "op" + std::to_string(operator_index + 1);
  std::vector<ArcId> arcs;
  for (const Arc& arc : graph.arcs()) {
    if (arc.mode != Mode::kRoad) continue;
    if (arc.line.empty() || arc.line == own_tag) arcs.push_back(arc.id);
  }
  return arcs;
}

TransitRoute ComputeTransitRoute(const MultiGraph& graph, const Demand& demand,
                                 double fare_per_ride_usd, double vot_reference,
                                 const ServiceTiming& timing) {
  CheckDemand(graph, demand);
  return RouteOnClosure(graph, BuildTransitClosure(graph, timing), demand,
                        fare_per_ride_usd, vot_reference);
}

RoadRoute ComputeRoadRoute(const MultiGraph& graph, const Demand& demand,
                           double cost_per_km_usd, const ServiceTiming& timing,
                           int operator_index) {
  CheckDemand(graph, demand);
  std::vector<double> weights(graph.num_arcs(), kInf);
  for (ArcId a : OperatorRoadArcs(graph, operator_index)) {
    weights[Index(a)] = cost_per_km_usd * graph.arc(a).length_km;
  }
  WeightedPath path;
  try {
    path = ShortestPath(graph, weights, demand.origin, demand.destination);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kUnreachable) throw;
    throw Error(ErrorCode::kRoadUnreachable,
                "no road path from vertex " +
                    std::to_string(graph.external_vertex_id(demand.origin)) + " to vertex " +
                    std::to_string(graph.external_vertex_id(demand.destination)));
  }
  RoadRoute route;
  route.arcs = path.arcs;
  route.service_cost_usd = path.total_weight;
  route.time_h = timing.amod_wait_h;
  for (ArcId a : path.arcs) route.time_h += graph.arc(a).travel_time_h;
  return route;
}

std::vector<DemandContext> BuildContexts(const MultiGraph& graph,
                                         std::span<const Demand> demands,
                                         const ContextSettings& settings) {
  std::vector<DemandContext> contexts;
  if (demands.empty()) return contexts;
  const std::vector<Ride> rides = BuildTransitClosure(graph, settings.timing);
  const std::vector<VertexId> walk_vertices = graph.LayerVertices(Mode::kWalk);
  auto in_walk_layer = [&](VertexId v) {
    return std::binary_search(walk_vertices.begin(), walk_vertices.end(), v);
  };
  contexts.reserve(demands.size());
  for (const Demand& demand : demands) {
    CheckDemand(graph, demand);
    if (!in_walk_layer(demand.origin) || !in_walk_layer(demand.destination)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "demand endpoints must lie in the walk layer");
    }
    const TransitRoute transit = RouteOnClosure(graph, rides, demand, settings.pt_fare_usd,
                                                settings.vot_reference);
    const RoadRoute road = ComputeRoadRoute(graph, demand, settings.cost_per_km_usd,
                                            settings.timing, settings.operator_index);
    if (road.time_h == transit.time_h) {
      throw Error(ErrorCode::kDegenerateTiming,
                  "AMoD and transit times coincide for demand " +
                      std::to_string(graph.external_vertex_id(demand.origin)) + "->" +
                      std::to_string(graph.external_vertex_id(demand.destination)));
    }
    DemandContext ctx;
    ctx.demand = demand;
    ctx.t_road_h = road.time_h;
    ctx.t_transit_h = transit.time_h;
    ctx.fare_transit_usd = transit.fare_usd;
    ctx.road_path = road.arcs;
    ctx.service_cost_usd = road.service_cost_usd;
    ctx.transit_path_has_transit_arc = transit.boardings > 0;
    contexts.push_back(std::move(ctx));
  }
  return contexts;
}

}  // namespace modalgame
