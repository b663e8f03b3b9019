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

#include "modalgame/graph.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <string>

#include "modalgame/error.h"

namespace modalgame {
namespace {

constexpr double kTieTolerance = 1e-12;

// Returns -1, 0, +1 comparing path weights with a relative tie band.
int CompareWeight(double a, double b) {
  if (std::isinf(a) || std::isinf(b)) return a < b ? -1 : (a > b ? 1 : 0);
  const double band = kTieTolerance * std::max({1.0, std::abs(a), std::abs(b)});
  if (a < b - band) return -1;
  if (a > b + band) return 1;
  return 0;
}

std::vector<VertexId> ReachableFrom(const MultiGraph& graph,
                                    const std::vector<std::vector<int>>& adjacency,
                                    VertexId start) {
  std::vector<bool> seen(graph.num_vertices(), false);
  std::vector<VertexId> stack{start};
  std::vector<VertexId> order;
  seen[Index(start)] = true;
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (int w : adjacency[Index(v)]) {
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(VertexId{w});
      }
    }
  }
  return order;
}

}  // namespace

std::string_view ModeName(Mode mode) {
  switch (mode) {
    case Mode::kWalk: return "walk";
    case Mode::kRoad: return "road";
    case Mode::kTransit: return "transit";
  }
  return "unknown";
}

std::optional<Mode> ParseMode(std::string_view name) {
  if (name == "walk") return Mode::kWalk;
  if (name == "road") return Mode::kRoad;
  if (name == "transit") return Mode::kTransit;
  return std::nullopt;
}

MultiGraph MultiGraph::Build(std::span<const std::int64_t> vertex_ids,
                             std::span<const RawArc> raw_arcs,
                             ValidationMode mode) {
  MultiGraph graph;
  std::vector<std::int64_t> ids(vertex_ids.begin(), vertex_ids.end());
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    throw Error(ErrorCode::kInvalidArgument, "duplicate vertex id");
  }
  graph.external_vertex_ids_ = ids;
  graph.out_arcs_.resize(ids.size());

  std::vector<const RawArc*> ordered;
  ordered.reserve(raw_arcs.size());
  for (const RawArc& raw : raw_arcs) ordered.push_back(&raw);
  std::sort(ordered.begin(), ordered.end(),
            [](const RawArc* a, const RawArc* b) { return a->id < b->id; });
  for (size_t k = 1; k < ordered.size(); ++k) {
    if (ordered[k]->id == ordered[k - 1]->id) {
      throw Error(ErrorCode::kInvalidArc,
                  "duplicate arc id " + std::to_string(ordered[k]->id));
    }
  }

  for (const RawArc* raw : ordered) {
    std::optional<VertexId> source = graph.FindVertex(raw->source);
    std::optional<VertexId> target = graph.FindVertex(raw->target);
    if (!source || !target) {
      throw Error(ErrorCode::kDanglingArc,
                  "arc " + std::to_string(raw->id) + " references a missing vertex");
    }
    if (*source == *target) {
      throw Error(ErrorCode::kInvalidArc,
                  "arc " + std::to_string(raw->id) + " is a self loop");
    }
    if (!(raw->travel_time_h > 0.0) || !std::isfinite(raw->travel_time_h)) {
      throw Error(ErrorCode::kNonPositiveTravelTime,
                  "arc " + std::to_string(raw->id) + " has travel time " +
                      std::to_string(raw->travel_time_h));
    }
    if (!(raw->length_km >= 0.0) || !std::isfinite(raw->length_km)) {
      throw Error(ErrorCode::kInvalidArc,
                  "arc " + std::to_string(raw->id) + " has a negative length");
    }
    if (raw->mode == Mode::kWalk && !(raw->length_km > 0.0)) {
      throw Error(ErrorCode::kInvalidArc,
                  "walk arc " + std::to_string(raw->id) + " has zero length");
    }
    Arc arc;
    arc.id = ArcId{static_cast<int>(graph.arcs_.size())};
    arc.source = *source;
    arc.target = *target;
    arc.mode = raw->mode;
    arc.travel_time_h = raw->travel_time_h;
    arc.length_km = raw->length_km;
    arc.line = raw->line;
    graph.out_arcs_[Index(arc.source)].push_back(arc.id);
    graph.external_arc_ids_.push_back(raw->id);
    graph.arcs_.push_back(std::move(arc));
  }

  if (mode == ValidationMode::kStrict) {
    std::vector<ArcId> walk = graph.ArcsOfMode(Mode::kWalk);
    if (walk.empty() || !IsStronglyConnected(graph, walk)) {
      throw Error(ErrorCode::kWalkLayerDisconnected,
                  "the walk layer must be non-empty and strongly connected");
    }
  }
  return graph;
}

std::optional<VertexId> MultiGraph::FindVertex(std::int64_t external_id) const {
  auto it = std::lower_bound(external_vertex_ids_.begin(),
                             external_vertex_ids_.end(), external_id);
  if (it == external_vertex_ids_.end() || *it != external_id) return std::nullopt;
  return VertexId{static_cast<int>(it - external_vertex_ids_.begin())};
}

std::vector<ArcId> MultiGraph::ArcsOfMode(Mode mode) const {
  std::vector<ArcId> out;
  for (const Arc& arc : arcs_) {
    if (arc.mode == mode) out.push_back(arc.id);
  }
  return out;
}

std::vector<VertexId> MultiGraph::LayerVertices(Mode mode) const {
  std::vector<bool> touched(num_vertices(), false);
  for (const Arc& arc : arcs_) {
    if (arc.mode != mode) continue;
    touched[Index(arc.source)] = true;
    touched[Index(arc.target)] = true;
  }
  std::vector<VertexId> out;
  for (int v = 0; v < num_vertices(); ++v) {
    if (touched[v]) out.push_back(VertexId{v});
  }
  return out;
}

bool MultiGraph::HasMode(Mode mode) const {
  return std::any_of(arcs_.begin(), arcs_.end(),
                     [mode](const Arc& arc) { return arc.mode == mode; });
}

MultiGraph MultiGraph::WithTravelTimes(std::span<const double> travel_times_h) const {
  if (static_cast<int>(travel_times_h.size()) != num_arcs()) {
    throw Error(ErrorCode::kInvalidArgument, "travel time vector size mismatch");
  }
  MultiGraph copy = *this;
  for (int a = 0; a < num_arcs(); ++a) {
    if (!(travel_times_h[a] > 0.0)) {
      throw Error(ErrorCode::kNonPositiveTravelTime, "non-positive travel time");
    }
    copy.arcs_[a].travel_time_h = travel_times_h[a];
  }
  return copy;
}

WeightedPath ShortestPath(const MultiGraph& graph,
                          std::span<const double> arc_weights,
                          VertexId origin, VertexId destination) {
  if (static_cast<int>(arc_weights.size()) != graph.num_arcs()) {
    throw Error(ErrorCode::kInvalidArgument, "weight vector size mismatch");
  }
  if (origin == destination) {
    throw Error(ErrorCode::kInvalidArgument, "origin equals destination");
  }
  for (double w : arc_weights) {
    if (std::isnan(w) || w < 0.0) {
      throw Error(ErrorCode::kInvalidArgument, "arc weights must be nonnegative");
    }
  }

  // Label-correcting Dijkstra over simple paths. A label is replaced when a
  // candidate is strictly lighter, or equally heavy with a lexicographically
  // smaller arc sequence.
  const int n = graph.num_vertices();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, kInf);
  std::vector<std::vector<ArcId>> label(n);
  std::vector<std::vector<bool>> on_path(n);
  std::vector<int> version(n, 0);

  using Entry = std::tuple<double, int, int>;  // weight, vertex, version
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  dist[Index(origin)] = 0.0;
  on_path[Index(origin)].assign(n, false);
  on_path[Index(origin)][Index(origin)] = true;
  queue.emplace(0.0, Index(origin), 0);

  while (!queue.empty()) {
    auto [d, v, ver] = queue.top();
    queue.pop();
    if (ver != version[v]) continue;
    for (ArcId a : graph.out_arcs(VertexId{v})) {
      const double w = arc_weights[Index(a)];
      if (std::isinf(w)) continue;
      const int t = Index(graph.arc(a).target);
      if (on_path[v][t]) continue;
      const double candidate = d + w;
      int cmp = CompareWeight(candidate, dist[t]);
      bool better = cmp < 0;
      if (cmp == 0) {
        std::vector<ArcId> seq = label[v];
        seq.push_back(a);
        better = seq < label[t];
      }
      if (!better) continue;
      dist[t] = candidate;
      label[t] = label[v];
      label[t].push_back(a);
      on_path[t] = on_path[v];
      on_path[t][t] = true;
      ++version[t];
      queue.emplace(candidate, t, version[t]);
    }
  }

  if (std::isinf(dist[Index(destination)])) {
    throw Error(ErrorCode::kUnreachable,
                "no path from vertex " + std::to_string(graph.external_vertex_id(origin)) +
                    " to vertex " + std::to_string(graph.external_vertex_id(destination)));
  }
  WeightedPath path;
  path.arcs = label[Index(destination)];
  path.origin = origin;
  path.destination = destination;
  path.total_weight = 0.0;
  for (ArcId a : path.arcs) path.total_weight += arc_weights[Index(a)];
  return path;
}

IncidenceMatrix BuildIncidenceMatrix(const MultiGraph& graph,
                                     std::span<const ArcId> arcs) {
  if (arcs.empty()) throw Error(ErrorCode::kEmptyLayer, "no arcs in layer");
  std::set<int> vertex_set;
  for (ArcId a : arcs) {
    vertex_set.insert(Index(graph.arc(a).source));
    vertex_set.insert(Index(graph.arc(a).target));
  }
  IncidenceMatrix m;
  std::map<int, int> row_of;
  for (int v : vertex_set) {
    row_of[v] = static_cast<int>(m.vertices.size());
    m.vertices.push_back(VertexId{v});
  }
  m.arcs.assign(arcs.begin(), arcs.end());
  m.entries = Eigen::MatrixXd::Zero(m.vertices.size(), m.arcs.size());
  for (size_t col = 0; col < m.arcs.size(); ++col) {
    const Arc& arc = graph.arc(m.arcs[col]);
    m.entries(row_of[Index(arc.source)], col) = -1.0;
    m.entries(row_of[Index(arc.target)], col) = 1.0;
  }
  return m;
}

IncidenceMatrix BuildIncidenceMatrix(const MultiGraph& graph, Mode mode) {
  std::vector<ArcId> arcs = graph.ArcsOfMode(mode);
  if (arcs.empty()) {
    throw Error(ErrorCode::kEmptyLayer,
                "layer '" + std::string(ModeName(mode)) + "' has no arcs");
  }
  return BuildIncidenceMatrix(graph, arcs);
}

std::vector<std::pair<VertexId, VertexId>> FullyConnectedPairs(
    const MultiGraph& graph, Mode mode) {
  std::vector<VertexId> vertices = graph.LayerVertices(mode);
  if (vertices.empty()) {
    throw Error(ErrorCode::kEmptyLayer,
                "layer '" + std::string(ModeName(mode)) + "' has no vertices");
  }
  std::vector<std::pair<VertexId, VertexId>> pairs;
  pairs.reserve(vertices.size() * (vertices.size() - 1));
  for (VertexId u : vertices) {
    for (VertexId v : vertices) {
      if (u != v) pairs.emplace_back(u, v);
    }
  }
  return pairs;
}

MultiGraph ApplyCongestion(const MultiGraph& graph, double factor) {
  if (!(factor >= 1.0) || !std::isfinite(factor)) {
    throw Error(ErrorCode::kFactorBelowOne,
                "congestion factor must be >= 1, got " + std::to_string(factor));
  }
  std::vector<double> times;
  times.reserve(graph.num_arcs());
  for (const Arc& arc : graph.arcs()) {
    times.push_back(arc.mode == Mode::kRoad ? arc.travel_time_h * factor
                                            : arc.travel_time_h);
  }
  return graph.WithTravelTimes(times);
}

bool IsStronglyConnected(const MultiGraph& graph, std::span<const ArcId> arcs) {
  if (arcs.empty()) return false;
  const int n = graph.num_vertices();
  std::vector<std::vector<int>> forward(n), backward(n);
  std::vector<bool> in_layer(n, false);
  for (ArcId a : arcs) {
    const Arc& arc = graph.arc(a);
    forward[Index(arc.source)].push_back(Index(arc.target));
    backward[Index(arc.target)].push_back(Index(arc.source));
    in_layer[Index(arc.source)] = in_layer[Index(arc.target)] = true;
  }
  const VertexId start = graph.arc(arcs.front()).source;
  const int layer_size = static_cast<int>(std::count(in_layer.begin(), in_layer.end(), true));
  return static_cast<int>(ReachableFrom(graph, forward, start).size()) == layer_size &&
         static_cast<int>(ReachableFrom(graph, backward, start).size()) == layer_size;
}

}  // namespace modalgame
