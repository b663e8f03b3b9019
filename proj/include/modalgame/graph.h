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

#ifndef MODALGAME_GRAPH_H_
#define MODALGAME_GRAPH_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace modalgame {

// Dense identifiers assigned at ingestion; external ids from files are kept
// on the graph for serialization.
enum class VertexId : int {};
enum class ArcId : int {};

constexpr int Index(VertexId v) { return static_cast<int>(v); }
constexpr int Index(ArcId a) { return static_cast<int>(a); }

enum class Mode { kWalk, kRoad, kTransit };

std::string_view ModeName(Mode mode);
std::optional<Mode> ParseMode(std::string_view name);

// Units: hours and kilometers.
struct Arc {
  ArcId id{};
  VertexId source{};
  VertexId target{};
  Mode mode = Mode::kWalk;
  double travel_time_h = 0.0;
  double length_km = 0.0;
  std::string line;
};

// Arc record as read from a network file, before id remapping.
struct RawArc {
  std::int64_t id = 0;
  std::int64_t source = 0;
  std::int64_t target = 0;
  Mode mode = Mode::kWalk;
  double travel_time_h = 0.0;
  double length_km = 0.0;
  std::string line;
};

enum class ValidationMode {
  kStrict,
  // Skips the walk-layer connectivity check. Used for auxiliary graphs
  // (transit closures, synthetic test layers).
  kSkipWalkConnectivity,
};

class MultiGraph {
 public:
  MultiGraph() = default;

  // Vertices and arcs are ordered by external id, so dense ids preserve the
  // file's id order. Throws Error on dangling endpoints, self loops,
  // non-positive times, zero-length walk arcs and (kStrict) a walk layer that
  // is empty or not strongly connected.
  static MultiGraph Build(std::span<const std::int64_t> vertex_ids,
                          std::span<const RawArc> arcs,
                          ValidationMode mode = ValidationMode::kStrict);

  int num_vertices() const { return static_cast<int>(external_vertex_ids_.size()); }
  int num_arcs() const { return static_cast<int>(arcs_.size()); }

  const Arc& arc(ArcId a) const { return arcs_[Index(a)]; }
  std::span<const Arc> arcs() const { return arcs_; }
  std::span<const ArcId> out_arcs(VertexId v) const { return out_arcs_[Index(v)]; }

  std::int64_t external_vertex_id(VertexId v) const {
    return external_vertex_ids_[Index(v)];
  }
  std::int64_t external_arc_id(ArcId a) const { return external_arc_ids_[Index(a)]; }
  std::optional<VertexId> FindVertex(std::int64_t external_id) const;

  std::vector<ArcId> ArcsOfMode(Mode mode) const;
  // Vertices incident to at least one arc of `mode`, ascending.
  std::vector<VertexId> LayerVertices(Mode mode) const;
  bool HasMode(Mode mode) const;

  // Copy with `arc.travel_time_h` replaced for every arc.
  MultiGraph WithTravelTimes(std::span<const double> travel_times_h) const;

 private:
  std::vector<Arc> arcs_;
  std::vector<std::vector<ArcId>> out_arcs_;
  std::vector<std::int64_t> external_vertex_ids_;
  std::vector<std::int64_t> external_arc_ids_;
};

struct WeightedPath {
  std::vector<ArcId> arcs;
  double total_weight = 0.0;
  VertexId origin{};
  VertexId destination{};
};

// Minimum-weight simple path. `arc_weights` has one entry per arc; an
// infinite weight removes the arc. Among minimizers the lexicographically
// smallest arc-id sequence is returned. Throws kUnreachable.
WeightedPath ShortestPath(const MultiGraph& graph,
                          std::span<const double> arc_weights,
                          VertexId origin, VertexId destination);

// Vertex-by-arc incidence: -1 at the source row, +1 at the target row.
struct IncidenceMatrix {
  std::vector<VertexId> vertices;
  std::vector<ArcId> arcs;
  Eigen::MatrixXd entries;
};

IncidenceMatrix BuildIncidenceMatrix(const MultiGraph& graph, Mode mode);
IncidenceMatrix BuildIncidenceMatrix(const MultiGraph& graph,
                                     std::span<const ArcId> arcs);

// All ordered pairs (u, v), u != v, over the layer's vertices: the domain of
// an operator's pricing strategy.
std::vector<std::pair<VertexId, VertexId>> FullyConnectedPairs(
    const MultiGraph& graph, Mode mode);

// Scales every road arc's travel time by `factor` (>= 1).
MultiGraph ApplyCongestion(const MultiGraph& graph, double factor);

bool IsStronglyConnected(const MultiGraph& graph, std::span<const ArcId> arcs);

}  // namespace modalgame

#endif  // MODALGAME_GRAPH_H_
