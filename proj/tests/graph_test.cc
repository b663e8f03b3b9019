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

#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "modalgame/error.h"

namespace modalgame {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

std::vector<RawArc> WalkRing(int n) {
  std::vector<RawArc> arcs;
  for (int v = 1; v <= n; ++v) {
    const int w = v % n + 1;
    arcs.push_back({100 + 2 * v, v, w, Mode::kWalk, 0.5, 2.5, ""});
    arcs.push_back({101 + 2 * v, w, v, Mode::kWalk, 0.5, 2.5, ""});
  }
  return arcs;
}

TEST(MultiGraphTest, DenseIdsFollowExternalOrder) {
  const std::vector<std::int64_t> vertices = {30, 10, 20};
  std::vector<RawArc> arcs = {{7, 30, 10, Mode::kRoad, 0.1, 1.0, ""},
                              {5, 10, 20, Mode::kWalk, 0.2, 1.0, ""},
                              {6, 20, 30, Mode::kWalk, 0.2, 1.0, ""},
                              {8, 30, 10, Mode::kWalk, 0.2, 1.0, ""}};
  const MultiGraph g = MultiGraph::Build(vertices, arcs);
  EXPECT_EQ(g.num_vertices(), 3);
  EXPECT_EQ(g.external_vertex_id(VertexId{0}), 10);
  EXPECT_EQ(g.external_vertex_id(VertexId{2}), 30);
  EXPECT_EQ(g.external_arc_id(ArcId{0}), 5);
  EXPECT_EQ(g.external_arc_id(ArcId{3}), 8);
  EXPECT_EQ(*g.FindVertex(20), VertexId{1});
  EXPECT_FALSE(g.FindVertex(40).has_value());
  EXPECT_EQ(g.ArcsOfMode(Mode::kRoad).size(), 1u);
  EXPECT_TRUE(g.HasMode(Mode::kWalk));
  EXPECT_FALSE(g.HasMode(Mode::kTransit));
}

TEST(MultiGraphTest, RejectsMalformedInput) {
  const std::vector<std::int64_t> v = {1, 2, 3};
  auto with = [&](RawArc extra) {
    std::vector<RawArc> arcs = WalkRing(3);
    arcs.push_back(extra);
    return arcs;
  };
  EXPECT_EQ(CodeOf([&] { MultiGraph::Build(v, with({1, 1, 9, Mode::kRoad, 0.1, 1, ""})); }),
            ErrorCode::kDanglingArc);
  EXPECT_EQ(CodeOf([&] { MultiGraph::Build(v, with({1, 2, 2, Mode::kRoad, 0.1, 1, ""})); }),
            ErrorCode::kInvalidArc);
  EXPECT_EQ(CodeOf([&] { MultiGraph::Build(v, with({1, 1, 2, Mode::kRoad, 0.0, 1, ""})); }),
            ErrorCode::kNonPositiveTravelTime);
  EXPECT_EQ(CodeOf([&] { MultiGraph::Build(v, with({1, 1, 2, Mode::kRoad, -1.0, 1, ""})); }),
            ErrorCode::kNonPositiveTravelTime);
  EXPECT_EQ(CodeOf([&] { MultiGraph::Build(v, with({1, 1, 2, Mode::kWalk, 0.1, 0, ""})); }),
            ErrorCode::kInvalidArc);
  EXPECT_EQ(CodeOf([&] { MultiGraph::Build(v, with({102, 1, 2, Mode::kRoad, 0.1, 1, ""})); }),
            ErrorCode::kInvalidArc);
  EXPECT_EQ(CodeOf([&] {
              const std::vector<std::int64_t> dup = {1, 1};
              MultiGraph::Build(dup, std::vector<RawArc>{});
            }),
            ErrorCode::kInvalidArgument);
}

TEST(MultiGraphTest, WalkLayerMustBeStronglyConnected) {
  const std::vector<std::int64_t> v = {1, 2, 3};
  std::vector<RawArc> arcs = WalkRing(3);
  arcs.pop_back();  // 1 -> 3 stays, 3 -> 1 disappears; 1 is still reachable via 2
  EXPECT_NO_THROW(MultiGraph::Build(v, arcs));
  const std::vector<RawArc> one_way = {{1, 1, 2, Mode::kWalk, 0.1, 1, ""},
                                       {2, 2, 3, Mode::kWalk, 0.1, 1, ""}};
  EXPECT_EQ(CodeOf([&] { MultiGraph::Build(v, one_way); }), ErrorCode::kWalkLayerDisconnected);
  const std::vector<RawArc> no_walk = {{1, 1, 2, Mode::kRoad, 0.1, 1, ""}};
  EXPECT_EQ(CodeOf([&] { MultiGraph::Build(v, no_walk); }), ErrorCode::kWalkLayerDisconnected);
  EXPECT_NO_THROW(MultiGraph::Build(v, no_walk, ValidationMode::kSkipWalkConnectivity));
}

TEST(MultiGraphTest, CongestionScalesOnlyRoadArcs) {
  const std::vector<std::int64_t> v = {1, 2, 3};
  std::vector<RawArc> arcs = WalkRing(3);
  arcs.push_back({1, 1, 2, Mode::kRoad, 0.1, 1.0, ""});
  arcs.push_back({2, 2, 3, Mode::kTransit, 0.2, 1.0, "bus:1"});
  const MultiGraph g = MultiGraph::Build(v, arcs);
  const MultiGraph c = ApplyCongestion(g, 1.5);
  for (const Arc& arc : g.arcs()) {
    const double expected = arc.mode == Mode::kRoad ? 1.5 * arc.travel_time_h : arc.travel_time_h;
    EXPECT_DOUBLE_EQ(c.arc(arc.id).travel_time_h, expected);
  }
  EXPECT_EQ(CodeOf([&] { ApplyCongestion(g, 0.99); }), ErrorCode::kFactorBelowOne);
  const MultiGraph same = ApplyCongestion(g, 1.0);
  for (const Arc& arc : g.arcs()) EXPECT_EQ(same.arc(arc.id).travel_time_h, arc.travel_time_h);
}

TEST(MultiGraphTest, IncidenceColumnsSumToZero) {
  const std::vector<std::int64_t> v = {1, 2, 3, 4};
  std::vector<RawArc> arcs = WalkRing(4);
  arcs.push_back({1, 1, 3, Mode::kRoad, 0.1, 1.0, ""});
  arcs.push_back({2, 3, 4, Mode::kRoad, 0.1, 1.0, ""});
  const MultiGraph g = MultiGraph::Build(v, arcs);
  const IncidenceMatrix road = BuildIncidenceMatrix(g, Mode::kRoad);
  ASSERT_EQ(road.vertices.size(), 3u);
  ASSERT_EQ(road.arcs.size(), 2u);
  for (int c = 0; c < road.entries.cols(); ++c) {
    EXPECT_EQ(road.entries.col(c).sum(), 0.0);
    EXPECT_EQ(road.entries.col(c).cwiseAbs().sum(), 2.0);
  }
  EXPECT_EQ(CodeOf([&] { BuildIncidenceMatrix(g, Mode::kTransit); }), ErrorCode::kEmptyLayer);
  EXPECT_EQ(FullyConnectedPairs(g, Mode::kRoad).size(), 6u);
  EXPECT_EQ(FullyConnectedPairs(g, Mode::kWalk).size(), 12u);
}

// Exhaustive enumeration of simple paths.
struct Enumerated {
  double weight = kInf;
  std::vector<int> arcs;
};

void Enumerate(const MultiGraph& g, const std::vector<double>& w, int at, int target,
               std::vector<bool>& visited, std::vector<int>& path, double acc, Enumerated* best) {
  if (at == target) {
    if (acc < best->weight || (acc == best->weight && path < best->arcs)) {
      best->weight = acc;
      best->arcs = path;
    }
    return;
  }
  for (ArcId a : g.out_arcs(VertexId{at})) {
    const int next = Index(g.arc(a).target);
    if (visited[next] || std::isinf(w[Index(a)])) continue;
    visited[next] = true;
    path.push_back(Index(a));
    Enumerate(g, w, next, target, visited, path, acc + w[Index(a)], best);
    path.pop_back();
    visited[next] = false;
  }
}

TEST(ShortestPathTest, MatchesExhaustiveEnumeration) {
  std::mt19937_64 rng(2026);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 4);
    std::vector<std::int64_t> v;
    for (int i = 1; i <= n; ++i) v.push_back(i);
    std::vector<RawArc> arcs;
    const int m = n + static_cast<int>(rng() % (2 * n * n));
    for (int k = 0; k < m; ++k) {
      const int s = 1 + static_cast<int>(rng() % n);
      int t = 1 + static_cast<int>(rng() % n);
      if (t == s) t = s % n + 1;
      arcs.push_back({k + 1, s, t, Mode::kRoad, 0.1, 1.0, ""});
    }
    const MultiGraph g = MultiGraph::Build(v, arcs, ValidationMode::kSkipWalkConnectivity);
    std::vector<double> w(g.num_arcs());
    // Small integer weights make exact ties common.
    for (double& x : w) x = rng() % 7 == 0 ? kInf : static_cast<double>(rng() % 4);
    const int s = static_cast<int>(rng() % n);
    const int t = (s + 1 + static_cast<int>(rng() % (n - 1))) % n;

    Enumerated best;
    std::vector<bool> visited(n, false);
    visited[s] = true;
    std::vector<int> path;
    Enumerate(g, w, s, t, visited, path, 0.0, &best);

    if (std::isinf(best.weight)) {
      EXPECT_EQ(CodeOf([&] { ShortestPath(g, w, VertexId{s}, VertexId{t}); }),
                ErrorCode::kUnreachable);
      continue;
    }
    const WeightedPath found = ShortestPath(g, w, VertexId{s}, VertexId{t});
    EXPECT_EQ(found.total_weight, best.weight) << "trial " << trial;
    std::vector<int> ids;
    for (ArcId a : found.arcs) ids.push_back(Index(a));
    EXPECT_EQ(ids, best.arcs) << "trial " << trial;
    EXPECT_EQ(found.origin, VertexId{s});
    EXPECT_EQ(found.destination, VertexId{t});
  }
}

TEST(ShortestPathTest, RejectsBadArguments) {
  const std::vector<std::int64_t> v = {1, 2};
  const std::vector<RawArc> arcs = {{1, 1, 2, Mode::kWalk, 0.1, 1, ""},
                                    {2, 2, 1, Mode::kWalk, 0.1, 1, ""}};
  const MultiGraph g = MultiGraph::Build(v, arcs);
  const std::vector<double> ok = {1.0, 1.0};
  const std::vector<double> negative = {-1.0, 1.0};
  const std::vector<double> short_w = {1.0};
  EXPECT_EQ(CodeOf([&] { ShortestPath(g, negative, VertexId{0}, VertexId{1}); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([&] { ShortestPath(g, short_w, VertexId{0}, VertexId{1}); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([&] { ShortestPath(g, ok, VertexId{0}, VertexId{0}); }),
            ErrorCode::kInvalidArgument);
}

}  // namespace
}  // namespace modalgame
