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

#include <gtest/gtest.h>

#include <vector>

#include "modalgame/error.h"

namespace modalgame {
namespace {

// 1 - 2 - 3 - 4 on a line. Walking takes 0.5 h per link; a bus runs the whole
// line at 0.1 h per hop; a road goes 1 -> 4 directly (tagged for operator 1)
// and around through 2 and 3.
MultiGraph LineNetwork() {
  const std::vector<std::int64_t> v = {1, 2, 3, 4};
  std::vector<RawArc> arcs;
  std::int64_t id = 1;
  for (int a = 1; a <= 3; ++a) {
    arcs.push_back({id++, a, a + 1, Mode::kWalk, 0.5, 2.5, ""});
    arcs.push_back({id++, a + 1, a, Mode::kWalk, 0.5, 2.5, ""});
    arcs.push_back({id++, a, a + 1, Mode::kTransit, 0.1, 2.0, "bus:7"});
    arcs.push_back({id++, a + 1, a, Mode::kTransit, 0.1, 2.0, "bus:7"});
    arcs.push_back({id++, a, a + 1, Mode::kRoad, 0.05, 2.0, ""});
    arcs.push_back({id++, a + 1, a, Mode::kRoad, 0.05, 2.0, ""});
  }
  arcs.push_back({id++, 1, 4, Mode::kRoad, 0.2, 5.0, "op1"});
  return MultiGraph::Build(v, arcs);
}

ServiceTiming BusTiming() {
  ServiceTiming t;
  t.amod_wait_h = 0.05;
  t.transit_wait_h = {{"bus", 0.1}};
  t.transit_access_h = {{"bus", 0.02}};
  return t;
}

TEST(LineClassTest, PrefixBeforeColon) {
  EXPECT_EQ(LineClass("ubahn:U2"), "ubahn");
  EXPECT_EQ(LineClass("tram"), "tram");
  EXPECT_EQ(LineClass(""), "");
  EXPECT_EQ(LineClass("a:b:c"), "a");
}

TEST(TransitRouteTest, OneBoardingCoversTheWholeLine) {
  const MultiGraph g = LineNetwork();
  const Demand d{VertexId{0}, VertexId{3}, 1.0};
  const TransitRoute r = ComputeTransitRoute(g, d, 2.0, 13.5, BusTiming());
  // Ride 1 -> 4: three hops, one wait, access at both ends.
  EXPECT_EQ(r.boardings, 1);
  EXPECT_DOUBLE_EQ(r.fare_usd, 2.0);
  EXPECT_NEAR(r.time_h, 0.3 + 0.1 + 2 * 0.02, 1e-12);
  EXPECT_EQ(r.path.arcs.size(), 3u);
  for (ArcId a : r.path.arcs) EXPECT_EQ(g.arc(a).mode, Mode::kTransit);
}

TEST(TransitRouteTest, WalkingWinsWhenRidingIsDear) {
  const MultiGraph g = LineNetwork();
  const Demand d{VertexId{0}, VertexId{1}, 1.0};
  // Walk: 0.5 h. Ride: 0.1 + 0.14 h plus the fare.
  const TransitRoute cheap = ComputeTransitRoute(g, d, 1.0, 13.5, BusTiming());
  EXPECT_EQ(cheap.boardings, 1);
  const TransitRoute dear = ComputeTransitRoute(g, d, 5.0, 13.5, BusTiming());
  EXPECT_EQ(dear.boardings, 0);
  EXPECT_DOUBLE_EQ(dear.time_h, 0.5);
  EXPECT_DOUBLE_EQ(dear.fare_usd, 0.0);
}

TEST(TransitRouteTest, EachLineChangeChargesAFare) {
  const std::vector<std::int64_t> v = {1, 2, 3};
  const std::vector<RawArc> arcs = {
      {1, 1, 2, Mode::kWalk, 2.0, 10, ""},   {2, 2, 1, Mode::kWalk, 2.0, 10, ""},
      {3, 2, 3, Mode::kWalk, 2.0, 10, ""},   {4, 3, 2, Mode::kWalk, 2.0, 10, ""},
      {5, 1, 2, Mode::kTransit, 0.1, 1, "tram:A"},
      {6, 2, 3, Mode::kTransit, 0.1, 1, "ubahn:B"},
  };
  const MultiGraph g = MultiGraph::Build(v, arcs);
  ServiceTiming t;
  t.transit_wait_h = {{"tram", 0.1}, {"ubahn", 0.05}};
  t.transit_access_h = {{"ubahn", 0.01}};
  const TransitRoute r = ComputeTransitRoute(g, {VertexId{0}, VertexId{2}, 1.0}, 3.0, 13.5, t);
  EXPECT_EQ(r.boardings, 2);
  EXPECT_DOUBLE_EQ(r.fare_usd, 6.0);
  EXPECT_NEAR(r.time_h, (0.1 + 0.1) + (0.1 + 0.05 + 0.02), 1e-12);
}

TEST(RoadRouteTest, CheapestPathPerOperator) {
  const MultiGraph g = LineNetwork();
  const Demand d{VertexId{0}, VertexId{3}, 1.0};
  const ServiceTiming t = BusTiming();
  // Operator 1 may take the 5 km direct arc; operator 2 drives 6 km around.
  const RoadRoute op1 = ComputeRoadRoute(g, d, 0.5, t, 0);
  EXPECT_EQ(op1.arcs.size(), 1u);
  EXPECT_DOUBLE_EQ(op1.service_cost_usd, 2.5);
  EXPECT_NEAR(op1.time_h, 0.2 + 0.05, 1e-12);
  const RoadRoute op2 = ComputeRoadRoute(g, d, 0.5, t, 1);
  EXPECT_EQ(op2.arcs.size(), 3u);
  EXPECT_DOUBLE_EQ(op2.service_cost_usd, 3.0);
  EXPECT_NEAR(op2.time_h, 0.15 + 0.05, 1e-12);
  EXPECT_EQ(OperatorRoadArcs(g, 0).size(), 7u);
  EXPECT_EQ(OperatorRoadArcs(g, 1).size(), 6u);
}

TEST(RoadRouteTest, UnreachableAndBadDemands) {
  const std::vector<std::int64_t> v = {1, 2};
  const std::vector<RawArc> arcs = {{1, 1, 2, Mode::kWalk, 1.0, 5, ""},
                                    {2, 2, 1, Mode::kWalk, 1.0, 5, ""},
                                    {3, 1, 2, Mode::kRoad, 0.1, 2, ""}};
  const MultiGraph g = MultiGraph::Build(v, arcs);
  const ServiceTiming t;
  try {
    ComputeRoadRoute(g, {VertexId{1}, VertexId{0}, 1.0}, 0.3, t);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kRoadUnreachable);
  }
  EXPECT_THROW(ComputeRoadRoute(g, {VertexId{0}, VertexId{0}, 1.0}, 0.3, t), Error);
  EXPECT_THROW(ComputeRoadRoute(g, {VertexId{0}, VertexId{1}, 0.0}, 0.3, t), Error);
  EXPECT_THROW(ComputeRoadRoute(g, {VertexId{0}, VertexId{5}, 1.0}, 0.3, t), Error);
}

TEST(BuildContextsTest, FieldsFollowTheRoutes) {
  const MultiGraph g = LineNetwork();
  ContextSettings s;
  s.pt_fare_usd = 2.0;
  s.timing = BusTiming();
  s.cost_per_km_usd = 0.5;
  const std::vector<Demand> demands = {{VertexId{0}, VertexId{3}, 0.3},
                                       {VertexId{2}, VertexId{1}, 0.7}};
  const std::vector<DemandContext> ctx = BuildContexts(g, demands, s);
  ASSERT_EQ(ctx.size(), 2u);
  EXPECT_NEAR(ctx[0].t_road_h, 0.25, 1e-12);
  EXPECT_NEAR(ctx[0].t_transit_h, 0.44, 1e-12);
  EXPECT_DOUBLE_EQ(ctx[0].fare_transit_usd, 2.0);
  EXPECT_DOUBLE_EQ(ctx[0].service_cost_usd, 2.5);
  EXPECT_TRUE(ctx[0].transit_path_has_transit_arc);
  EXPECT_DOUBLE_EQ(ctx[1].demand.rate_per_s, 0.7);
  EXPECT_EQ(ctx[1].road_path.size(), 1u);
}

TEST(BuildContextsTest, EqualTimesAreDegenerate) {
  // Road 0.25 h plus 0.25 h wait against a 0.5 h walk.
  const std::vector<std::int64_t> v = {1, 2};
  const std::vector<RawArc> arcs = {{1, 1, 2, Mode::kWalk, 0.5, 1, ""},
                                    {2, 2, 1, Mode::kWalk, 0.5, 1, ""},
                                    {3, 1, 2, Mode::kRoad, 0.25, 2, ""},
                                    {4, 2, 1, Mode::kRoad, 0.25, 2, ""}};
  const MultiGraph g = MultiGraph::Build(v, arcs);
  ContextSettings s;
  s.timing.amod_wait_h = 0.25;
  const std::vector<Demand> demands = {{VertexId{0}, VertexId{1}, 1.0}};
  try {
    BuildContexts(g, demands, s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateTiming);
  }
}

}  // namespace
}  // namespace modalgame
