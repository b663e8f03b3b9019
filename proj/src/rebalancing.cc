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

#include "modalgame/rebalancing.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "modalgame/error.h"
#include "modalgame/interior_point.h"

namespace modalgame {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int FindRoot(std::vector<int>& parent, int v) {
  while (parent[v] != v) {
    parent[v] = parent[parent[v]];
    v = parent[v];
  }
  return v;
}

void Finalize(const MultiGraph& graph, std::span<const double> arc_weights,
              RebalancingFlow* flow) {
  flow->cost = 0.0;
  flow->vehicles = 0.0;
  for (int a = 0; a < graph.num_arcs(); ++a) {
    const double f = flow->arc_flow[a];
    if (f == 0.0) continue;
    flow->cost += arc_weights[a] * f;
    flow->vehicles += kSecondsPerHour * graph.arcs()[a].travel_time_h * f;
  }
}

}  // namespace

std::vector<double> ServiceImbalance(const MultiGraph& graph,
                                     std::span<const double> service_flow) {
  std::vector<double> imbalance(graph.num_vertices(), 0.0);
  for (const Arc& arc : graph.arcs()) {
    const double f = service_flow[Index(arc.id)];
    if (f == 0.0) continue;
    imbalance[Index(arc.target)] += f;
    imbalance[Index(arc.source)] -= f;
  }
  return imbalance;
}

BalanceRows BuildBalanceRows(const MultiGraph& graph, std::span<const ArcId> arcs) {
  const int n = graph.num_vertices();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<bool> touched(n, false);
  for (ArcId a : arcs) {
    const Arc& arc = graph.arc(a);
    touched[Index(arc.source)] = touched[Index(arc.target)] = true;
    parent[FindRoot(parent, Index(arc.source))] = FindRoot(parent, Index(arc.target));
  }
  BalanceRows rows;
  rows.arcs.assign(arcs.begin(), arcs.end());
  rows.component.assign(n, -1);
  std::vector<int> root_component(n, -1);
  int num_components = 0;
  for (int v = 0; v < n; ++v) {
    if (!touched[v]) continue;
    const int root = FindRoot(parent, v);
    if (root_component[root] < 0) {
      // First vertex of a component: its row is implied by the others.
      root_component[root] = num_components++;
      rows.component[v] = root_component[root];
      continue;
    }
    rows.component[v] = root_component[root];
    rows.vertices.push_back(VertexId{v});
  }
  std::vector<int> row_of(n, -1);
  for (int k = 0; k < static_cast<int>(rows.vertices.size()); ++k) {
    row_of[Index(rows.vertices[k])] = k;
  }
  rows.matrix = Eigen::MatrixXd::Zero(static_cast<int>(rows.vertices.size()),
                                      static_cast<int>(arcs.size()));
  for (int j = 0; j < static_cast<int>(arcs.size()); ++j) {
    const Arc& arc = graph.arc(arcs[j]);
    if (row_of[Index(arc.source)] >= 0) rows.matrix(row_of[Index(arc.source)], j) -= 1.0;
    if (row_of[Index(arc.target)] >= 0) rows.matrix(row_of[Index(arc.target)], j) += 1.0;
  }
  return rows;
}

RebalancingFlow MinCostRebalancing(const MultiGraph& graph, std::span<const ArcId> arcs,
                                   std::span<const double> arc_weights,
                                   std::span<const double> imbalance) {
  const int n = graph.num_vertices();
  RebalancingFlow flow;
  flow.arc_flow.assign(graph.num_arcs(), 0.0);
  std::vector<double> supply(n), deficit(n);
  double total = 0.0;
  for (int v = 0; v < n; ++v) {
    supply[v] = std::max(imbalance[v], 0.0);
    deficit[v] = std::max(-imbalance[v], 0.0);
    total += supply[v];
  }
  const double tol = 1e-13 * (1.0 + total);
  double remaining = total;

  // Residual edge k: forward use of arcs[k/2] (k even) or cancellation (odd).
  const int num_edges = 2 * static_cast<int>(arcs.size());
  auto edge_from = [&](int k) {
    const Arc& arc = graph.arc(arcs[k / 2]);
    return Index(k % 2 == 0 ? arc.source : arc.target);
  };
  auto edge_to = [&](int k) {
    const Arc& arc = graph.arc(arcs[k / 2]);
    return Index(k % 2 == 0 ? arc.target : arc.source);
  };
  auto edge_cost = [&](int k) {
    const double w = arc_weights[Index(arcs[k / 2])];
    return k % 2 == 0 ? w : -w;
  };
  auto edge_capacity = [&](int k) {
    return k % 2 == 0 ? kInf : flow.arc_flow[Index(arcs[k / 2])];
  };

  std::vector<double> dist(n);
  std::vector<int> pred(n);
  const int max_augmentations = 4 * (n + num_edges) + 16;
  for (int round = 0; remaining > tol; ++round) {
    if (round > max_augmentations) {
      throw Error(ErrorCode::kSolverFailure, "rebalancing did not terminate");
    }
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(pred.begin(), pred.end(), -1);
    for (int v = 0; v < n; ++v) {
      if (supply[v] > tol) dist[v] = 0.0;
    }
    // Bellman-Ford; residual costs may be negative but no cycle is.
    for (int pass = 0; pass < n; ++pass) {
      bool changed = false;
      for (int k = 0; k < num_edges; ++k) {
        const int u = edge_from(k);
        if (dist[u] == kInf || edge_capacity(k) <= tol) continue;
        const double candidate = dist[u] + edge_cost(k);
        const int w = edge_to(k);
        if (dist[w] == kInf || candidate < dist[w] - 1e-12 * (1.0 + std::abs(dist[w]))) {
          dist[w] = candidate;
          pred[w] = k;
          changed = true;
        }
      }
      if (!changed) break;
    }
    int sink = -1;
    for (int v = 0; v < n; ++v) {
      if (deficit[v] > tol && dist[v] < kInf && (sink < 0 || dist[v] < dist[sink])) sink = v;
    }
    if (sink < 0) {
      throw Error(ErrorCode::kUnreachable, "rebalancing surplus cannot reach a deficit");
    }
    double bottleneck = deficit[sink];
    int v = sink;
    for (int guard = 0; pred[v] >= 0; ++guard) {
      if (guard > n) throw Error(ErrorCode::kSolverFailure, "cyclic residual path");
      bottleneck = std::min(bottleneck, edge_capacity(pred[v]));
      v = edge_from(pred[v]);
    }
    const int source = v;
    bottleneck = std::min(bottleneck, supply[source]);
    for (v = sink; pred[v] >= 0; v = edge_from(pred[v])) {
      const int k = pred[v];
      double& f = flow.arc_flow[Index(arcs[k / 2])];
      f = k % 2 == 0 ? f + bottleneck : std::max(f - bottleneck, 0.0);
    }
    supply[source] -= bottleneck;
    deficit[sink] -= bottleneck;
    remaining -= bottleneck;
  }
  Finalize(graph, arc_weights, &flow);
  return flow;
}

bool FleetConstrainedRebalancing(const MultiGraph& graph, std::span<const ArcId> arcs,
                                 std::span<const double> arc_weights,
                                 std::span<const double> imbalance, double vehicle_budget,
                                 RebalancingFlow* flow) {
  const double slack = 1e-9 * std::max(1.0, vehicle_budget);
  *flow = MinCostRebalancing(graph, arcs, arc_weights, imbalance);
  if (flow->vehicles <= vehicle_budget + slack) return true;

  std::vector<double> times(graph.num_arcs());
  for (const Arc& arc : graph.arcs()) times[Index(arc.id)] = arc.travel_time_h;
  RebalancingFlow fastest = MinCostRebalancing(graph, arcs, times, imbalance);
  Finalize(graph, arc_weights, &fastest);
  if (fastest.vehicles > vehicle_budget + slack) return false;
  if (fastest.vehicles >= vehicle_budget - slack) {
    *flow = fastest;
    return true;
  }

  const BalanceRows rows = BuildBalanceRows(graph, arcs);
  const int k = static_cast<int>(arcs.size());
  ConvexProgram lp;
  lp.num_vars = k;
  lp.cost.resize(k);
  lp.ineq_matrix = Eigen::MatrixXd::Zero(k + 1, k);
  lp.ineq_rhs = Eigen::VectorXd::Zero(k + 1);
  for (int j = 0; j < k; ++j) {
    const Arc& arc = graph.arc(arcs[j]);
    lp.cost(j) = arc_weights[Index(arcs[j])];
    lp.ineq_matrix(j, j) = -1.0;
    lp.ineq_matrix(k, j) = kSecondsPerHour * arc.travel_time_h;
  }
  lp.ineq_rhs(k) = vehicle_budget;
  lp.eq_matrix = rows.matrix;
  lp.eq_rhs.resize(static_cast<int>(rows.vertices.size()));
  for (int r = 0; r < lp.eq_rhs.size(); ++r) lp.eq_rhs(r) = -imbalance[Index(rows.vertices[r])];
  const InteriorPointResult solved = SolveInteriorPoint(lp);
  if (!solved.converged) {
    throw Error(ErrorCode::kSolverFailure, "fleet-constrained rebalancing did not converge");
  }
  flow->arc_flow.assign(graph.num_arcs(), 0.0);
  for (int j = 0; j < k; ++j) flow->arc_flow[Index(arcs[j])] = std::max(solved.z(j), 0.0);
  Finalize(graph, arc_weights, flow);
  return true;
}

}  // namespace modalgame
