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

#include "modalgame/oracle.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "modalgame/error.h"
#include "modalgame/rebalancing.h"

namespace modalgame {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct GridProblem {
  const Market* market = nullptr;
  int op = 0;
  std::span<const ReactionPieces> reactions;
  int points = 0;
  std::int64_t total = 0;
};

GridProblem MakeGridProblem(const Market& market, int op,
                            std::span<const ReactionPieces> reactions, int points_per_dim) {
  const int d = static_cast<int>(reactions.size());
  if (d > kMaxGridDemands || market.graph.num_vertices() > kMaxGridVertices) {
    throw Error(ErrorCode::kTooLarge, "grid oracle is limited to 3 demands and 6 vertices");
  }
  if (points_per_dim < 2) throw Error(ErrorCode::kInvalidArgument, "need 2 grid points");
  GridProblem g{&market, op, reactions, points_per_dim, 1};
  for (int i = 0; i < d; ++i) g.total *= points_per_dim;
  return g;
}

void GridPoint(const GridProblem& g, std::int64_t index, std::vector<double>* x) {
  const int d = static_cast<int>(g.reactions.size());
  x->resize(d);
  for (int i = 0; i < d; ++i) {
    const int k = static_cast<int>(index % g.points);
    index /= g.points;
    // The last point is the rate itself; rate * k / k can round above it.
    (*x)[i] = k == g.points - 1 ? g.reactions[i].rate : g.reactions[i].rate * k / (g.points - 1);
  }
}

// Profit at a grid point, or -inf when the point is skipped.
double GridProfit(const GridProblem& g, const std::vector<double>& x) {
  const Market& market = *g.market;
  const OperatorView& view = market.operators[g.op];
  const double tax = market.config.service_tax;
  double revenue = 0.0, service = 0.0, service_vehicles = 0.0;
  std::vector<double> flow(market.graph.num_arcs(), 0.0);
  for (int i = 0; i < static_cast<int>(x.size()); ++i) {
    if (x[i] == 0.0) continue;
    const double price = InvertReaction(g.reactions[i], x[i]);
    if (price < 0.0) return -kInf;
    revenue += x[i] * price;
    const DemandContext& ctx = view.contexts[i];
    service += x[i] * ctx.service_cost_usd;
    service_vehicles += kSecondsPerHour * ctx.t_road_h * x[i];
    for (ArcId a : ctx.road_path) flow[Index(a)] += x[i];
  }
  RebalancingFlow rebalancing;
  try {
    rebalancing = MinCostRebalancing(market.graph, view.road_arcs, view.arc_cost,
                                     ServiceImbalance(market.graph, flow));
  } catch (const Error&) {
    return -kInf;
  }
  const double budget = view.config.fleet_size;
  if (service_vehicles + rebalancing.vehicles > budget + 1e-9 * std::max(1.0, budget)) {
    return -kInf;
  }
  return (1.0 - tax) * revenue - service - rebalancing.cost;
}

struct Best {
  double profit = -kInf;
  std::int64_t index = -1;
  std::int64_t feasible = 0;
};

bool Better(double profit, std::int64_t index, const Best& best) {
  return profit > best.profit || (profit == best.profit && best.index >= 0 && index < best.index);
}

GridBestResponse Collect(const GridProblem& g, const Best& best) {
  GridBestResponse out;
  out.points = g.total;
  out.feasible_points = best.feasible;
  out.profit = best.profit;
  GridPoint(g, std::max<std::int64_t>(best.index, 0), &out.served);
  return out;
}

}  // namespace

BasicExampleEquilibrium SolveBasicExample(const BasicExampleParams& p) {
  if (!(p.t1 < p.t2 && p.t2 < p.t3)) {
    throw Error(ErrorCode::kAssumptionViolated, "requires t1 < t2 < t3");
  }
  if (!(p.c1 < p.v_t * (p.t2 - p.t1) / 2.0)) {
    throw Error(ErrorCode::kAssumptionViolated, "requires c1 < v_t (t2 - t1) / 2");
  }
  BasicExampleEquilibrium eq;
  eq.price_op1 = p.v_t * (p.t2 - p.t1);
  eq.price_op2 = 0.0;
  eq.profit_op1 = p.rate * (eq.price_op1 - 2.0 * p.c1);
  eq.profit_op2 = 0.0;
  eq.rates.op1 = p.rate;
  return eq;
}

GridBestResponse ReferenceGridBestResponse(const Market& market, int op,
                                           std::span<const ReactionPieces> reactions,
                                           int points_per_dim) {
  const GridProblem g = MakeGridProblem(market, op, reactions, points_per_dim);
  Best best;
  std::vector<double> x;
  for (std::int64_t k = 0; k < g.total; ++k) {
    GridPoint(g, k, &x);
    const double profit = GridProfit(g, x);
    if (profit == -kInf) continue;
    ++best.feasible;
    if (Better(profit, k, best)) best = {profit, k, best.feasible};
  }
  return Collect(g, best);
}

GridBestResponse ParallelGridBestResponse(const Market& market, int op,
                                          std::span<const ReactionPieces> reactions,
                                          int points_per_dim) {
  const GridProblem g = MakeGridProblem(market, op, reactions, points_per_dim);
  Best best;
#pragma omp parallel
  {
    Best local;
    std::vector<double> x;
#pragma omp for schedule(static)
    for (std::int64_t k = 0; k < g.total; ++k) {
      GridPoint(g, k, &x);
      const double profit = GridProfit(g, x);
      if (profit == -kInf) continue;
      ++local.feasible;
      if (Better(profit, k, local)) local = {profit, k, local.feasible};
    }
#pragma omp critical
    {
      best.feasible += local.feasible;
      if (local.index >= 0 &&
          (best.index < 0 || local.profit > best.profit ||
           (local.profit == best.profit && local.index < best.index))) {
        best.profit = local.profit;
        best.index = local.index;
      }
    }
  }
  return Collect(g, best);
}

EpsilonCertificate VerifyEpsilonEquilibrium(const Market& market, const EquilibriumResult& result,
                                            double epsilon, const BestResponseOptions& options) {
  EpsilonCertificate cert;
  std::vector<std::vector<double>> prices;
  for (const OperatorOutcome& o : result.operators) prices.push_back(o.prices);
  cert.improvement.assign(market.num_operators(), 0.0);
  for (int j = 0; j < market.num_operators(); ++j) {
    if (!(market.operators[j].config.fleet_size > 0.0)) continue;
    const auto reactions = ReactionsAt(market, j, prices);
    const ProfitEvaluation current = EvaluateProfit(market, j, reactions, prices[j]);
    const BestResponseSolution best = SolveBestResponse(market, j, reactions, options);
    cert.improvement[j] = RelativeImprovement(best.profit, current.profit);
    if (!(cert.improvement[j] <= epsilon)) cert.holds = false;
  }
  return cert;
}

}  // namespace modalgame
