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

#include "modalgame/best_response.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "modalgame/monte_carlo.h"
#include "modalgame/rebalancing.h"

namespace modalgame {
namespace {

std::vector<double> ServiceArcFlow(const Market& market, int op,
                                   std::span<const double> served) {
  std::vector<double> flow(market.graph.num_arcs(), 0.0);
  const auto& contexts = market.operators[op].contexts;
  for (int i = 0; i < static_cast<int>(contexts.size()); ++i) {
    if (served[i] == 0.0) continue;
    for (ArcId a : contexts[i].road_path) flow[Index(a)] += served[i];
  }
  return flow;
}

double ServiceVehicles(const Market& market, int op, std::span<const double> served) {
  double vehicles = 0.0;
  const auto& contexts = market.operators[op].contexts;
  for (int i = 0; i < static_cast<int>(contexts.size()); ++i) {
    vehicles += kSecondsPerHour * contexts[i].t_road_h * served[i];
  }
  return vehicles;
}

double BalanceResidual(const Market& market, std::span<const double> service_flow,
                       std::span<const double> rebalancing) {
  std::vector<double> total(service_flow.begin(), service_flow.end());
  for (int a = 0; a < static_cast<int>(total.size()); ++a) total[a] += rebalancing[a];
  double worst = 0.0;
  for (double v : ServiceImbalance(market.graph, total)) worst = std::max(worst, std::abs(v));
  return worst;
}

}  // namespace

PricingStrategy::PricingStrategy(std::vector<std::pair<VertexId, VertexId>> pairs)
    : pairs_(std::move(pairs)) {
  std::sort(pairs_.begin(), pairs_.end());
  pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
  prices_.assign(pairs_.size(), 0.0);
}

int PricingStrategy::Find(VertexId origin, VertexId destination) const {
  const auto key = std::make_pair(origin, destination);
  const auto it = std::lower_bound(pairs_.begin(), pairs_.end(), key);
  if (it == pairs_.end() || *it != key) return -1;
  return static_cast<int>(it - pairs_.begin());
}

bool PricingStrategy::Contains(VertexId origin, VertexId destination) const {
  return Find(origin, destination) >= 0;
}

double PricingStrategy::price(VertexId origin, VertexId destination) const {
  const int k = Find(origin, destination);
  if (k < 0) throw Error(ErrorCode::kInvalidArgument, "pair outside the pricing domain");
  return prices_[k];
}

void PricingStrategy::set_price(VertexId origin, VertexId destination, double price) {
  const int k = Find(origin, destination);
  if (k < 0) throw Error(ErrorCode::kInvalidArgument, "pair outside the pricing domain");
  if (!(price >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "prices must be nonnegative");
  prices_[k] = price;
}

PricingStrategy MakePricingStrategy(const Market& market, std::span<const double> demand_prices) {
  PricingStrategy strategy(FullyConnectedPairs(market.graph, Mode::kRoad));
  for (int i = 0; i < market.num_demands(); ++i) {
    const Demand& d = market.demands[i];
    strategy.set_price(d.origin, d.destination, std::max(demand_prices[i], 0.0));
  }
  return strategy;
}

std::vector<ReactionPieces> OperatorReactions(
    const Market& market, int op, std::optional<std::span<const double>> adversary_prices) {
  const OperatorView& view = market.operators[op];
  std::vector<ReactionPieces> reactions;
  reactions.reserve(view.contexts.size());
  for (int i = 0; i < static_cast<int>(view.contexts.size()); ++i) {
    const DemandContext& ctx = view.contexts[i];
    std::optional<double> adversary;
    if (adversary_prices) adversary = (*adversary_prices)[i];
    reactions.push_back(MakeReactionPieces(ComputeBaseConstants(ctx, market.config.vot),
                                           ctx.demand.rate_per_s, market.config.noise,
                                           adversary));
  }
  return reactions;
}

BestResponseProgram BuildBestResponseProgram(const Market& market, int op,
                                             std::span<const ReactionPieces> reactions) {
  const OperatorView& view = market.operators[op];
  const double tax = market.config.service_tax;
  BestResponseProgram bp;
  for (int i = 0; i < static_cast<int>(reactions.size()); ++i) {
    for (const AffinePiece& piece : reactions[i].pieces) {
      if (!(piece.slope < 0.0)) {
        throw Error(ErrorCode::kAssumptionViolated,
                    "reaction piece with nonnegative slope makes the program nonconvex");
      }
    }
    if (ReactionCurve(reactions[i], 0.0) > 0.0) bp.active.push_back(i);
  }
  bp.road_arcs = view.road_arcs;
  const int na = static_cast<int>(bp.active.size());
  const int nf = static_cast<int>(bp.road_arcs.size());
  const int n = 2 * na + nf;
  ConvexProgram& p = bp.program;
  p.num_vars = n;
  p.cost = Eigen::VectorXd::Zero(n);

  // Bounds: -x <= 0, x <= rate, -r <= 0, -f0 <= 0, then the fleet row.
  const int num_rows = 3 * na + nf + 1;
  p.ineq_matrix = Eigen::MatrixXd::Zero(num_rows, n);
  p.ineq_rhs = Eigen::VectorXd::Zero(num_rows);
  const int fleet_row = num_rows - 1;
  for (int k = 0; k < na; ++k) {
    const int i = bp.active[k];
    const DemandContext& ctx = view.contexts[i];
    const int x = bp.x_offset() + k;
    const int r = bp.r_offset() + k;
    p.cost(x) = ctx.service_cost_usd;
    p.cost(r) = -(1.0 - tax);
    p.ineq_matrix(3 * k, x) = -1.0;
    p.ineq_matrix(3 * k + 1, x) = 1.0;
    p.ineq_rhs(3 * k + 1) = reactions[i].rate;
    p.ineq_matrix(3 * k + 2, r) = -1.0;
    p.ineq_matrix(fleet_row, x) = kSecondsPerHour * ctx.t_road_h;
    // r <= x (x - q) / m for every piece, with m < 0.
    for (const AffinePiece& piece : reactions[i].pieces) {
      const double inv = 1.0 / -piece.slope;
      QuadraticInequality q;
      q.var = x;
      q.coef = inv;
      q.linear = {{r, 1.0}, {x, -piece.intercept * inv}};
      p.quadratic.push_back(std::move(q));
    }
  }
  for (int k = 0; k < nf; ++k) {
    const int f = bp.f0_offset() + k;
    const ArcId a = bp.road_arcs[k];
    p.cost(f) = view.arc_cost[Index(a)];
    p.ineq_matrix(3 * na + k, f) = -1.0;
    p.ineq_matrix(fleet_row, f) = kSecondsPerHour * market.graph.arc(a).travel_time_h;
  }
  p.ineq_rhs(fleet_row) = view.config.fleet_size;

  // Balance of service plus rebalancing flow on the operator's arcs.
  const BalanceRows rows = BuildBalanceRows(market.graph, bp.road_arcs);
  const int nr = static_cast<int>(rows.vertices.size());
  std::vector<int> column_of(market.graph.num_arcs(), -1);
  for (int k = 0; k < nf; ++k) column_of[Index(bp.road_arcs[k])] = k;
  std::vector<int> row_of(market.graph.num_vertices(), -1);
  for (int r = 0; r < nr; ++r) row_of[Index(rows.vertices[r])] = r;
  p.eq_matrix = Eigen::MatrixXd::Zero(nr, n);
  p.eq_rhs = Eigen::VectorXd::Zero(nr);
  p.eq_matrix.middleCols(bp.f0_offset(), nf) = rows.matrix;
  for (int k = 0; k < na; ++k) {
    for (ArcId a : view.contexts[bp.active[k]].road_path) {
      const Arc& arc = market.graph.arc(a);
      if (row_of[Index(arc.source)] >= 0) p.eq_matrix(row_of[Index(arc.source)], k) -= 1.0;
      if (row_of[Index(arc.target)] >= 0) p.eq_matrix(row_of[Index(arc.target)], k) += 1.0;
    }
  }
  return bp;
}

std::vector<double> RecoverPrices(std::span<const ReactionPieces> reactions,
                                  std::span<const double> served) {
  std::vector<double> prices(reactions.size());
  for (int i = 0; i < static_cast<int>(reactions.size()); ++i) {
    const double x = std::clamp(served[i], 0.0, reactions[i].rate);
    prices[i] = x == 0.0 ? ComputePriceBounds(reactions[i]).p_max
                         : std::max(InvertReaction(reactions[i], x), 0.0);
  }
  return prices;
}

BestResponseSolution SolveBestResponse(const Market& market, int op,
                                       std::span<const ReactionPieces> reactions,
                                       const BestResponseOptions& options) {
  const OperatorView& view = market.operators[op];
  const int num_demands = static_cast<int>(reactions.size());
  const double tax = market.config.service_tax;
  BestResponseSolution sol;
  sol.served.assign(num_demands, 0.0);
  sol.rebalancing.assign(market.graph.num_arcs(), 0.0);

  bool converged = true;
  if (view.config.fleet_size > 0.0) {
    const BestResponseProgram bp = BuildBestResponseProgram(market, op, reactions);
    InteriorPointOptions ipm;
    ipm.tolerance = options.target_tolerance;
    ipm.max_iterations = options.max_iterations;
    if (options.start_seed) {
      Eigen::VectorXd start = Eigen::VectorXd::Zero(bp.program.num_vars);
      for (int k = 0; k < static_cast<int>(bp.active.size()); ++k) {
        start(bp.x_offset() + k) =
            reactions[bp.active[k]].rate * UniformDraw(*options.start_seed, k);
      }
      ipm.initial = start;
    }
    const InteriorPointResult result = SolveInteriorPoint(bp.program, ipm);
    sol.kkt_residual = result.kkt_residual;
    sol.iterations = result.iterations;
    converged = result.converged || result.kkt_residual <= options.tolerance;
    for (int k = 0; k < static_cast<int>(bp.active.size()); ++k) {
      const int i = bp.active[k];
      sol.served[i] = std::clamp(result.z(bp.x_offset() + k), 0.0, reactions[i].rate);
    }
    for (int k = 0; k < static_cast<int>(bp.road_arcs.size()); ++k) {
      sol.rebalancing[Index(bp.road_arcs[k])] = std::max(result.z(bp.f0_offset() + k), 0.0);
    }
  }

  sol.prices = RecoverPrices(reactions, sol.served);
  for (int i = 0; i < num_demands; ++i) {
    sol.revenue += sol.served[i] * sol.prices[i];
    sol.service_cost += sol.served[i] * view.contexts[i].service_cost_usd;
  }
  sol.vehicles = ServiceVehicles(market, op, sol.served);
  for (ArcId a : view.road_arcs) {
    const double f = sol.rebalancing[Index(a)];
    sol.rebalancing_cost += view.arc_cost[Index(a)] * f;
    sol.vehicles += kSecondsPerHour * market.graph.arc(a).travel_time_h * f;
  }
  sol.tax_paid = tax * sol.revenue;
  sol.profit = (1.0 - tax) * sol.revenue - sol.service_cost - sol.rebalancing_cost;
  sol.balance_residual =
      BalanceResidual(market, ServiceArcFlow(market, op, sol.served), sol.rebalancing);
  if (!converged) {
    throw SolverFailure("best response for operator " + std::to_string(op + 1) +
                            " stopped at KKT residual " + std::to_string(sol.kkt_residual),
                        sol);
  }
  return sol;
}

namespace {

// Profit-maximizing service within the fleet when the reactions to `prices`
// do not fit: served rates are capped by the reactions and the operator turns
// the rest away.
void RationService(const Market& market, int op, std::span<const ReactionPieces> reactions,
                   std::span<const double> prices, ProfitEvaluation* eval) {
  const OperatorView& view = market.operators[op];
  const double tax = market.config.service_tax;
  std::vector<int> offered;
  for (int i = 0; i < static_cast<int>(reactions.size()); ++i) {
    if (eval->served[i] > 0.0) offered.push_back(i);
  }
  const std::vector<ArcId>& arcs = view.road_arcs;
  const int nx = static_cast<int>(offered.size());
  const int nf = static_cast<int>(arcs.size());
  const int n = nx + nf;
  ConvexProgram lp;
  lp.num_vars = n;
  lp.cost = Eigen::VectorXd::Zero(n);
  const int num_rows = 2 * nx + nf + 1;
  lp.ineq_matrix = Eigen::MatrixXd::Zero(num_rows, n);
  lp.ineq_rhs = Eigen::VectorXd::Zero(num_rows);
  const int fleet_row = num_rows - 1;
  for (int k = 0; k < nx; ++k) {
    const int i = offered[k];
    lp.cost(k) = view.contexts[i].service_cost_usd - (1.0 - tax) * prices[i];
    lp.ineq_matrix(2 * k, k) = -1.0;
    lp.ineq_matrix(2 * k + 1, k) = 1.0;
    lp.ineq_rhs(2 * k + 1) = eval->served[i];
    lp.ineq_matrix(fleet_row, k) = kSecondsPerHour * view.contexts[i].t_road_h;
  }
  for (int k = 0; k < nf; ++k) {
    lp.cost(nx + k) = view.arc_cost[Index(arcs[k])];
    lp.ineq_matrix(2 * nx + k, nx + k) = -1.0;
    lp.ineq_matrix(fleet_row, nx + k) = kSecondsPerHour * market.graph.arc(arcs[k]).travel_time_h;
  }
  lp.ineq_rhs(fleet_row) = view.config.fleet_size;
  const BalanceRows rows = BuildBalanceRows(market.graph, arcs);
  const int nr = static_cast<int>(rows.vertices.size());
  std::vector<int> row_of(market.graph.num_vertices(), -1);
  for (int r = 0; r < nr; ++r) row_of[Index(rows.vertices[r])] = r;
  lp.eq_matrix = Eigen::MatrixXd::Zero(nr, n);
  lp.eq_rhs = Eigen::VectorXd::Zero(nr);
  lp.eq_matrix.rightCols(nf) = rows.matrix;
  for (int k = 0; k < nx; ++k) {
    for (ArcId a : view.contexts[offered[k]].road_path) {
      const Arc& arc = market.graph.arc(a);
      if (row_of[Index(arc.source)] >= 0) lp.eq_matrix(row_of[Index(arc.source)], k) -= 1.0;
      if (row_of[Index(arc.target)] >= 0) lp.eq_matrix(row_of[Index(arc.target)], k) += 1.0;
    }
  }
  const InteriorPointResult result = SolveInteriorPoint(lp);
  if (!result.converged && !(result.kkt_residual <= 1e-7)) {
    throw Error(ErrorCode::kSolverFailure,
                "rationing program stopped at KKT residual " + std::to_string(result.kkt_residual));
  }
  std::vector<double> served(reactions.size(), 0.0);
  for (int k = 0; k < nx; ++k) {
    served[offered[k]] = std::clamp(result.z(k), 0.0, eval->served[offered[k]]);
  }
  eval->served = served;
  eval->rebalancing.assign(market.graph.num_arcs(), 0.0);
  for (int k = 0; k < nf; ++k) {
    eval->rebalancing[Index(arcs[k])] = std::max(result.z(nx + k), 0.0);
  }
}

}  // namespace

ProfitEvaluation EvaluateProfit(const Market& market, int op,
                                std::span<const ReactionPieces> reactions,
                                std::span<const double> prices) {
  const OperatorView& view = market.operators[op];
  const double tax = market.config.service_tax;
  ProfitEvaluation eval;
  const int num_demands = static_cast<int>(reactions.size());
  eval.served.resize(num_demands);
  for (int i = 0; i < num_demands; ++i) {
    eval.served[i] = EvaluateReaction(reactions[i], prices[i]);
  }
  const std::vector<double> service_flow = ServiceArcFlow(market, op, eval.served);
  RebalancingFlow flow;
  try {
    eval.feasible = FleetConstrainedRebalancing(
        market.graph, view.road_arcs, view.arc_cost,
        ServiceImbalance(market.graph, service_flow),
        view.config.fleet_size - ServiceVehicles(market, op, eval.served), &flow);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kUnreachable) throw;
    eval.feasible = false;
  }
  if (eval.feasible) {
    eval.rebalancing = flow.arc_flow;
  } else {
    RationService(market, op, reactions, prices, &eval);
  }
  eval.vehicles = ServiceVehicles(market, op, eval.served);
  for (int i = 0; i < num_demands; ++i) {
    eval.revenue += eval.served[i] * prices[i];
    eval.service_cost += eval.served[i] * view.contexts[i].service_cost_usd;
  }
  for (ArcId a : view.road_arcs) {
    const double f = eval.rebalancing[Index(a)];
    eval.rebalancing_cost += view.arc_cost[Index(a)] * f;
    eval.vehicles += kSecondsPerHour * market.graph.arc(a).travel_time_h * f;
  }
  eval.balance_residual =
      BalanceResidual(market, ServiceArcFlow(market, op, eval.served), eval.rebalancing);
  eval.tax_paid = tax * eval.revenue;
  eval.profit = (1.0 - tax) * eval.revenue - eval.service_cost - eval.rebalancing_cost;
  return eval;
}

}  // namespace modalgame
