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

#include "modalgame/homogeneous.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "modalgame/error.h"

namespace modalgame {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Margin that lets an operator strictly undercut when it would lose a tie.
double TieMargin(double level) { return 1e-9 * std::max(1.0, std::abs(level)); }

}  // namespace

double HomogeneousUnitCost(const Market& market, int op, int demand) {
  const OperatorView& view = market.operators[op];
  const DemandContext& ctx = view.contexts[demand];
  try {
    const WeightedPath back = ShortestPath(market.graph, view.arc_cost,
                                           ctx.demand.destination, ctx.demand.origin);
    return ctx.service_cost_usd + back.total_weight;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kUnreachable) throw;
    return kInf;
  }
}

HomogeneousOutcome EvaluateHomogeneous(const Market& market,
                                       const std::vector<std::vector<double>>& prices,
                                       double v_t) {
  const int m = market.num_operators();
  const double tax = market.config.service_tax;
  HomogeneousOutcome out;
  out.prices = prices;
  out.profits.assign(m, 0.0);
  for (int i = 0; i < market.num_demands(); ++i) {
    std::vector<OperatorOffer> offers;
    for (int j = 0; j < m; ++j) {
      // An absent operator is priced out of reach.
      const double price =
          market.operators[j].config.fleet_size > 0.0 ? prices[j][i] : kInf;
      offers.push_back({price, market.operators[j].contexts[i].t_road_h});
    }
    const DemandContext& ctx = market.operators[0].contexts[i];
    const ModeRates rates = HomogeneousReaction(ctx.demand.rate_per_s, offers,
                                                ctx.fare_transit_usd, ctx.t_transit_h, v_t);
    out.rates.push_back(rates);
    const double served[2] = {rates.op1, rates.op2};
    for (int j = 0; j < m; ++j) {
      if (served[j] > 0.0) {
        out.profits[j] += served[j] * ((1.0 - tax) * prices[j][i] -
                                       HomogeneousUnitCost(market, j, i));
      }
    }
  }
  return out;
}

HomogeneousOutcome SolveHomogeneousGame(const Market& market, double v_t) {
  if (!(v_t > 0.0)) throw Error(ErrorCode::kInvalidArgument, "value of time must be positive");
  const int m = market.num_operators();
  const double tax = market.config.service_tax;
  std::vector<std::vector<double>> prices(m, std::vector<double>(market.num_demands(), 0.0));
  for (int i = 0; i < market.num_demands(); ++i) {
    const DemandContext& base = market.operators[0].contexts[i];
    const double transit_cost = base.fare_transit_usd + v_t * base.t_transit_h;
    std::vector<int> order;
    for (int j = 0; j < m; ++j) {
      if (market.operators[j].config.fleet_size > 0.0) order.push_back(j);
    }
    auto time_cost = [&](int j) { return v_t * market.operators[j].contexts[i].t_road_h; };
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return time_cost(a) < time_cost(b); });
    auto profitable = [&](int j, double price) {
      return price >= 0.0 && (1.0 - tax) * price - HomogeneousUnitCost(market, j, i) > 0.0;
    };
    auto price_out = [&](int j) {
      prices[j][i] = std::max(0.0, transit_cost - time_cost(j)) + 1.0;
    };
    for (int j = 0; j < m; ++j) price_out(j);
    if (order.empty()) continue;

    const int winner = order[0];
    double bound = transit_cost;
    double price = transit_cost - time_cost(winner);
    if (order.size() > 1) {
      const int loser = order[1];
      const double threat = time_cost(loser);  // loser posting zero
      if (threat <= transit_cost) {
        bound = threat;
        price = bound - time_cost(winner);
        if (winner > loser) price -= TieMargin(bound);
      }
    }
    if (profitable(winner, price)) {
      prices[winner][i] = price;
      if (order.size() > 1) prices[order[1]][i] = 0.0;
      continue;
    }
    // The faster operator stays out; the other competes with transit alone.
    if (order.size() > 1) {
      const int other = order[1];
      const double other_price = transit_cost - time_cost(other);
      if (profitable(other, other_price)) prices[other][i] = other_price;
    }
  }
  return EvaluateHomogeneous(market, prices, v_t);
}

}  // namespace modalgame
