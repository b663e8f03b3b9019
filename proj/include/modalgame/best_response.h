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

#ifndef MODALGAME_BEST_RESPONSE_H_
#define MODALGAME_BEST_RESPONSE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "modalgame/error.h"
#include "modalgame/interior_point.h"
#include "modalgame/market.h"
#include "modalgame/reaction.h"

namespace modalgame {

// Nonnegative price per ordered pair of the road layer's fully-connected
// closure. Pairs are sorted.
class PricingStrategy {
 public:
  PricingStrategy() = default;
  explicit PricingStrategy(std::vector<std::pair<VertexId, VertexId>> pairs);

  std::span<const std::pair<VertexId, VertexId>> pairs() const { return pairs_; }
  std::span<const double> prices() const { return prices_; }
  bool Contains(VertexId origin, VertexId destination) const;
  // Throws kInvalidArgument for pairs outside the closure.
  double price(VertexId origin, VertexId destination) const;
  void set_price(VertexId origin, VertexId destination, double price);

 private:
  int Find(VertexId origin, VertexId destination) const;

  std::vector<std::pair<VertexId, VertexId>> pairs_;
  std::vector<double> prices_;
};

// Per-demand prices placed on the closure; pairs without demand get 0.
PricingStrategy MakePricingStrategy(const Market& market, std::span<const double> demand_prices);

// Reaction pieces of operator `op` for every demand. Without adversary prices
// only the base piece is used.
std::vector<ReactionPieces> OperatorReactions(
    const Market& market, int op, std::optional<std::span<const double>> adversary_prices);

struct BestResponseOptions {
  // Accepted KKT residual.
  double tolerance = 1e-7;
  // Solver target; the solver stops here when it can.
  double target_tolerance = 1e-9;
  int max_iterations = 200;
  // Randomized interior starting point for multi-start runs.
  std::optional<std::uint64_t> start_seed;
};

// Variable layout: x (active demands), r (active demands), f0 (road arcs).
struct BestResponseProgram {
  ConvexProgram program;
  std::vector<int> active;       // demand index of each x column
  std::vector<ArcId> road_arcs;  // arc of each f0 column
  int x_offset() const { return 0; }
  int r_offset() const { return static_cast<int>(active.size()); }
  int f0_offset() const { return 2 * static_cast<int>(active.size()); }
};

// Demands with no positive demand at price zero are left out (served 0).
// Throws kAssumptionViolated if some piece has a nonnegative slope.
BestResponseProgram BuildBestResponseProgram(const Market& market, int op,
                                             std::span<const ReactionPieces> reactions);

struct BestResponseSolution {
  std::vector<double> served;       // per demand
  std::vector<double> prices;       // per demand
  std::vector<double> rebalancing;  // per graph arc
  double revenue = 0.0;
  double service_cost = 0.0;
  double rebalancing_cost = 0.0;
  double tax_paid = 0.0;
  double profit = 0.0;
  double vehicles = 0.0;
  double balance_residual = 0.0;  // max vertex imbalance of service + rebalancing
  double kkt_residual = 0.0;
  int iterations = 0;
};

class SolverFailure : public Error {
 public:
  SolverFailure(const std::string& message, BestResponseSolution last_iterate)
      : Error(ErrorCode::kSolverFailure, message), last_iterate_(std::move(last_iterate)) {}
  const BestResponseSolution& last_iterate() const { return last_iterate_; }

 private:
  BestResponseSolution last_iterate_;
};

// Price per demand recovered from served rates: the inverse reaction, with
// p_max at zero service, clipped at zero.
std::vector<double> RecoverPrices(std::span<const ReactionPieces> reactions,
                                  std::span<const double> served);

// Throws SolverFailure when the residual target is missed.
BestResponseSolution SolveBestResponse(const Market& market, int op,
                                       std::span<const ReactionPieces> reactions,
                                       const BestResponseOptions& options = {});

// Profit of operator `op` posting `prices` when its customers react through
// `reactions`. Rebalancing is the cheapest completion within the fleet.
// `feasible` is false when no completion fits; the operator then serves the
// most profitable part of the reacting demand that the fleet can carry.
struct ProfitEvaluation {
  std::vector<double> served;
  std::vector<double> rebalancing;
  double revenue = 0.0;
  double service_cost = 0.0;
  double rebalancing_cost = 0.0;
  double tax_paid = 0.0;
  double profit = 0.0;
  double vehicles = 0.0;
  double balance_residual = 0.0;
  bool feasible = true;
};
ProfitEvaluation EvaluateProfit(const Market& market, int op,
                                std::span<const ReactionPieces> reactions,
                                std::span<const double> prices);

}  // namespace modalgame

#endif  // MODALGAME_BEST_RESPONSE_H_
