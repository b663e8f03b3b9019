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

#include "modalgame/equilibrium.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "modalgame/log.h"
#include "modalgame/monte_carlo.h"

namespace modalgame {
namespace {

constexpr double kProfitFloor = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

bool IsPresent(const Market& market, int op) {
  return market.operators[op].config.fleet_size > 0.0;
}

std::vector<double> MonopolyUpperPrices(const Market& market, int op) {
  const auto reactions = OperatorReactions(market, op, std::nullopt);
  std::vector<double> prices(reactions.size());
  for (int i = 0; i < static_cast<int>(reactions.size()); ++i) {
    prices[i] = ComputePriceBounds(reactions[i]).p_max;
  }
  return prices;
}

// Initial profile: random prices for present operators, p_max for absent ones.
std::vector<std::vector<double>> InitialProfile(const Market& market, std::uint64_t seed) {
  std::vector<std::vector<double>> prices(market.num_operators());
  for (int j = 0; j < market.num_operators(); ++j) {
    prices[j] = IsPresent(market, j) ? RandomInitialPrices(market, j, seed)
                                     : MonopolyUpperPrices(market, j);
  }
  return prices;
}

struct Step {
  BestResponseSolution response;
  double current_profit = 0.0;
  double improvement = 0.0;
};

Step RespondTo(const Market& market, int op, const std::vector<std::vector<double>>& prices,
               const IterationConfig& config, int iteration) {
  Step step;
  if (!IsPresent(market, op)) {
    step.response.prices = prices[op];
    return step;
  }
  const auto reactions = ReactionsAt(market, op, prices);
  const ProfitEvaluation current = EvaluateProfit(market, op, reactions, prices[op]);
  try {
    step.response = SolveBestResponse(market, op, reactions, config.solver);
  } catch (const SolverFailure& e) {
    throw SolverFailure(std::string(e.what()) + " (iteration " + std::to_string(iteration) + ")",
                        e.last_iterate());
  }
  step.current_profit = current.profit;
  step.improvement = RelativeImprovement(step.response.profit, current.profit);
  return step;
}

std::vector<double> Profits(const Market& market,
                            const std::vector<std::vector<double>>& prices) {
  std::vector<double> profits;
  for (const OperatorOutcome& o : EvaluateProfile(market, prices)) profits.push_back(o.profit);
  return profits;
}

void Finish(const Market& market, const std::vector<std::vector<double>>& prices,
            EquilibriumResult* result) {
  result->operators = EvaluateProfile(market, prices);
}

void RequireDuopoly(const Market& market) {
  if (market.num_operators() != 2) {
    throw Error(ErrorCode::kInvalidArgument, "best-response iteration needs two operators");
  }
}

}  // namespace

std::string_view IterationModeName(IterationMode mode) {
  switch (mode) {
    case IterationMode::kMonopoly:
      return "monopoly";
    case IterationMode::kSynchronous:
      return "synchronous";
    case IterationMode::kAsynchronous:
      return "asynchronous";
  }
  return "unknown";
}

std::optional<IterationMode> ParseIterationMode(std::string_view name) {
  for (IterationMode mode :
       {IterationMode::kMonopoly, IterationMode::kSynchronous, IterationMode::kAsynchronous}) {
    if (IterationModeName(mode) == name) return mode;
  }
  return std::nullopt;
}

IterationMode DefaultMode(const Market& market) {
  return market.num_operators() == 2 ? IterationMode::kSynchronous : IterationMode::kMonopoly;
}

double RelativeImprovement(double best, double current) {
  return (best - current) / std::max(std::abs(current), kProfitFloor);
}

std::vector<double> RandomInitialPrices(const Market& market, int op, std::uint64_t seed) {
  const auto reactions = OperatorReactions(market, op, std::nullopt);
  std::vector<double> prices(reactions.size());
  for (int i = 0; i < static_cast<int>(reactions.size()); ++i) {
    const PriceBounds bounds = ComputePriceBounds(reactions[i]);
    const double u = UniformDraw(seed, 2 * static_cast<std::uint64_t>(i) + op);
    prices[i] = bounds.p_min + u * (bounds.p_max - bounds.p_min);
  }
  return prices;
}

std::vector<ReactionPieces> ReactionsAt(const Market& market, int op,
                                        const std::vector<std::vector<double>>& prices) {
  const int other = 1 - op;
  if (market.num_operators() == 2 && IsPresent(market, other)) {
    return OperatorReactions(market, op, std::span<const double>(prices[other]));
  }
  return OperatorReactions(market, op, std::nullopt);
}

std::vector<OperatorOutcome> EvaluateProfile(const Market& market,
                                             const std::vector<std::vector<double>>& prices) {
  std::vector<OperatorOutcome> outcomes(market.num_operators());
  for (int j = 0; j < market.num_operators(); ++j) {
    const auto reactions = ReactionsAt(market, j, prices);
    const ProfitEvaluation eval = EvaluateProfit(market, j, reactions, prices[j]);
    OperatorOutcome& o = outcomes[j];
    o.prices = prices[j];
    o.served = eval.served;
    o.rebalancing = eval.rebalancing;
    o.revenue = eval.revenue;
    o.service_cost = eval.service_cost;
    o.rebalancing_cost = eval.rebalancing_cost;
    o.tax_paid = eval.tax_paid;
    o.profit = eval.profit;
    o.vehicles = eval.vehicles;
    o.balance_residual = eval.balance_residual;
    o.feasible = eval.feasible;
  }
  return outcomes;
}

EquilibriumResult SolveMonopoly(const Market& market, const IterationConfig& config) {
  if (market.num_operators() != 1) {
    throw Error(ErrorCode::kInvalidArgument, "monopoly mode needs exactly one operator");
  }
  EquilibriumResult result;
  result.mode = IterationMode::kMonopoly;
  result.epsilon = config.epsilon;
  result.seed = config.seed;
  BestResponseOptions options = config.solver;
  options.start_seed = config.seed;
  const auto reactions = OperatorReactions(market, 0, std::nullopt);
  const BestResponseSolution sol = SolveBestResponse(market, 0, reactions, options);
  const std::vector<std::vector<double>> prices = {sol.prices};
  Finish(market, prices, &result);
  result.iterations_used = 1;
  result.converged = true;
  result.achieved_epsilon =
      std::max(0.0, RelativeImprovement(sol.profit, result.operators[0].profit));
  result.trace.push_back({1, 0, {result.operators[0].profit}, {result.achieved_epsilon}});
  return result;
}

EquilibriumResult IterateSynchronous(const Market& market, const IterationConfig& config) {
  RequireDuopoly(market);
  EquilibriumResult result;
  result.mode = IterationMode::kSynchronous;
  result.epsilon = config.epsilon;
  result.seed = config.seed;
  std::vector<std::vector<double>> prices = InitialProfile(market, config.seed);
  for (int n = 1; n <= config.max_iterations; ++n) {
    const Step s1 = RespondTo(market, 0, prices, config, n);
    const Step s2 = RespondTo(market, 1, prices, config, n);
    result.iterations_used = n;
    result.achieved_epsilon = std::max(s1.improvement, s2.improvement);
    result.trace.push_back(
        {n, -1, {s1.current_profit, s2.current_profit}, {s1.improvement, s2.improvement}});
    MG_LOG_DEBUG("synchronous iteration " + std::to_string(n) + ": gains " +
                 std::to_string(s1.improvement) + ", " + std::to_string(s2.improvement));
    if (result.achieved_epsilon <= config.epsilon) {
      result.converged = true;
      break;
    }
    prices[0] = s1.response.prices;
    prices[1] = s2.response.prices;
  }
  Finish(market, prices, &result);
  return result;
}

EquilibriumResult IterateAsynchronous(const Market& market, const IterationConfig& config) {
  RequireDuopoly(market);
  EquilibriumResult result;
  result.mode = IterationMode::kAsynchronous;
  result.epsilon = config.epsilon;
  result.seed = config.seed;
  std::vector<std::vector<double>> prices = InitialProfile(market, config.seed);
  for (int n = 1; n <= config.max_iterations && !result.converged; ++n) {
    result.iterations_used = n;
    for (int op = 0; op < 2; ++op) {
      const Step s = RespondTo(market, op, prices, config, n);
      result.achieved_epsilon = std::max(s.improvement, 0.0);
      result.trace.push_back({n, op, Profits(market, prices), {s.improvement}});
      // The untested operator must already hold an exact response.
      if (s.improvement <= config.epsilon && (n > 1 || op == 1)) {
        result.converged = true;
        break;
      }
      prices[op] = s.response.prices;
    }
  }
  Finish(market, prices, &result);
  return result;
}

EquilibriumResult SolveEquilibrium(const Market& market, const IterationConfig& config) {
  switch (config.mode) {
    case IterationMode::kMonopoly:
      return SolveMonopoly(market, config);
    case IterationMode::kSynchronous:
      return IterateSynchronous(market, config);
    case IterationMode::kAsynchronous:
      return IterateAsynchronous(market, config);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown iteration mode");
}

MultiStartSummary MultiStart(const Market& market, const IterationConfig& config,
                             std::span<const std::uint64_t> seeds) {
  if (seeds.empty()) throw Error(ErrorCode::kInvalidArgument, "multi-start needs a seed");
  MultiStartSummary summary;
  const int m = market.num_operators();
  summary.profit_min.assign(m, kInf);
  summary.profit_max.assign(m, -kInf);
  for (std::uint64_t seed : seeds) {
    IterationConfig run = config;
    run.seed = seed;
    try {
      summary.runs.push_back(SolveEquilibrium(market, run));
      summary.failures.emplace_back();
    } catch (const Error& e) {
      summary.runs.emplace_back();
      summary.failures.emplace_back(e.what());
      continue;
    }
    for (int j = 0; j < m; ++j) {
      const double profit = summary.runs.back().operators[j].profit;
      summary.profit_min[j] = std::min(summary.profit_min[j], profit);
      summary.profit_max[j] = std::max(summary.profit_max[j], profit);
    }
  }
  summary.relative_dispersion.resize(m);
  for (int j = 0; j < m; ++j) {
    summary.relative_dispersion[j] =
        summary.profit_max[j] >= summary.profit_min[j]
            ? (summary.profit_max[j] - summary.profit_min[j]) /
                  std::max(std::abs(summary.profit_max[j]), kProfitFloor)
            : 0.0;
  }
  return summary;
}

}  // namespace modalgame
