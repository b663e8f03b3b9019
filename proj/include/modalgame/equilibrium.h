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

#ifndef MODALGAME_EQUILIBRIUM_H_
#define MODALGAME_EQUILIBRIUM_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "modalgame/best_response.h"
#include "modalgame/market.h"

namespace modalgame {

enum class IterationMode { kMonopoly, kSynchronous, kAsynchronous };

std::string_view IterationModeName(IterationMode mode);
std::optional<IterationMode> ParseIterationMode(std::string_view name);

struct IterationConfig {
  IterationMode mode = IterationMode::kSynchronous;
  double epsilon = 1e-4;
  int max_iterations = 100;
  std::uint64_t seed = 0;
  BestResponseOptions solver;
};

// Monopoly with one operator, synchronous otherwise.
IterationMode DefaultMode(const Market& market);

struct OperatorOutcome {
  std::vector<double> prices;  // per demand
  std::vector<double> served;  // per demand
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

// One stopping test. `op` is the tested operator, or -1 when all operators
// were tested together.
struct TraceEntry {
  int iteration = 0;
  int op = -1;
  std::vector<double> profits;       // current profit per operator
  std::vector<double> improvements;  // relative best-response gain per tested operator
};

struct EquilibriumResult {
  IterationMode mode = IterationMode::kMonopoly;
  std::vector<OperatorOutcome> operators;
  int iterations_used = 0;
  double epsilon = 0.0;
  double achieved_epsilon = 0.0;
  bool converged = false;
  std::uint64_t seed = 0;
  std::vector<TraceEntry> trace;
};

// Relative gain (best - current) / max(|current|, 1e-9).
double RelativeImprovement(double best, double current);

// Price vectors drawn per demand uniformly in the monopoly [p_min, p_max].
std::vector<double> RandomInitialPrices(const Market& market, int op, std::uint64_t seed);

// Outcome of every operator at a price profile. An operator without fleet is
// treated as absent, so the others face no competitor.
std::vector<OperatorOutcome> EvaluateProfile(const Market& market,
                                             const std::vector<std::vector<double>>& prices);

// Reactions of `op` given the full price profile (absent adversary handled).
std::vector<ReactionPieces> ReactionsAt(const Market& market, int op,
                                        const std::vector<std::vector<double>>& prices);

EquilibriumResult SolveMonopoly(const Market& market, const IterationConfig& config);
EquilibriumResult IterateSynchronous(const Market& market, const IterationConfig& config);
EquilibriumResult IterateAsynchronous(const Market& market, const IterationConfig& config);
// Dispatches on config.mode.
EquilibriumResult SolveEquilibrium(const Market& market, const IterationConfig& config);

struct MultiStartSummary {
  std::vector<EquilibriumResult> runs;
  std::vector<std::string> failures;  // per run; empty on success
  std::vector<double> profit_min;     // per operator, over successful runs
  std::vector<double> profit_max;
  std::vector<double> relative_dispersion;  // (max - min) / max(|max|, 1e-9)
};

MultiStartSummary MultiStart(const Market& market, const IterationConfig& config,
                             std::span<const std::uint64_t> seeds);

}  // namespace modalgame

#endif  // MODALGAME_EQUILIBRIUM_H_
