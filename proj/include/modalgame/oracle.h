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

#ifndef MODALGAME_ORACLE_H_
#define MODALGAME_ORACLE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "modalgame/best_response.h"
#include "modalgame/equilibrium.h"
#include "modalgame/market.h"
#include "modalgame/reaction.h"

namespace modalgame {

// Two vertices, one demand, two operators and a walking alternative, with
// homogeneous customers. Times in hours, per-arc costs in USD.
struct BasicExampleParams {
  double t1 = 0.2;
  double t2 = 0.3;
  double t3 = 1.0;
  double c1 = 0.5;
  double c2 = 0.5;
  double v_t = 12.0;
  double rate = 5.0;
};

struct BasicExampleEquilibrium {
  double price_op1 = 0.0;
  double price_op2 = 0.0;
  double profit_op1 = 0.0;
  double profit_op2 = 0.0;
  ModeRates rates;
};

// Closed form. Throws kAssumptionViolated unless t1 < t2 < t3 and
// c1 < v_t (t2 - t1) / 2.
BasicExampleEquilibrium SolveBasicExample(const BasicExampleParams& params);

struct GridBestResponse {
  std::vector<double> served;  // per demand
  double profit = 0.0;
  std::int64_t points = 0;
  std::int64_t feasible_points = 0;
};

inline constexpr int kMaxGridDemands = 3;
inline constexpr int kMaxGridVertices = 6;

// Exhaustive search over served rates on a uniform grid per demand. Revenue
// comes from the inverse reaction, rebalancing from exact min-cost flow; grid
// points with negative prices or over the fleet are skipped. Ties go to the
// smallest grid index. Throws kTooLarge beyond 3 demands or 6 vertices.
GridBestResponse ReferenceGridBestResponse(const Market& market, int op,
                                           std::span<const ReactionPieces> reactions,
                                           int points_per_dim = 101);
// OpenMP version of the search above; identical results.
GridBestResponse ParallelGridBestResponse(const Market& market, int op,
                                          std::span<const ReactionPieces> reactions,
                                          int points_per_dim = 101);

struct EpsilonCertificate {
  bool holds = true;
  std::vector<double> improvement;  // per operator; 0 for absent operators
};

// Re-solves every operator's best response against the others' final prices
// and checks the relative gain against `epsilon`.
EpsilonCertificate VerifyEpsilonEquilibrium(const Market& market, const EquilibriumResult& result,
                                            double epsilon,
                                            const BestResponseOptions& options = {});

}  // namespace modalgame

#endif  // MODALGAME_ORACLE_H_
