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

#ifndef MODALGAME_HOMOGENEOUS_H_
#define MODALGAME_HOMOGENEOUS_H_

#include <vector>

#include "modalgame/market.h"
#include "modalgame/reaction.h"

namespace modalgame {

// Customers share one value of time and take the cheapest alternative
// outright (ties: operator 1, then operator 2, then transit).
struct HomogeneousOutcome {
  std::vector<std::vector<double>> prices;  // [operator][demand]
  std::vector<ModeRates> rates;             // per demand
  std::vector<double> profits;              // per operator
};

// Cost of one served customer of `demand`: the service path plus the cheapest
// empty return trip. Infinite when the operator cannot return.
double HomogeneousUnitCost(const Market& market, int op, int demand);

// Rates and profits at a fixed price profile.
HomogeneousOutcome EvaluateHomogeneous(const Market& market,
                                       const std::vector<std::vector<double>>& prices,
                                       double v_t);

// Per-demand price equilibrium. The faster operator wins and prices its
// service to match the best alternative, taking the slower operator at a
// price of zero as that alternative; the slower operator posts zero. An
// operator that cannot win at a positive margin prices itself out. Operators
// without fleet are absent. Fleet bounds are not enforced.
HomogeneousOutcome SolveHomogeneousGame(const Market& market, double v_t);

}  // namespace modalgame

#endif  // MODALGAME_HOMOGENEOUS_H_
