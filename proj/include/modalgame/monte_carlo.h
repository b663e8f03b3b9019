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

#ifndef MODALGAME_MONTE_CARLO_H_
#define MODALGAME_MONTE_CARLO_H_

#include <cstdint>
#include <optional>

#include "modalgame/reaction.h"

namespace modalgame {

struct ReactionInputs {
  double rate = 0.0;
  double t_road_h = 0.0;
  double t_transit_h = 0.0;
  double fare_usd = 0.0;
};

ReactionInputs InputsFromContext(const DemandContext& ctx);

// Empirical served rates (rate units) and their standard errors.
struct SampledRates {
  ModeRates rates;
  ModeRates standard_error;
  std::int64_t samples = 0;
};

// Counter-based stream: draw k of a run depends only on (seed, k), so the
// serial and parallel kernels see identical samples.
double UniformDraw(std::uint64_t seed, std::uint64_t counter);

// Sampling oracle for the heterogeneous reaction: every draw takes a value of
// time V ~ U[v_min, v_max] and eps ~ U[-w/2, w/2] on operator 2's cost, and
// picks the cheapest of {op1, op2, transit} (op1 wins ties, then op2).
// Without `price_op2` only operator 1 and transit compete.
SampledRates ReferenceMonteCarloReaction(const ReactionInputs& inputs, const ValueOfTime& vot,
                                         const PreferenceNoise& noise, double price_op1,
                                         std::optional<double> price_op2,
                                         std::int64_t samples, std::uint64_t seed);

// OpenMP version of the kernel above; bit-identical results.
SampledRates MonteCarloReaction(const ReactionInputs& inputs, const ValueOfTime& vot,
                                const PreferenceNoise& noise, double price_op1,
                                std::optional<double> price_op2, std::int64_t samples,
                                std::uint64_t seed);

}  // namespace modalgame

#endif  // MODALGAME_MONTE_CARLO_H_
