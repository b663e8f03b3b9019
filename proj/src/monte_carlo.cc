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

#include "modalgame/monte_carlo.h"

#include <cmath>

#include "modalgame/error.h"

namespace modalgame {
namespace {

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// 0 = op1, 1 = op2, 2 = transit.
int SampleChoice(const ReactionInputs& in, const ValueOfTime& vot, const PreferenceNoise& noise,
                 double p1, bool has_op2, double p2, std::uint64_t seed, std::int64_t k) {
  const double v = vot.v_min + (vot.v_max - vot.v_min) * UniformDraw(seed, 2 * k);
  const double eps = (UniformDraw(seed, 2 * k + 1) - 0.5) * noise.width;
  const double cost1 = p1 + v * in.t_road_h;
  const double cost_transit = in.fare_usd + v * in.t_transit_h;
  if (has_op2) {
    const double cost2 = p2 + v * in.t_road_h + eps;
    if (cost1 <= cost2 && cost1 <= cost_transit) return 0;
    if (cost2 <= cost_transit) return 1;
    return 2;
  }
  return cost1 <= cost_transit ? 0 : 2;
}

SampledRates Summarize(const ReactionInputs& in, std::int64_t counts[3], std::int64_t samples) {
  SampledRates out;
  out.samples = samples;
  const double n = static_cast<double>(samples);
  auto share = [&](int k) { return static_cast<double>(counts[k]) / n; };
  auto se = [&](int k) { return in.rate * std::sqrt(share(k) * (1.0 - share(k)) / n); };
  out.rates = {in.rate * share(0), in.rate * share(1), in.rate * share(2)};
  out.standard_error = {se(0), se(1), se(2)};
  return out;
}

void CheckArguments(const ValueOfTime& vot, const PreferenceNoise& noise, std::int64_t samples,
                    bool has_op2) {
  ValidateValueOfTime(vot);
  if (has_op2) ValidateNoise(noise);
  if (samples < 1) throw Error(ErrorCode::kInvalidArgument, "samples must be >= 1");
}

}  // namespace

double UniformDraw(std::uint64_t seed, std::uint64_t counter) {
  const std::uint64_t bits = SplitMix64(SplitMix64(seed) ^ counter);
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

ReactionInputs InputsFromContext(const DemandContext& ctx) {
  return {ctx.demand.rate_per_s, ctx.t_road_h, ctx.t_transit_h, ctx.fare_transit_usd};
}

SampledRates ReferenceMonteCarloReaction(const ReactionInputs& inputs, const ValueOfTime& vot,
                                         const PreferenceNoise& noise, double price_op1,
                                         std::optional<double> price_op2,
                                         std::int64_t samples, std::uint64_t seed) {
  CheckArguments(vot, noise, samples, price_op2.has_value());
  std::int64_t counts[3] = {0, 0, 0};
  const double p2 = price_op2.value_or(0.0);
  for (std::int64_t k = 0; k < samples; ++k) {
    ++counts[SampleChoice(inputs, vot, noise, price_op1, price_op2.has_value(), p2, seed, k)];
  }
  return Summarize(inputs, counts, samples);
}

SampledRates MonteCarloReaction(const ReactionInputs& inputs, const ValueOfTime& vot,
                                const PreferenceNoise& noise, double price_op1,
                                std::optional<double> price_op2, std::int64_t samples,
                                std::uint64_t seed) {
  CheckArguments(vot, noise, samples, price_op2.has_value());
  std::int64_t c0 = 0, c1 = 0, c2 = 0;
  const bool has_op2 = price_op2.has_value();
  const double p2 = price_op2.value_or(0.0);
#pragma omp parallel for schedule(static) reduction(+ : c0, c1, c2)
  for (std::int64_t k = 0; k < samples; ++k) {
    switch (SampleChoice(inputs, vot, noise, price_op1, has_op2, p2, seed, k)) {
      case 0: ++c0; break;
      case 1: ++c1; break;
      default: ++c2; break;
    }
  }
  std::int64_t counts[3] = {c0, c1, c2};
  return Summarize(inputs, counts, samples);
}

}  // namespace modalgame
