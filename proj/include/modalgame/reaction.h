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

#ifndef MODALGAME_REACTION_H_
#define MODALGAME_REACTION_H_

#include <optional>
#include <span>
#include <vector>

#include "modalgame/demand.h"

namespace modalgame {

// Customer value of time, uniform on [v_min, v_max] USD/h.
struct ValueOfTime {
  double v_min = 10.0;
  double v_max = 17.0;
};

// Width (USD) of the zero-mean uniform preference noise on operator 2's cost.
struct PreferenceNoise {
  double width = 1.0;
};

void ValidateValueOfTime(const ValueOfTime& vot);
void ValidateNoise(const PreferenceNoise& noise);

struct AffinePiece {
  double slope = 0.0;
  double intercept = 0.0;

  double operator()(double price) const { return slope * price + intercept; }
};

// Adversary-independent piece of the reaction curve: the share of the rate
// preferring AMoD over the transit route, f(p) = m1 * p + q1.
struct BaseConstants {
  double m1 = 0.0;
  double q1 = 0.0;
};

// The pieces whose pointwise minimum, clamped to [0, rate], is the served
// rate. One piece without an adversary, three with one.
struct ReactionPieces {
  double rate = 0.0;
  std::vector<AffinePiece> pieces;

  bool is_monopoly() const { return pieces.size() == 1; }
};

struct PriceBounds {
  double p_min = 0.0;
  double p_max = 0.0;
};

// Throws kDegenerateTiming when t_road == t_transit.
BaseConstants ComputeBaseConstants(double t_road_h, double t_transit_h, double fare_usd,
                                   const ValueOfTime& vot, double rate);
BaseConstants ComputeBaseConstants(const DemandContext& ctx, const ValueOfTime& vot);

// `adversary_price` is the competitor's price on the same origin-destination
// pair; std::nullopt means there is no competitor.
ReactionPieces MakeReactionPieces(const BaseConstants& base, double rate,
                                  const PreferenceNoise& noise,
                                  std::optional<double> adversary_price);

// min over pieces, before clamping.
double ReactionCurve(const ReactionPieces& reaction, double own_price);

// Served rate in [0, rate].
double EvaluateReaction(const ReactionPieces& reaction, double own_price);

// Inverse of the curve on [p_min, p_max]: min over pieces of (x - q) / m.
// The result is not clipped at zero. Throws kOutOfRange outside [0, rate].
double InvertReaction(const ReactionPieces& reaction, double served);

// Prices at which the curve reaches the full rate and zero, clipped at 0.
PriceBounds ComputePriceBounds(const ReactionPieces& reaction);
PriceBounds RawPriceBounds(const ReactionPieces& reaction);

// Slope magnitude bound of the curve with respect to the adversary price.
double AdversaryLipschitzConstant(const ReactionPieces& reaction);

struct OperatorOffer {
  double price = 0.0;
  double time_h = 0.0;
};

// Served rates per alternative.
struct ModeRates {
  double op1 = 0.0;
  double op2 = 0.0;
  double transit = 0.0;
};

// Homogeneous customers put the whole rate on the cheapest alternative
// (price + v_t * time). Ties go to the lower operator index, and operators
// win ties against transit.
ModeRates HomogeneousReaction(double rate, std::span<const OperatorOffer> offers,
                              double transit_fare_usd, double transit_time_h, double v_t);

}  // namespace modalgame

#endif  // MODALGAME_REACTION_H_
