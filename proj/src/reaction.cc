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

#include "modalgame/reaction.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "modalgame/error.h"

namespace modalgame {

void ValidateValueOfTime(const ValueOfTime& vot) {
  if (!(vot.v_min > 0.0) || !(vot.v_max > vot.v_min) || !std::isfinite(vot.v_max)) {
    throw Error(ErrorCode::kValidationError,
                "value of time requires 0 < v_min < v_max");
  }
}

void ValidateNoise(const PreferenceNoise& noise) {
  if (!(noise.width > 0.0) || !std::isfinite(noise.width)) {
    throw Error(ErrorCode::kValidationError, "noise width must be positive");
  }
}

BaseConstants ComputeBaseConstants(double t_road_h, double t_transit_h, double fare_usd,
                                   const ValueOfTime& vot, double rate) {
  ValidateValueOfTime(vot);
  const double dt = t_transit_h - t_road_h;
  if (dt == 0.0) {
    throw Error(ErrorCode::kDegenerateTiming, "t_road equals t_transit");
  }
  const double spread = vot.v_max - vot.v_min;
  BaseConstants base;
  base.m1 = -rate / (spread * std::abs(dt));
  if (dt > 0.0) {
    // AMoD is faster: customers with a high value of time take it.
    base.q1 = -base.m1 * (vot.v_max * dt + fare_usd);
  } else {
    // Transit is faster: AMoD only wins on price, with low value of time.
    base.q1 = -base.m1 * (-vot.v_min * (-dt) + fare_usd);
  }
  return base;
}

BaseConstants ComputeBaseConstants(const DemandContext& ctx, const ValueOfTime& vot) {
  return ComputeBaseConstants(ctx.t_road_h, ctx.t_transit_h, ctx.fare_transit_usd, vot,
                              ctx.demand.rate_per_s);
}

ReactionPieces MakeReactionPieces(const BaseConstants& base, double rate,
                                  const PreferenceNoise& noise,
                                  std::optional<double> adversary_price) {
  ReactionPieces reaction;
  reaction.rate = rate;
  reaction.pieces.push_back({base.m1, base.q1});
  if (!adversary_price) return reaction;

  ValidateNoise(noise);
  const double p_adv = *adversary_price;
  const double m2 = -1.0 / noise.width;
  const double q2 = rate / 2.0 - m2 * p_adv;
  const double m3 = m2 + base.m1 / 2.0;
  const double q3 = (base.m1 * p_adv + base.q1) / 2.0 - m3 * p_adv;
  reaction.pieces.push_back({m2, q2});
  reaction.pieces.push_back({m3, q3});
  return reaction;
}

double ReactionCurve(const ReactionPieces& reaction, double own_price) {
  double value = std::numeric_limits<double>::infinity();
  for (const AffinePiece& piece : reaction.pieces) value = std::min(value, piece(own_price));
  return value;
}

double EvaluateReaction(const ReactionPieces& reaction, double own_price) {
  return std::clamp(ReactionCurve(reaction, own_price), 0.0, reaction.rate);
}

double InvertReaction(const ReactionPieces& reaction, double served) {
  if (!(served >= 0.0) || served > reaction.rate) {
    throw Error(ErrorCode::kOutOfRange,
                "served rate " + std::to_string(served) + " outside [0, " +
                    std::to_string(reaction.rate) + "]");
  }
  double price = std::numeric_limits<double>::infinity();
  for (const AffinePiece& piece : reaction.pieces) {
    price = std::min(price, (served - piece.intercept) / piece.slope);
  }
  return price;
}

PriceBounds RawPriceBounds(const ReactionPieces& reaction) {
  return {InvertReaction(reaction, reaction.rate), InvertReaction(reaction, 0.0)};
}

PriceBounds ComputePriceBounds(const ReactionPieces& reaction) {
  PriceBounds raw = RawPriceBounds(reaction);
  return {std::max(0.0, raw.p_min), std::max(0.0, raw.p_max)};
}

double AdversaryLipschitzConstant(const ReactionPieces& reaction) {
  if (reaction.is_monopoly()) return 0.0;
  // d q2 / d p_adv = -m2 and d q3 / d p_adv = m1 / 2 - m3 = -m2.
  return -reaction.pieces[1].slope;
}

ModeRates HomogeneousReaction(double rate, std::span<const OperatorOffer> offers,
                              double transit_fare_usd, double transit_time_h, double v_t) {
  if (!(v_t > 0.0)) throw Error(ErrorCode::kInvalidArgument, "v_t must be positive");
  if (offers.size() > 2) throw Error(ErrorCode::kInvalidArgument, "at most two operators");
  auto tied_or_less = [](double a, double b) {
    return a <= b + 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
  };
  const double transit_cost = transit_fare_usd + v_t * transit_time_h;
  int best = -1;
  double best_cost = transit_cost;
  for (int k = static_cast<int>(offers.size()) - 1; k >= 0; --k) {
    const double cost = offers[k].price + v_t * offers[k].time_h;
    if (!std::isfinite(cost)) continue;
    // Iterating from the last operator lets lower indices win ties.
    if (tied_or_less(cost, best_cost)) {
      best = k;
      best_cost = cost;
    }
  }
  ModeRates rates;
  if (best == 0) rates.op1 = rate;
  else if (best == 1) rates.op2 = rate;
  else rates.transit = rate;
  return rates;
}

}  // namespace modalgame
