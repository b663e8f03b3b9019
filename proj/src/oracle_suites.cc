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

#include "modalgame/oracle_suites.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <utility>

#include "modalgame/best_response.h"
#include "modalgame/equilibrium.h"
#include "modalgame/error.h"
#include "modalgame/homogeneous.h"
#include "modalgame/rebalancing.h"

namespace modalgame {
namespace {

constexpr double kRoadSpeedKmh = 30.0;
constexpr double kWalkSpeedKmh = 5.0;

class Draws {
 public:
  explicit Draws(std::uint64_t seed) : seed_(seed) {}
  double Uniform(double lo, double hi) { return lo + (hi - lo) * UniformDraw(seed_, next_++); }
  int Integer(int lo, int hi) {  // inclusive
    return std::min(hi, lo + static_cast<int>(UniformDraw(seed_, next_++) * (hi - lo + 1)));
  }

 private:
  std::uint64_t seed_;
  std::uint64_t next_ = 0;
};

CheckLine Line(std::string suite, std::string name, double residual, double tolerance,
               std::string detail = "") {
  return {std::move(suite), std::move(name), residual <= tolerance, residual, tolerance,
          std::move(detail)};
}

}  // namespace

Market MakeBasicExampleMarket(const BasicExampleParams& p) {
  const std::vector<std::int64_t> vertices = {1, 2};
  const std::vector<RawArc> arcs = {
      {1, 1, 2, Mode::kRoad, p.t1, p.c1, "op1"},
      {2, 1, 2, Mode::kRoad, p.t2, p.c2, "op2"},
      {3, 1, 2, Mode::kWalk, p.t3, p.t3 * kWalkSpeedKmh, ""},
      {4, 2, 1, Mode::kRoad, p.t1, p.c1, "op1"},
      {5, 2, 1, Mode::kRoad, p.t2, p.c2, "op2"},
      {6, 2, 1, Mode::kWalk, p.t3, p.t3 * kWalkSpeedKmh, ""},
  };
  MarketConfig config;
  config.pt_fare_usd = 0.0;
  config.vot = {p.v_t - 1e-3, p.v_t + 1e-3};
  config.timing.amod_wait_h = 0.0;
  config.operators = {{1e9, 1.0}, {1e9, 1.0}};
  return BuildMarket(MultiGraph::Build(vertices, arcs),
                     {{VertexId{0}, VertexId{1}, p.rate}}, config);
}

Market MakeRandomTinyMarket(std::uint64_t seed, const TinyInstanceOptions& options) {
  Draws draw(seed);
  const int n = draw.Integer(2, 4);
  std::vector<std::int64_t> vertices;
  for (int v = 1; v <= n; ++v) vertices.push_back(v);
  std::vector<RawArc> arcs;
  auto add_pair = [&](int a, int b, double length, Mode mode) {
    const double speed = mode == Mode::kRoad ? kRoadSpeedKmh : kWalkSpeedKmh;
    arcs.push_back({static_cast<std::int64_t>(arcs.size() + 1), a, b, mode, length / speed,
                    length, ""});
    arcs.push_back({static_cast<std::int64_t>(arcs.size() + 1), b, a, mode, length / speed,
                    length, ""});
  };
  for (int a = 1; a <= n; ++a) {
    for (int b = a + 1; b <= n; ++b) {
      const double length = draw.Uniform(1.0, 5.0);
      add_pair(a, b, length * draw.Uniform(1.0, 1.3), Mode::kWalk);
      // Neighbors on the ring always get a road; chords only sometimes.
      const bool ring = b == a + 1 || (a == 1 && b == n);
      if (ring || draw.Uniform(0.0, 1.0) < 0.5) add_pair(a, b, length, Mode::kRoad);
    }
  }
  const MultiGraph graph = MultiGraph::Build(vertices, arcs);

  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a != b) pairs.emplace_back(a, b);
    }
  }
  const int num_demands = std::min(draw.Integer(1, 3), static_cast<int>(pairs.size()));
  std::vector<Demand> demands;
  for (int k = 0; k < num_demands; ++k) {
    const int pick = draw.Integer(0, static_cast<int>(pairs.size()) - 1);
    demands.push_back({VertexId{pairs[pick].first}, VertexId{pairs[pick].second},
                       draw.Uniform(0.5, 5.0)});
    pairs.erase(pairs.begin() + pick);
  }

  MarketConfig config;
  config.pt_fare_usd = 0.0;
  config.timing.amod_wait_h = 0.05;
  const double cost = draw.Uniform(0.2, 0.8);
  const int num_operators = options.duopoly ? 2 : 1;
  for (int j = 0; j < num_operators; ++j) {
    const double c = options.identical_operators || j == 0 ? cost : draw.Uniform(0.2, 0.8);
    config.operators.push_back({0.0, c});
  }
  // Vehicles to serve every demand plus a direct empty return.
  Market probe = BuildMarket(graph, demands, config);
  double full = 0.0;
  for (const DemandContext& ctx : probe.operators[0].contexts) {
    full += 2.0 * kSecondsPerHour * ctx.t_road_h * ctx.demand.rate_per_s;
  }
  const double factor = draw.Uniform(options.min_fleet_factor, options.max_fleet_factor);
  for (int j = 0; j < num_operators; ++j) {
    const double f = options.identical_operators || j == 0
                         ? factor
                         : draw.Uniform(options.min_fleet_factor, options.max_fleet_factor);
    config.operators[j].fleet_size = f * full;
  }
  return BuildMarket(graph, std::move(demands), config);
}

ReactionInputs MakeRandomReactionInputs(std::uint64_t seed) {
  Draws draw(seed);
  ReactionInputs in;
  in.rate = draw.Uniform(1.0, 10.0);
  in.t_road_h = draw.Uniform(0.1, 0.5);
  const double gap = draw.Uniform(0.05, 0.4);
  in.t_transit_h = draw.Uniform(0.0, 1.0) < 0.7 ? in.t_road_h + gap
                                                 : std::max(0.02, in.t_road_h - gap);
  if (std::abs(in.t_transit_h - in.t_road_h) < 0.05) in.t_transit_h = in.t_road_h + gap;
  in.fare_usd = draw.Uniform(0.0, 4.0);
  return in;
}

std::vector<CheckLine> BasicExampleSuite() {
  const std::string suite = "basic-example";
  const BasicExampleParams params;
  const BasicExampleEquilibrium closed = SolveBasicExample(params);
  const Market market = MakeBasicExampleMarket(params);
  const HomogeneousOutcome engine = SolveHomogeneousGame(market, params.v_t);
  return {
      Line(suite, "price_op1", std::abs(engine.prices[0][0] - closed.price_op1), 1e-6),
      Line(suite, "profit_op1", std::abs(engine.profits[0] - closed.profit_op1), 1e-6),
      Line(suite, "profit_op2", std::abs(engine.profits[1] - closed.profit_op2), 0.0),
      Line(suite, "rate_op1", std::abs(engine.rates[0].op1 - closed.rates.op1), 0.0),
  };
}

std::vector<CheckLine> GridOracleSuite(int instances, std::uint64_t seed) {
  const std::string suite = "grid-oracle";
  std::vector<CheckLine> lines;
  for (int k = 0; k < instances; ++k) {
    TinyInstanceOptions options;
    options.duopoly = k % 2 == 1;
    const std::uint64_t instance_seed = seed * 1000 + k;
    const Market market = MakeRandomTinyMarket(instance_seed, options);
    std::optional<std::span<const double>> adversary;
    std::vector<double> adversary_prices;
    if (options.duopoly) {
      adversary_prices = RandomInitialPrices(market, 1, instance_seed);
      adversary = std::span<const double>(adversary_prices);
    }
    const auto reactions = OperatorReactions(market, 0, adversary);
    const BestResponseSolution solved = SolveBestResponse(market, 0, reactions);
    const GridBestResponse grid = ParallelGridBestResponse(market, 0, reactions);
    const double profit_gap = std::abs(solved.profit - grid.profit) /
                              std::max({std::abs(grid.profit), std::abs(solved.profit), 1e-6});
    double steps = 0.0;
    for (int i = 0; i < market.num_demands(); ++i) {
      const double step = reactions[i].rate / 100.0;
      steps = std::max(steps, std::abs(solved.served[i] - grid.served[i]) / step);
    }
    const std::string name = "instance_" + std::to_string(k);
    lines.push_back(Line(suite, name + "_profit", profit_gap, 0.005,
                         "solver " + std::to_string(solved.profit) + " grid " +
                             std::to_string(grid.profit)));
    lines.push_back(Line(suite, name + "_served_steps", steps, 1.0 + 1e-9));
  }
  return lines;
}

std::vector<CheckLine> MonteCarloSuite(int configurations, std::int64_t samples,
                                       std::uint64_t seed) {
  const std::string suite = "monte-carlo";
  std::vector<CheckLine> lines;
  const ValueOfTime vot;
  const PreferenceNoise noise;
  for (int k = 0; k < configurations; ++k) {
    const std::uint64_t s = seed * 1000 + k;
    const ReactionInputs in = MakeRandomReactionInputs(s);
    const BaseConstants base =
        ComputeBaseConstants(in.t_road_h, in.t_transit_h, in.fare_usd, vot, in.rate);
    const PriceBounds bounds = ComputePriceBounds(MakeReactionPieces(base, in.rate, noise, {}));
    Draws draw(s + 7777);
    const double p1 = draw.Uniform(bounds.p_min, bounds.p_max);
    const double p2 = draw.Uniform(bounds.p_min, bounds.p_max);
    const std::string name = "config_" + std::to_string(k);

    const SampledRates mono = MonteCarloReaction(in, vot, noise, p1, std::nullopt, samples, s);
    const double x_mono = EvaluateReaction(MakeReactionPieces(base, in.rate, noise, {}), p1);
    lines.push_back(Line(suite, name + "_monopoly",
                         std::abs(x_mono - mono.rates.op1) /
                             (mono.standard_error.op1 + 1e-12 * in.rate),
                         3.0));

    const SampledRates duo = MonteCarloReaction(in, vot, noise, p1, p2, samples, s);
    const double x1 = EvaluateReaction(MakeReactionPieces(base, in.rate, noise, p2), p1);
    const double x2 = EvaluateReaction(MakeReactionPieces(base, in.rate, noise, p1), p2);
    const double z1 = std::abs(x1 - duo.rates.op1) / (duo.standard_error.op1 + 1e-12 * in.rate);
    const double z2 = std::abs(x2 - duo.rates.op2) / (duo.standard_error.op2 + 1e-12 * in.rate);
    lines.push_back(Line(suite, name + "_duopoly", std::max(z1, z2), 3.0,
                         "analytic " + std::to_string(x1) + "/" + std::to_string(x2) +
                             " sampled " + std::to_string(duo.rates.op1) + "/" +
                             std::to_string(duo.rates.op2)));
  }
  return lines;
}

std::vector<CheckLine> EpsilonCertificateSuite(int instances, std::uint64_t seed) {
  const std::string suite = "epsilon-certificate";
  std::vector<CheckLine> lines;
  for (int k = 0; k < instances; ++k) {
    TinyInstanceOptions options;
    options.duopoly = true;
    options.min_fleet_factor = 2.0;
    options.max_fleet_factor = 3.0;
    const Market market = MakeRandomTinyMarket(seed * 1000 + 500 + k, options);
    for (IterationMode mode : {IterationMode::kSynchronous, IterationMode::kAsynchronous}) {
      IterationConfig config;
      config.mode = mode;
      config.seed = seed + k;
      const EquilibriumResult result = SolveEquilibrium(market, config);
      const std::string name =
          "instance_" + std::to_string(k) + "_" + std::string(IterationModeName(mode));
      if (!result.converged) {
        lines.push_back({suite, name + "_converged", false, result.achieved_epsilon,
                         config.epsilon, "no convergence"});
        continue;
      }
      const EpsilonCertificate cert = VerifyEpsilonEquilibrium(market, result, config.epsilon);
      lines.push_back(Line(suite, name + "_certificate",
                           *std::max_element(cert.improvement.begin(), cert.improvement.end()),
                           config.epsilon));
      const double p1 = result.operators[0].profit, p2 = result.operators[1].profit;
      lines.push_back(Line(suite, name + "_symmetric_profit",
                           std::abs(p1 - p2) / std::max({std::abs(p1), std::abs(p2), 1e-9}),
                           2.0 * config.epsilon));
    }
  }
  return lines;
}

std::vector<CheckLine> RunOracleSuite(std::string_view suite, std::uint64_t seed) {
  std::vector<CheckLine> lines;
  auto append = [&](std::vector<CheckLine> more) {
    lines.insert(lines.end(), more.begin(), more.end());
  };
  const bool all = suite == "all";
  bool known = all;
  if (all || suite == "basic-example") {
    append(BasicExampleSuite());
    known = true;
  }
  if (all || suite == "grid-oracle") {
    append(GridOracleSuite(4, seed));
    known = true;
  }
  if (all || suite == "monte-carlo") {
    append(MonteCarloSuite(20, 1000000, seed));
    known = true;
  }
  if (all || suite == "epsilon-certificate") {
    append(EpsilonCertificateSuite(2, seed));
    known = true;
  }
  if (!known) throw Error(ErrorCode::kInvalidArgument, "unknown suite " + std::string(suite));
  return lines;
}

}  // namespace modalgame
