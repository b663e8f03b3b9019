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

#include <gtest/gtest.h>

#include <cmath>

#include "modalgame/error.h"
#include "modalgame/oracle.h"
#include "modalgame/oracle_suites.h"
#include "test_util.h"

namespace modalgame {
namespace {

using testing::MakeTwoNodeMarket;
using testing::TwoNodeParams;

TEST(EquilibriumTest, RelativeImprovement) {
  EXPECT_DOUBLE_EQ(RelativeImprovement(11.0, 10.0), 0.1);
  EXPECT_DOUBLE_EQ(RelativeImprovement(-9.0, -10.0), 0.1);
  EXPECT_DOUBLE_EQ(RelativeImprovement(1e-9, 0.0), 1.0);
  EXPECT_LT(RelativeImprovement(9.0, 10.0), 0.0);
}

TEST(EquilibriumTest, ModeNames) {
  for (IterationMode m :
       {IterationMode::kMonopoly, IterationMode::kSynchronous, IterationMode::kAsynchronous}) {
    EXPECT_EQ(ParseIterationMode(IterationModeName(m)), m);
  }
  EXPECT_FALSE(ParseIterationMode("gauss-seidel").has_value());
  EXPECT_EQ(DefaultMode(MakeTwoNodeMarket({})), IterationMode::kMonopoly);
  TwoNodeParams duo;
  duo.operators = 2;
  EXPECT_EQ(DefaultMode(MakeTwoNodeMarket(duo)), IterationMode::kSynchronous);
}

TEST(EquilibriumTest, InitialPricesStayInsideMonopolyBounds) {
  const Market market = MakeRandomTinyMarket(31, {.duopoly = true});
  for (int op = 0; op < 2; ++op) {
    const auto reactions = OperatorReactions(market, op, std::nullopt);
    const std::vector<double> a = RandomInitialPrices(market, op, 5);
    EXPECT_EQ(a, RandomInitialPrices(market, op, 5));
    EXPECT_NE(a, RandomInitialPrices(market, op, 6));
    for (int i = 0; i < market.num_demands(); ++i) {
      const PriceBounds b = ComputePriceBounds(reactions[i]);
      EXPECT_GE(a[i], b.p_min);
      EXPECT_LE(a[i], b.p_max);
    }
  }
}

TEST(EquilibriumTest, MonopolyIsOneBestResponse) {
  const Market market = MakeTwoNodeMarket({});
  IterationConfig config;
  config.mode = IterationMode::kMonopoly;
  const EquilibriumResult r = SolveEquilibrium(market, config);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.iterations_used, 1);
  // 12/7 customers per second at 8.80 USD, unit cost 4 USD.
  EXPECT_NEAR(r.operators[0].profit, 12.0 / 7.0 * 4.8, 1e-6);
  EXPECT_LE(r.achieved_epsilon, 1e-6);
}

TEST(EquilibriumTest, MonopolyStartsAgree) {
  const Market market = MakeRandomTinyMarket(808);
  IterationConfig config;
  config.mode = IterationMode::kMonopoly;
  const std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
  const MultiStartSummary s = MultiStart(market, config, seeds);
  for (const std::string& f : s.failures) EXPECT_TRUE(f.empty()) << f;
  EXPECT_LE(s.relative_dispersion[0], 1e-7);
}

TEST(EquilibriumTest, AsynchronousDuopolyPassesCertificate) {
  const Market market =
      MakeRandomTinyMarket(77, {.duopoly = true, .min_fleet_factor = 2.0, .max_fleet_factor = 3.0});
  IterationConfig config;
  config.mode = IterationMode::kAsynchronous;
  config.max_iterations = 500;
  const EquilibriumResult r = SolveEquilibrium(market, config);
  ASSERT_TRUE(r.converged);
  EXPECT_LE(r.achieved_epsilon, config.epsilon);
  const EpsilonCertificate cert = VerifyEpsilonEquilibrium(market, r, config.epsilon);
  EXPECT_TRUE(cert.holds);
  // Two trace entries per full round, minus the early exit.
  EXPECT_GE(static_cast<int>(r.trace.size()), 2);
  EXPECT_LE(static_cast<int>(r.trace.size()), 2 * r.iterations_used);
}

TEST(EquilibriumTest, NonConvergenceIsReportedNotThrown) {
  const Market market = MakeRandomTinyMarket(77, {.duopoly = true});
  IterationConfig config;
  config.mode = IterationMode::kSynchronous;
  config.max_iterations = 1;
  config.epsilon = 1e-12;
  const EquilibriumResult r = SolveEquilibrium(market, config);
  EXPECT_EQ(r.iterations_used, 1);
  EXPECT_EQ(r.trace.size(), 1u);
  if (!r.converged) EXPECT_GT(r.achieved_epsilon, config.epsilon);
}

TEST(EquilibriumTest, OperatorWithoutFleetIsAbsent) {
  TwoNodeParams duo;
  duo.operators = 2;
  Market market = MakeTwoNodeMarket(duo);
  market.operators[1].config.fleet_size = 0.0;
  IterationConfig config;
  config.mode = IterationMode::kAsynchronous;
  const EquilibriumResult r = SolveEquilibrium(market, config);
  ASSERT_TRUE(r.converged);
  EXPECT_NEAR(r.operators[0].profit, 12.0 / 7.0 * 4.8, 1e-6);
  EXPECT_EQ(r.operators[1].profit, 0.0);
  for (double x : r.operators[1].served) EXPECT_EQ(x, 0.0);
}

TEST(EquilibriumTest, ModeOperatorCountMismatch) {
  TwoNodeParams duo;
  duo.operators = 2;
  IterationConfig config;
  config.mode = IterationMode::kMonopoly;
  EXPECT_THROW(SolveEquilibrium(MakeTwoNodeMarket(duo), config), Error);
  config.mode = IterationMode::kSynchronous;
  EXPECT_THROW(SolveEquilibrium(MakeTwoNodeMarket({}), config), Error);
  EXPECT_THROW(MultiStart(MakeTwoNodeMarket({}), config, {}), Error);
}

}  // namespace
}  // namespace modalgame
