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


#include "modalgame/homogeneous.h"

#include <gtest/gtest.h>

#include <random>

#include "modalgame/error.h"
#include "modalgame/oracle.h"
#include "modalgame/oracle_suites.h"

namespace modalgame {
namespace {

TEST(HomogeneousTest, BasicExampleHandValues) {
  const BasicExampleParams p;
  const BasicExampleEquilibrium eq = SolveBasicExample(p);
  EXPECT_NEAR(eq.price_op1, 1.2, 1e-12);
  EXPECT_NEAR(eq.profit_op1, 1.0, 1e-12);
  EXPECT_EQ(eq.profit_op2, 0.0);
  EXPECT_EQ(eq.rates.op1, 5.0);
}

TEST(HomogeneousTest, EngineMatchesClosedFormOnRandomParameters) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    BasicExampleParams p;
    p.t1 = 0.1 + 0.2 * u(rng);
    p.t2 = p.t1 + 0.05 + 0.3 * u(rng);
    p.t3 = p.t2 + 0.1 + u(rng);
    p.v_t = 8.0 + 10.0 * u(rng);
    p.c1 = 0.9 * u(rng) * p.v_t * (p.t2 - p.t1) / 2.0;
    p.c2 = p.c1;
    p.rate = 0.5 + 5.0 * u(rng);
    const BasicExampleEquilibrium closed = SolveBasicExample(p);
    const HomogeneousOutcome engine = SolveHomogeneousGame(MakeBasicExampleMarket(p), p.v_t);
    EXPECT_NEAR(engine.prices[0][0], closed.price_op1, 1e-6) << trial;
    EXPECT_NEAR(engine.profits[0], closed.profit_op1, 1e-6) << trial;
    EXPECT_EQ(engine.profits[1], 0.0) << trial;
  }
}

TEST(HomogeneousTest, NoProfitableUnilateralDeviation) {
  const BasicExampleParams p;
  const Market market = MakeBasicExampleMarket(p);
  const HomogeneousOutcome eq = SolveHomogeneousGame(market, p.v_t);
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k <= 2000; ++k) {
      std::vector<std::vector<double>> prices = eq.prices;
      prices[j][0] = 0.005 * k;
      const HomogeneousOutcome dev = EvaluateHomogeneous(market, prices, p.v_t);
      EXPECT_LE(dev.profits[j], eq.profits[j] + 1e-6) << "operator " << j << " price " << 0.005 * k;
    }
  }
}

TEST(HomogeneousTest, AssumptionsAreChecked) {
  BasicExampleParams p;
  p.t2 = 0.1;
  EXPECT_THROW(SolveBasicExample(p), Error);
  p = {};
  p.c1 = 0.7;  // 12 * 0.1 / 2 = 0.6
  try {
    SolveBasicExample(p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kAssumptionViolated);
  }
  EXPECT_THROW(SolveHomogeneousGame(MakeBasicExampleMarket({}), 0.0), Error);
}

TEST(HomogeneousTest, UnitCostIncludesEmptyReturn) {
  const BasicExampleParams p;
  const Market market = MakeBasicExampleMarket(p);
  EXPECT_NEAR(HomogeneousUnitCost(market, 0, 0), 2.0 * p.c1, 1e-12);
  EXPECT_NEAR(HomogeneousUnitCost(market, 1, 0), 2.0 * p.c2, 1e-12);
}

}  // namespace
}  // namespace modalgame
