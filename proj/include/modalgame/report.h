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

#ifndef MODALGAME_REPORT_H_
#define MODALGAME_REPORT_H_

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "modalgame/equilibrium.h"
#include "modalgame/market.h"

namespace modalgame {

enum class LocalClass { kPtOnly, kAmodOnly, kOp1Only, kOp2Only, kWalkOnly, kMixed };
inline constexpr int kNumLocalClasses = 6;
std::string_view LocalClassName(LocalClass c);

// A mode serves a demand when its rate exceeds this fraction of the demand.
inline constexpr double kUsedShareThreshold = 1e-6;

struct ModeShares {
  double op1 = 0.0;
  double op2 = 0.0;
  double transit = 0.0;
  double walk_only = 0.0;
};

// Rate-weighted quantiles; `defined` is false when nothing was served.
struct QuantileSummary {
  bool defined = false;
  double min = 0.0;
  double q25 = 0.0;
  double median = 0.0;
  double q75 = 0.0;
  double max = 0.0;
};

struct DemandRow {
  std::int64_t origin = 0;  // external ids
  std::int64_t destination = 0;
  double rate = 0.0;
  double op1 = 0.0;
  double op2 = 0.0;
  double transit = 0.0;
  double walk = 0.0;
  std::vector<double> prices;  // per operator
  LocalClass local_class = LocalClass::kPtOnly;
};

struct OperatorTotals {
  double profit = 0.0;
  double revenue = 0.0;
  double service_cost = 0.0;
  double rebalancing_cost = 0.0;
  double tax_paid = 0.0;
  double vehicles = 0.0;
  double fleet_size = 0.0;
};

struct ModalReport {
  IterationMode mode = IterationMode::kMonopoly;
  bool converged = false;
  int iterations_used = 0;
  double achieved_epsilon = 0.0;
  ModeShares shares;
  std::array<double, kNumLocalClasses> local_fractions{};  // rate-weighted
  std::vector<OperatorTotals> totals;
  std::vector<QuantileSummary> profit_share_per_trip;  // per operator
  double tax_collected = 0.0;
  std::vector<DemandRow> demands;
};

// The rate not served by an operator goes to the customer's transit route,
// which may be a pure walk. Rebalancing cost is allocated to trips in
// proportion to served rate times service time.
ModalReport BuildReport(const Market& market, const EquilibriumResult& result);

// Weighted quantile: smallest value whose cumulative weight reaches q * total.
QuantileSummary WeightedQuantiles(std::vector<std::pair<double, double>> value_weight);

nlohmann::json ReportToJson(const ModalReport& report);

// Summary CSV with one row per report; `labels` fill the first column.
std::string SummaryCsvHeader(const std::string& label_column);
std::string SummaryCsvRow(const std::string& label, const ModalReport& report);
std::string FormatFixed(double value);

// Equilibrium result with enough context to rebuild its report.
nlohmann::json ResultToJson(const Market& market, const EquilibriumResult& result,
                            const std::string& scenario_file,
                            const nlohmann::json& scenario_config);
EquilibriumResult ResultFromJson(const nlohmann::json& doc);

void WriteTextFile(const std::filesystem::path& path, const std::string& contents);

}  // namespace modalgame

#endif  // MODALGAME_REPORT_H_
