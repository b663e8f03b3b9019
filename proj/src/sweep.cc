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

#include "modalgame/sweep.h"

#include <algorithm>

#include <omp.h>

#include "modalgame/error.h"

namespace modalgame {
namespace {

SweepRow SolvePoint(const Scenario& base, const ScenarioConfig& config, double value,
                    const IterationConfig& iteration, std::optional<IterationMode> mode) {
  SweepRow row;
  row.value = value;
  try {
    const Market market = BuildScenarioMarket(WithConfig(base, config));
    IterationConfig run = iteration;
    run.mode = mode.value_or(DefaultMode(market));
    row.report = BuildReport(market, SolveEquilibrium(market, run));
  } catch (const Error& e) {
    row.error = e.what();
  }
  return row;
}

}  // namespace

std::vector<SweepRow> ReferenceRunSweep(const Scenario& base, const SweepSpec& spec,
                                        const IterationConfig& config,
                                        std::optional<IterationMode> mode) {
  const std::vector<ScenarioConfig> configs = ExpandSweep(base.config, spec);
  std::vector<SweepRow> rows;
  for (std::size_t k = 0; k < configs.size(); ++k) {
    rows.push_back(SolvePoint(base, configs[k], spec.values[k], config, mode));
  }
  return rows;
}

std::vector<SweepRow> RunSweep(const Scenario& base, const SweepSpec& spec,
                               const IterationConfig& config,
                               std::optional<IterationMode> mode, int parallelism) {
  if (parallelism < 1) throw Error(ErrorCode::kInvalidArgument, "parallelism must be >= 1");
  const std::vector<ScenarioConfig> configs = ExpandSweep(base.config, spec);
  const int n = static_cast<int>(configs.size());
  std::vector<SweepRow> rows(n);
#pragma omp parallel for schedule(dynamic) num_threads(std::min(parallelism, std::max(n, 1)))
  for (int k = 0; k < n; ++k) {
    rows[k] = SolvePoint(base, configs[k], spec.values[k], config, mode);
  }
  return rows;
}

std::string SweepToCsv(const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  std::string header = SummaryCsvHeader(SweepParameterName(spec.parameter));
  header.pop_back();
  std::string csv = header + ",error\n";
  for (const SweepRow& row : rows) {
    if (row.report) {
      std::string line = SummaryCsvRow(FormatFixed(row.value), *row.report);
      line.pop_back();
      csv += line + ",\n";
    } else {
      std::string message = row.error;
      std::replace(message.begin(), message.end(), ',', ';');
      std::replace(message.begin(), message.end(), '\n', ' ');
      const int columns = static_cast<int>(std::count(header.begin(), header.end(), ','));
      csv += FormatFixed(row.value) + std::string(columns, ',') + "," + message + "\n";
    }
  }
  return csv;
}

}  // namespace modalgame
