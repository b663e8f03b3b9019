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

#ifndef MODALGAME_SWEEP_H_
#define MODALGAME_SWEEP_H_

#include <optional>
#include <string>
#include <vector>

#include "modalgame/equilibrium.h"
#include "modalgame/report.h"
#include "modalgame/scenario.h"

namespace modalgame {

struct SweepRow {
  double value = 0.0;
  std::optional<ModalReport> report;  // empty when the point failed
  std::string error;
};

// Solves every expanded scenario. `mode` defaults per point to monopoly or
// synchronous by operator count. Rows keep the order of spec.values.
std::vector<SweepRow> ReferenceRunSweep(const Scenario& base, const SweepSpec& spec,
                                        const IterationConfig& config,
                                        std::optional<IterationMode> mode);
// Points solved concurrently on up to `parallelism` threads; identical rows.
std::vector<SweepRow> RunSweep(const Scenario& base, const SweepSpec& spec,
                               const IterationConfig& config,
                               std::optional<IterationMode> mode, int parallelism);

// Header plus one row per point; failed points carry an error column.
std::string SweepToCsv(const SweepSpec& spec, const std::vector<SweepRow>& rows);

}  // namespace modalgame

#endif  // MODALGAME_SWEEP_H_
