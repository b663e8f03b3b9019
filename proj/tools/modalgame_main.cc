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

// Command-line front end: solve, sweep, oracle-check and report.

#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "modalgame/equilibrium.h"
#include "modalgame/error.h"
#include "modalgame/log.h"
#include "modalgame/oracle_suites.h"
#include "modalgame/report.h"
#include "modalgame/scenario.h"
#include "modalgame/sweep.h"

namespace {

namespace fs = std::filesystem;
using modalgame::Error;
using modalgame::ErrorCode;
using modalgame::IterationConfig;
using modalgame::IterationMode;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNotConverged = 2;

struct IterationFlags {
  std::string mode;
  double epsilon = 1e-4;
  int max_iter = 100;
  std::uint64_t seed = 0;
};

void AddIterationFlags(CLI::App* cmd, IterationFlags* flags) {
  cmd->add_option("--mode", flags->mode, "monopoly, synchronous or asynchronous")
      ->check(CLI::IsMember({"monopoly", "synchronous", "asynchronous"}));
  cmd->add_option("--epsilon", flags->epsilon, "relative profit-improvement threshold")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-iter", flags->max_iter, "best-response iterations")
      ->check(CLI::Range(1, 1000000));
  cmd->add_option("--seed", flags->seed, "seed for initial prices");
}

IterationConfig ToConfig(const IterationFlags& flags) {
  IterationConfig config;
  config.epsilon = flags.epsilon;
  config.max_iterations = flags.max_iter;
  config.seed = flags.seed;
  return config;
}

std::optional<IterationMode> ModeFlag(const IterationFlags& flags) {
  if (flags.mode.empty()) return std::nullopt;
  return modalgame::ParseIterationMode(flags.mode);
}

std::string Dump(const nlohmann::json& doc) { return doc.dump(2) + "\n"; }

void WriteReports(const fs::path& dir, const modalgame::ModalReport& report) {
  modalgame::WriteTextFile(dir / "report.json", Dump(modalgame::ReportToJson(report)));
  modalgame::WriteTextFile(dir / "report.csv", modalgame::SummaryCsvHeader("label") +
                                                   modalgame::SummaryCsvRow("base", report));
}

void EnsureDirectory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot create " + dir.string());
}

int RunSolve(const std::string& scenario_path, const std::string& out,
             const IterationFlags& flags) {
  const modalgame::Scenario scenario = modalgame::LoadScenario(scenario_path);
  const modalgame::Market market = modalgame::BuildScenarioMarket(scenario);
  IterationConfig config = ToConfig(flags);
  config.mode = ModeFlag(flags).value_or(modalgame::DefaultMode(market));
  MG_LOG_INFO("solving " + scenario_path + " in " +
              std::string(modalgame::IterationModeName(config.mode)) + " mode");
  const modalgame::EquilibriumResult result = modalgame::SolveEquilibrium(market, config);
  EnsureDirectory(out);
  const std::string absolute = fs::absolute(scenario_path).lexically_normal().string();
  modalgame::WriteTextFile(
      fs::path(out) / "result.json",
      Dump(modalgame::ResultToJson(market, result, absolute,
                                   modalgame::ScenarioConfigToJson(scenario.config))));
  WriteReports(out, modalgame::BuildReport(market, result));
  std::printf("%s: converged=%s iterations=%d\n", std::string(IterationModeName(result.mode)).c_str(),
              result.converged ? "true" : "false", result.iterations_used);
  for (int j = 0; j < market.num_operators(); ++j) {
    std::printf("operator %d profit %.9f USD/s\n", j + 1, result.operators[j].profit);
  }
  return result.converged ? kExitOk : kExitNotConverged;
}

int RunSweepCommand(const std::string& scenario_path, const std::string& spec_path,
                    const std::string& out, int parallelism, const IterationFlags& flags) {
  const modalgame::Scenario scenario = modalgame::LoadScenario(scenario_path);
  const modalgame::SweepSpec spec = modalgame::LoadSweepSpec(spec_path);
  const auto rows =
      modalgame::RunSweep(scenario, spec, ToConfig(flags), ModeFlag(flags), parallelism);
  if (fs::path(out).has_parent_path()) EnsureDirectory(fs::path(out).parent_path());
  modalgame::WriteTextFile(out, modalgame::SweepToCsv(spec, rows));
  bool failed = false, unconverged = false;
  for (const auto& row : rows) {
    if (!row.report) {
      failed = true;
      MG_LOG_ERROR("sweep point " + modalgame::FormatFixed(row.value) + ": " + row.error);
    } else if (!row.report->converged) {
      unconverged = true;
    }
  }
  std::printf("%zu sweep points written to %s\n", rows.size(), out.c_str());
  if (failed) return kExitError;
  return unconverged ? kExitNotConverged : kExitOk;
}

int RunOracleCheck(const std::string& suite, const std::string& out, std::uint64_t seed) {
  const auto lines = modalgame::RunOracleSuite(suite, seed);
  nlohmann::json doc = nlohmann::json::array();
  bool all_passed = true;
  for (const auto& line : lines) {
    all_passed = all_passed && line.passed;
    std::printf("%-4s %-20s %-40s residual=%.3e tol=%.3e %s\n", line.passed ? "PASS" : "FAIL",
                line.suite.c_str(), line.name.c_str(), line.residual, line.tolerance,
                line.detail.c_str());
    doc.push_back({{"suite", line.suite},
                   {"name", line.name},
                   {"passed", line.passed},
                   {"residual", std::isfinite(line.residual) ? nlohmann::json(line.residual)
                                                             : nlohmann::json(nullptr)},
                   {"tolerance", line.tolerance},
                   {"detail", line.detail}});
  }
  if (!out.empty()) modalgame::WriteTextFile(out, Dump(doc));
  return all_passed ? kExitOk : kExitError;
}

int RunReport(const std::string& result_path, const std::string& out) {
  const nlohmann::json doc = modalgame::ReadJsonFile(result_path);
  if (!doc.contains("scenario_file") || !doc.contains("config")) {
    throw Error(ErrorCode::kParseError, result_path + ": missing scenario_file or config");
  }
  const modalgame::Scenario base =
      modalgame::LoadScenario(doc.at("scenario_file").get<std::string>());
  const modalgame::Scenario scenario =
      modalgame::WithConfig(base, modalgame::ParseScenarioConfig(doc.at("config")));
  const modalgame::Market market = modalgame::BuildScenarioMarket(scenario);
  const modalgame::EquilibriumResult result = modalgame::ResultFromJson(doc);
  if (static_cast<int>(result.operators.size()) != market.num_operators()) {
    throw Error(ErrorCode::kValidationError, "result does not match its scenario");
  }
  EnsureDirectory(out);
  WriteReports(out, modalgame::BuildReport(market, result));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equilibrium pricing for AMoD operators competing with public transport"};
  app.require_subcommand(1);

  IterationFlags solve_flags;
  std::string solve_scenario, solve_out = "out";
  CLI::App* solve = app.add_subcommand("solve", "solve one scenario");
  solve->add_option("scenario", solve_scenario, "scenario JSON")->required();
  solve->add_option("--out", solve_out, "output directory");
  AddIterationFlags(solve, &solve_flags);

  IterationFlags sweep_flags;
  std::string sweep_scenario, sweep_spec, sweep_out = "sweep.csv";
  int parallelism = 1;
  CLI::App* sweep = app.add_subcommand("sweep", "run a parameter sweep");
  sweep->add_option("scenario", sweep_scenario, "scenario JSON")->required();
  sweep->add_option("sweep_spec", sweep_spec, "sweep spec JSON")->required();
  sweep->add_option("--out", sweep_out, "output CSV");
  sweep->add_option("--parallelism", parallelism, "concurrent sweep points")
      ->check(CLI::Range(1, 1024));
  AddIterationFlags(sweep, &sweep_flags);

  std::string suite, oracle_out;
  std::uint64_t oracle_seed = 1;
  CLI::App* oracle = app.add_subcommand("oracle-check", "run oracle suites");
  oracle->add_option("suite", suite, "basic-example, grid-oracle, monte-carlo, "
                                     "epsilon-certificate or all")
      ->required()
      ->check(CLI::IsMember(
          {"basic-example", "grid-oracle", "monte-carlo", "epsilon-certificate", "all"}));
  oracle->add_option("--out", oracle_out, "JSON results file");
  oracle->add_option("--seed", oracle_seed, "seed for random instances");

  std::string result_path, report_out = "out";
  CLI::App* report = app.add_subcommand("report", "rebuild reports from a result file");
  report->add_option("result", result_path, "result.json")->required();
  report->add_option("--out", report_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*solve) return RunSolve(solve_scenario, solve_out, solve_flags);
    if (*sweep) return RunSweepCommand(sweep_scenario, sweep_spec, sweep_out, parallelism,
                                       sweep_flags);
    if (*oracle) return RunOracleCheck(suite, oracle_out, oracle_seed);
    if (*report) return RunReport(result_path, report_out);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitError;
  }
  return kExitError;
}
