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

#include "modalgame/report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "modalgame/error.h"

namespace modalgame {
namespace {

using nlohmann::json;

constexpr double kInf = std::numeric_limits<double>::infinity();

json FiniteOrNull(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double NumberOrInf(const json& v) { return v.is_null() ? kInf : v.get<double>(); }

json QuantilesToJson(const QuantileSummary& q) {
  if (!q.defined) return nullptr;
  return {{"min", q.min}, {"q25", q.q25}, {"median", q.median}, {"q75", q.q75}, {"max", q.max}};
}

}  // namespace

std::string_view LocalClassName(LocalClass c) {
  switch (c) {
    case LocalClass::kPtOnly:
      return "pt_only";
    case LocalClass::kAmodOnly:
      return "amod_only";
    case LocalClass::kOp1Only:
      return "op1_only";
    case LocalClass::kOp2Only:
      return "op2_only";
    case LocalClass::kWalkOnly:
      return "walk_only";
    case LocalClass::kMixed:
      return "mixed";
  }
  return "unknown";
}

QuantileSummary WeightedQuantiles(std::vector<std::pair<double, double>> value_weight) {
  QuantileSummary q;
  double total = 0.0;
  for (const auto& [v, w] : value_weight) total += w;
  if (value_weight.empty() || !(total > 0.0)) return q;
  std::sort(value_weight.begin(), value_weight.end());
  auto at = [&](double level) {
    double cumulative = 0.0;
    for (const auto& [v, w] : value_weight) {
      cumulative += w;
      if (cumulative >= level * total * (1.0 - 1e-12)) return v;
    }
    return value_weight.back().first;
  };
  q.defined = true;
  q.min = value_weight.front().first;
  q.q25 = at(0.25);
  q.median = at(0.5);
  q.q75 = at(0.75);
  q.max = value_weight.back().first;
  return q;
}

ModalReport BuildReport(const Market& market, const EquilibriumResult& result) {
  const int m = market.num_operators();
  const double tax = market.config.service_tax;
  ModalReport report;
  report.mode = result.mode;
  report.converged = result.converged;
  report.iterations_used = result.iterations_used;
  report.achieved_epsilon = result.achieved_epsilon;

  double total_flow = 0.0, total_rate = 0.0;
  for (int i = 0; i < market.num_demands(); ++i) {
    const DemandContext& ctx = market.operators[0].contexts[i];
    DemandRow row;
    row.origin = market.graph.external_vertex_id(ctx.demand.origin);
    row.destination = market.graph.external_vertex_id(ctx.demand.destination);
    row.rate = ctx.demand.rate_per_s;
    row.op1 = result.operators[0].served[i];
    row.op2 = m > 1 ? result.operators[1].served[i] : 0.0;
    const double rest = std::max(0.0, row.rate - row.op1 - row.op2);
    (ctx.transit_path_has_transit_arc ? row.transit : row.walk) = rest;
    for (int j = 0; j < m; ++j) row.prices.push_back(result.operators[j].prices[i]);

    const double threshold = kUsedShareThreshold * row.rate;
    const bool uses1 = row.op1 > threshold, uses2 = row.op2 > threshold;
    const bool uses_pt = rest > threshold || (!uses1 && !uses2);
    if (!uses1 && !uses2) {
      row.local_class = ctx.transit_path_has_transit_arc ? LocalClass::kPtOnly : LocalClass::kWalkOnly;
    } else if (uses_pt) {
      row.local_class = LocalClass::kMixed;
    } else if (uses1 && uses2) {
      row.local_class = LocalClass::kAmodOnly;
    } else if (m == 1) {
      row.local_class = LocalClass::kAmodOnly;
    } else {
      row.local_class = uses1 ? LocalClass::kOp1Only : LocalClass::kOp2Only;
    }
    report.local_fractions[static_cast<int>(row.local_class)] += row.rate;
    report.shares.op1 += row.op1;
    report.shares.op2 += row.op2;
    report.shares.transit += row.transit;
    report.shares.walk_only += row.walk;
    total_flow += row.op1 + row.op2 + row.transit + row.walk;
    total_rate += row.rate;
    report.demands.push_back(std::move(row));
  }
  if (total_flow > 0.0) {
    report.shares.op1 /= total_flow;
    report.shares.op2 /= total_flow;
    report.shares.transit /= total_flow;
    report.shares.walk_only /= total_flow;
  }
  if (total_rate > 0.0) {
    for (double& f : report.local_fractions) f /= total_rate;
  }

  for (int j = 0; j < m; ++j) {
    const OperatorOutcome& o = result.operators[j];
    const OperatorView& view = market.operators[j];
    OperatorTotals t;
    t.profit = o.profit;
    t.revenue = o.revenue;
    t.service_cost = o.service_cost;
    t.rebalancing_cost = o.rebalancing_cost;
    t.tax_paid = o.tax_paid;
    t.vehicles = o.vehicles;
    t.fleet_size = view.config.fleet_size;
    report.tax_collected += o.tax_paid;
    report.totals.push_back(t);

    double rate_time = 0.0;
    for (int i = 0; i < market.num_demands(); ++i) {
      rate_time += o.served[i] * view.contexts[i].t_road_h;
    }
    std::vector<std::pair<double, double>> shares;
    for (int i = 0; i < market.num_demands(); ++i) {
      const double x = o.served[i], p = o.prices[i];
      if (!(x > 0.0) || !(p > 0.0)) continue;
      const double rebalancing =
          rate_time > 0.0 ? o.rebalancing_cost * view.contexts[i].t_road_h / rate_time : 0.0;
      const double per_trip = (1.0 - tax) * p - view.contexts[i].service_cost_usd - rebalancing;
      shares.emplace_back(per_trip / p, x);
    }
    report.profit_share_per_trip.push_back(WeightedQuantiles(std::move(shares)));
  }
  return report;
}

json ReportToJson(const ModalReport& r) {
  json doc;
  doc["mode"] = std::string(IterationModeName(r.mode));
  doc["converged"] = r.converged;
  doc["iterations_used"] = r.iterations_used;
  doc["achieved_epsilon"] = FiniteOrNull(r.achieved_epsilon);
  doc["shares"] = {{"op1", r.shares.op1},
                   {"op2", r.shares.op2},
                   {"transit", r.shares.transit},
                   {"walk_only", r.shares.walk_only}};
  json local;
  for (int k = 0; k < kNumLocalClasses; ++k) {
    local[std::string(LocalClassName(static_cast<LocalClass>(k)))] = r.local_fractions[k];
  }
  doc["local_classification"] = local;
  doc["operators"] = json::array();
  for (std::size_t j = 0; j < r.totals.size(); ++j) {
    const OperatorTotals& t = r.totals[j];
    doc["operators"].push_back({{"profit_usd_per_s", t.profit},
                                {"revenue_usd_per_s", t.revenue},
                                {"service_cost_usd_per_s", t.service_cost},
                                {"rebalancing_cost_usd_per_s", t.rebalancing_cost},
                                {"tax_paid_usd_per_s", t.tax_paid},
                                {"vehicles", t.vehicles},
                                {"fleet_size", t.fleet_size},
                                {"profit_share_per_trip", QuantilesToJson(r.profit_share_per_trip[j])}});
  }
  doc["tax_collected_usd_per_s"] = r.tax_collected;
  doc["demands"] = json::array();
  for (const DemandRow& d : r.demands) {
    doc["demands"].push_back({{"origin", d.origin},
                              {"destination", d.destination},
                              {"rate_per_s", d.rate},
                              {"op1", d.op1},
                              {"op2", d.op2},
                              {"transit", d.transit},
                              {"walk", d.walk},
                              {"prices", d.prices},
                              {"class", std::string(LocalClassName(d.local_class))}});
  }
  return doc;
}

std::string FormatFixed(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.9f", value);
  std::string s(buffer);
  if (s.find_first_not_of("-0.") == std::string::npos && s[0] == '-') s.erase(0, 1);
  return s;
}

std::string SummaryCsvHeader(const std::string& label_column) {
  std::string h = label_column +
                  ",mode,converged,iterations,achieved_epsilon,share_op1,share_op2,"
                  "share_transit,share_walk_only";
  for (int j = 1; j <= 2; ++j) {
    const std::string s = std::to_string(j);
    h += ",profit_op" + s + ",revenue_op" + s + ",service_cost_op" + s + ",rebalancing_cost_op" +
         s + ",tax_op" + s + ",vehicles_op" + s + ",profit_share_median_op" + s;
  }
  h += ",tax_collected";
  for (int k = 0; k < kNumLocalClasses; ++k) {
    h += ",";
    h += LocalClassName(static_cast<LocalClass>(k));
  }
  return h + "\n";
}

std::string SummaryCsvRow(const std::string& label, const ModalReport& r) {
  std::string row = label + "," + std::string(IterationModeName(r.mode)) + "," +
                    (r.converged ? "true" : "false") + "," + std::to_string(r.iterations_used) +
                    "," + FormatFixed(r.achieved_epsilon) + "," + FormatFixed(r.shares.op1) +
                    "," + FormatFixed(r.shares.op2) + "," + FormatFixed(r.shares.transit) + "," +
                    FormatFixed(r.shares.walk_only);
  for (std::size_t j = 0; j < 2; ++j) {
    const OperatorTotals t = j < r.totals.size() ? r.totals[j] : OperatorTotals{};
    const QuantileSummary q =
        j < r.profit_share_per_trip.size() ? r.profit_share_per_trip[j] : QuantileSummary{};
    for (double v : {t.profit, t.revenue, t.service_cost, t.rebalancing_cost, t.tax_paid,
                     t.vehicles}) {
      row += "," + FormatFixed(v);
    }
    row += "," + (q.defined ? FormatFixed(q.median) : std::string());
  }
  row += "," + FormatFixed(r.tax_collected);
  for (double f : r.local_fractions) row += "," + FormatFixed(f);
  return row + "\n";
}

json ResultToJson(const Market& market, const EquilibriumResult& result,
                  const std::string& scenario_file, const json& scenario_config) {
  json doc;
  doc["scenario_file"] = scenario_file;
  doc["config"] = scenario_config;
  doc["mode"] = std::string(IterationModeName(result.mode));
  doc["converged"] = result.converged;
  doc["iterations_used"] = result.iterations_used;
  doc["epsilon"] = result.epsilon;
  doc["achieved_epsilon"] = FiniteOrNull(result.achieved_epsilon);
  doc["seed"] = result.seed;
  doc["operators"] = json::array();
  for (const OperatorOutcome& o : result.operators) {
    const PricingStrategy strategy = MakePricingStrategy(market, o.prices);
    json pricing = json::array();
    for (std::size_t k = 0; k < strategy.pairs().size(); ++k) {
      pricing.push_back({{"origin", market.graph.external_vertex_id(strategy.pairs()[k].first)},
                         {"destination",
                          market.graph.external_vertex_id(strategy.pairs()[k].second)},
                         {"price", strategy.prices()[k]}});
    }
    doc["operators"].push_back({{"prices", o.prices},
                                {"served", o.served},
                                {"rebalancing", o.rebalancing},
                                {"revenue", o.revenue},
                                {"service_cost", o.service_cost},
                                {"rebalancing_cost", o.rebalancing_cost},
                                {"tax_paid", o.tax_paid},
                                {"profit", o.profit},
                                {"vehicles", o.vehicles},
                                {"balance_residual", o.balance_residual},
                                {"feasible", o.feasible},
                                {"pricing_strategy", pricing}});
  }
  doc["trace"] = json::array();
  for (const TraceEntry& t : result.trace) {
    json improvements = json::array();
    for (double v : t.improvements) improvements.push_back(FiniteOrNull(v));
    doc["trace"].push_back({{"iteration", t.iteration},
                            {"operator", t.op},
                            {"profits", t.profits},
                            {"improvements", improvements}});
  }
  return doc;
}

EquilibriumResult ResultFromJson(const json& doc) {
  EquilibriumResult r;
  try {
    const auto mode = ParseIterationMode(doc.at("mode").get<std::string>());
    if (!mode) throw Error(ErrorCode::kParseError, "unknown mode");
    r.mode = *mode;
    r.converged = doc.at("converged").get<bool>();
    r.iterations_used = doc.at("iterations_used").get<int>();
    r.epsilon = doc.at("epsilon").get<double>();
    r.achieved_epsilon = NumberOrInf(doc.at("achieved_epsilon"));
    r.seed = doc.at("seed").get<std::uint64_t>();
    for (const json& o : doc.at("operators")) {
      OperatorOutcome out;
      out.prices = o.at("prices").get<std::vector<double>>();
      out.served = o.at("served").get<std::vector<double>>();
      out.rebalancing = o.at("rebalancing").get<std::vector<double>>();
      out.revenue = o.at("revenue").get<double>();
      out.service_cost = o.at("service_cost").get<double>();
      out.rebalancing_cost = o.at("rebalancing_cost").get<double>();
      out.tax_paid = o.at("tax_paid").get<double>();
      out.profit = o.at("profit").get<double>();
      out.vehicles = o.at("vehicles").get<double>();
      out.balance_residual = o.at("balance_residual").get<double>();
      out.feasible = o.at("feasible").get<bool>();
      r.operators.push_back(std::move(out));
    }
    for (const json& t : doc.at("trace")) {
      TraceEntry e;
      e.iteration = t.at("iteration").get<int>();
      e.op = t.at("operator").get<int>();
      e.profits = t.at("profits").get<std::vector<double>>();
      for (const json& v : t.at("improvements")) e.improvements.push_back(NumberOrInf(v));
      r.trace.push_back(std::move(e));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("result document: ") + e.what());
  }
  return r;
}

void WriteTextFile(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  out << contents;
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + path.string());
}

}  // namespace modalgame
