// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "broker/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "broker/buyer.hpp"
#include "broker/mc.hpp"
#include "broker/oracle.hpp"
#include "broker/payments.hpp"
#include "broker/rng.hpp"

namespace broker::harness {

using nlohmann::json;

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace {

double require_number(const json& j, const std::string& field) {
  if (!j.contains(field) || !j[field].is_number()) {
    throw ConfigError(field, "missing or non-numeric field");
  }
  return j[field].get<double>();
}

DistributionSpec distribution_from_json(const json& j,
                                        const std::string& where) {
  if (!j.is_object() || !j.contains("family") || !j["family"].is_string()) {
    throw ConfigError(where + ".family", "missing distribution family");
  }
  const std::string family = j["family"].get<std::string>();
  try {
    if (family == "exponential") {
      return DistributionSpec::exponential(require_number(j, "rate"));
    }
    if (family == "uniform") {
      return DistributionSpec::uniform(require_number(j, "lo"),
                                       require_number(j, "hi"));
    }
    if (family == "shifted-exponential") {
      return DistributionSpec::shifted_exponential(require_number(j, "rate"),
                                                   require_number(j, "shift"));
    }
    if (family == "truncated-normal") {
      return DistributionSpec::truncated_normal(require_number(j, "mean"),
                                                require_number(j, "sigma"));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(where, e.what());
  }
  throw ConfigError(where + ".family", "unknown family '" + family + "'");
}

json distribution_to_json_obj(const DistributionSpec& d) {
  json j;
  switch (d.family()) {
    case Family::kExponential:
      j["family"] = "exponential";
      j["rate"] = d.rate();
      break;
    case Family::kShiftedExponential:
      j["family"] = "shifted-exponential";
      j["rate"] = d.rate();
      j["shift"] = d.shift_amount();
      break;
    case Family::kUniform:
      j["family"] = "uniform";
      j["lo"] = d.support().lo;
      j["hi"] = d.support().hi;
      break;
    case Family::kTruncatedNormal:
      j["family"] = "truncated-normal";
      j["mean"] = d.mean();
      j["sigma"] = d.sigma();
      break;
  }
  return j;
}

MarketInstance instance_from_json(const json& j) {
  if (!j.is_object() || !j.contains("items") || !j["items"].is_array() ||
      j["items"].empty()) {
    throw ConfigError("instance.items", "instance needs a nonempty items array");
  }
  MarketInstance instance;
  int i = 0;
  for (const auto& item : j["items"]) {
    const std::string where = "instance.items[" + std::to_string(i) + "]";
    if (!item.contains("value") || !item.contains("cost")) {
      throw ConfigError(where, "item needs 'value' and 'cost' distributions");
    }
    instance.items.push_back(
        {distribution_from_json(item["value"], where + ".value"),
         distribution_from_json(item["cost"], where + ".cost")});
    ++i;
  }
  return instance;
}

StrategyConfig strategy_from_json(const json& j) {
  StrategyConfig cfg;
  if (!j.contains("strategy") || !j["strategy"].is_string()) {
    throw ConfigError("strategy", "missing strategy name");
  }
  const std::string name = j["strategy"].get<std::string>();
  const auto kind = strategy_from_name(name);
  if (!kind) {
    throw ConfigError("strategy", "unknown strategy '" + name + "'");
  }
  cfg.kind = *kind;
  if (j.contains("k")) {
    if (!j["k"].is_number_integer() || j["k"].get<int>() < 1) {
      throw ConfigError("k", "k must be a positive integer");
    }
    cfg.k = j["k"].get<int>();
  }
  if (j.contains("order")) {
    if (!j["order"].is_array()) throw ConfigError("order", "must be an array");
    cfg.order = j["order"].get<std::vector<int>>();
  }
  if (j.contains("estimator_draws")) {
    cfg.estimator_draws = j["estimator_draws"].get<int64_t>();
    if (cfg.estimator_draws < 1) {
      throw ConfigError("estimator_draws", "must be at least 1");
    }
  }
  return cfg;
}

PriceMenu menu_from_json(const json& j) {
  PriceMenu menu;
  const std::string mode = j.value("mode", std::string("full"));
  if (mode == "full") {
    menu.mode = MenuMode::kFull;
  } else if (mode == "k-limited") {
    menu.mode = MenuMode::kKLimited;
  } else if (mode == "cascade") {
    menu.mode = MenuMode::kCascade;
  } else {
    throw ConfigError("menu.mode", "unknown mode '" + mode + "'");
  }
  if (!j.contains("shown") || !j.contains("prices")) {
    throw ConfigError("menu", "menu needs 'shown' and 'prices'");
  }
  menu.shown = j["shown"].get<std::vector<int>>();
  menu.prices = j["prices"].get<std::vector<double>>();
  return menu;
}

json parse_json_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ConfigError("json", "malformed JSON");
  return j;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentConfig experiment_from_json(const json& j) {
  ExperimentConfig cfg;
  if (j.contains("schema_version")) {
    cfg.schema_version = j["schema_version"].get<int>();
    if (cfg.schema_version != 1) {
      throw ConfigError("schema_version", "only schema_version 1 is supported");
    }
  }
  if (!j.contains("instance")) {
    throw ConfigError("instance", "missing instance");
  }
  cfg.instance = instance_from_json(j["instance"]);
  cfg.instance_id = j.value("instance_id", std::string("instance"));
  cfg.strategy = strategy_from_json(j);
  const std::string cost_mode = j.value("cost_mode", std::string("sampled"));
  if (cost_mode == "sampled") {
    cfg.cost_sampled = true;
  } else if (cost_mode == "fixed") {
    cfg.cost_sampled = false;
    if (!j.contains("costs") || !j["costs"].is_array()) {
      throw ConfigError("costs", "fixed cost mode needs a 'costs' array");
    }
    cfg.fixed_costs = j["costs"].get<std::vector<double>>();
    if (cfg.fixed_costs.size() != cfg.instance.items.size()) {
      throw ConfigError("costs", "costs array must have one entry per item");
    }
  } else {
    throw ConfigError("cost_mode", "must be 'sampled' or 'fixed'");
  }
  if (j.contains("seed")) cfg.seed = j["seed"].get<uint64_t>();
  if (j.contains("samples")) {
    cfg.samples = j["samples"].get<int64_t>();
    if (cfg.samples < 1) throw ConfigError("samples", "must be at least 1");
  }
  cfg.oracle = j.value("oracle", false);
  if (j.contains("oracle_m")) {
    cfg.oracle_m = j["oracle_m"].get<int>();
    if (cfg.oracle_m < 2) throw ConfigError("oracle_m", "must be at least 2");
  }
  cfg.payments = j.value("payments", true);
  if (j.contains("menu")) cfg.menu = menu_from_json(j["menu"]);
  cfg.out = j.value("out", std::string());
  if (cfg.strategy.kind == StrategyKind::kKLimited &&
      cfg.strategy.k > cfg.instance.n()) {
    throw ConfigError("k", "k exceeds the number of items");
  }
  cfg.strategy.seed = cfg.seed;
  return cfg;
}

}  // namespace

DistributionSpec parse_distribution_json(const std::string& json_text) {
  return distribution_from_json(parse_json_text(json_text), "distribution");
}

std::string distribution_to_json(const DistributionSpec& d) {
  return distribution_to_json_obj(d).dump();
}

ExperimentConfig parse_experiment_config(const std::string& json_text) {
  return experiment_from_json(parse_json_text(json_text));
}

ExperimentConfig load_experiment_config(const std::string& path) {
  return parse_experiment_config(read_file(path));
}

SuiteConfig parse_suite_config(const std::string& json_text) {
  const json j = parse_json_text(json_text);
  SuiteConfig cfg;
  if (j.contains("schema_version")) {
    cfg.schema_version = j["schema_version"].get<int>();
    if (cfg.schema_version != 1) {
      throw ConfigError("schema_version", "only schema_version 1 is supported");
    }
  }
  if (j.contains("experiments")) {
    if (!j["experiments"].is_array()) {
      throw ConfigError("experiments", "must be an array");
    }
    for (const auto& e : j["experiments"]) {
      cfg.experiments.push_back(experiment_from_json(e));
    }
  }
  if (j.contains("generator")) {
    const auto& g = j["generator"];
    SuiteGenerator gen;
    gen.count = g.value("count", 0);
    if (gen.count < 0) throw ConfigError("generator.count", "must be >= 0");
    gen.n_min = g.value("n_min", 2);
    gen.n_max = g.value("n_max", gen.n_min);
    if (gen.n_min < 1 || gen.n_max < gen.n_min) {
      throw ConfigError("generator.n_min", "need 1 <= n_min <= n_max");
    }
    gen.seed = g.value("seed", uint64_t{0});
    cfg.generator = gen;
    cfg.strategy = strategy_from_json(j);
  } else if (cfg.experiments.empty() && !j.contains("experiments")) {
    throw ConfigError("suite", "needs 'experiments' or 'generator'");
  }
  if (j.contains("samples")) cfg.samples = j["samples"].get<int64_t>();
  cfg.oracle = j.value("oracle", true);
  cfg.oracle_m = j.value("oracle_m", 50);
  cfg.payments = j.value("payments", false);
  cfg.out = j.value("out", std::string());
  return cfg;
}

SuiteConfig load_suite_config(const std::string& path) {
  return parse_suite_config(read_file(path));
}

// ---------------------------------------------------------------------------
// Random instances.

namespace {

DistributionSpec random_value_dist(uint64_t seed, uint64_t stream,
                                   uint64_t pos_base) {
  const double pick = rng::uniform01(seed, stream, pos_base);
  const double u1 = rng::uniform01(seed, stream, pos_base + 1);
  const double u2 = rng::uniform01(seed, stream, pos_base + 2);
  switch (static_cast<int>(pick * 4.0)) {
    case 0:
      return DistributionSpec::uniform(0.6 * u1, 0.6 * u1 + 0.5 + 1.5 * u2);
    case 1:
      return DistributionSpec::exponential(0.6 + 1.9 * u1);
    case 2:
      return DistributionSpec::shifted_exponential(0.8 + 1.7 * u1, 0.5 * u2);
    default:
      return DistributionSpec::truncated_normal(0.3 + 0.9 * u1,
                                                0.2 + 0.6 * u2);
  }
}

DistributionSpec random_cost_dist(uint64_t seed, uint64_t stream,
                                  uint64_t pos_base) {
  const double pick = rng::uniform01(seed, stream, pos_base);
  const double u1 = rng::uniform01(seed, stream, pos_base + 1);
  const double u2 = rng::uniform01(seed, stream, pos_base + 2);
  switch (static_cast<int>(pick * 4.0)) {
    case 0:
      return DistributionSpec::uniform(0.0, 0.15 + 0.35 * u1);
    case 1:
      return DistributionSpec::exponential(3.0 + 5.0 * u1);
    case 2:
      return DistributionSpec::shifted_exponential(4.0 + 4.0 * u1, 0.1 * u2);
    default:
      return DistributionSpec::truncated_normal(0.05 + 0.25 * u1,
                                                0.05 + 0.15 * u2);
  }
}

}  // namespace

MarketInstance random_instance(uint64_t seed, uint64_t id, int n) {
  MarketInstance instance;
  const uint64_t stream = rng::kStreamGenerator + id;
  for (int i = 0; i < n; ++i) {
    const uint64_t pos = static_cast<uint64_t>(i) * 8;
    instance.items.push_back({random_value_dist(seed, stream, pos),
                              random_cost_dist(seed, stream, pos + 4)});
  }
  return instance;
}

std::vector<double> sample_costs(const MarketInstance& instance, uint64_t seed,
                                 uint64_t id) {
  std::vector<double> costs(instance.n());
  for (int i = 0; i < instance.n(); ++i) {
    costs[i] = instance.items[i].cost.sample(seed, rng::kStreamCosts + id,
                                             static_cast<uint64_t>(i));
  }
  return costs;
}

// ---------------------------------------------------------------------------
// Experiments.

RevenueReport run_experiment(const ExperimentConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  const MarketInstance& instance = config.instance;
  RevenueReport report;
  report.instance_id = config.instance_id;
  report.n = instance.n();
  report.seed = config.seed;
  report.k = config.strategy.kind == StrategyKind::kKLimited
                 ? config.strategy.k
                 : 0;
  report.strategy = strategy_name(config.strategy.kind);

  std::vector<double> costs = config.cost_sampled
                                  ? sample_costs(instance, config.seed, 0)
                                  : config.fixed_costs;
  report.costs = costs;

  StrategyResult result;
  if (config.menu) {
    validate_menu(*config.menu, instance.n());
    result.menu = *config.menu;
    result.virtual_costs = reduce_costs(instance, costs);
    report.strategy = "menu";
  } else {
    StrategyConfig strat = config.strategy;
    strat.seed = config.seed;
    result = run_strategy(instance, costs, strat);
  }
  report.reserve = result.diag.reserve;

  const auto probs = purchase_probabilities(instance, result.menu);
  report.revenue_analytic =
      expected_revenue(instance, result.menu, result.virtual_costs);
  const auto sim = mc::simulate_menu(instance, result.menu,
                                     result.virtual_costs, config.samples,
                                     config.seed);
  report.revenue_mc = sim.revenue_mean;
  report.mc_stderr = sim.revenue_stderr;

  report.items.resize(instance.n());
  for (int i = 0; i < instance.n(); ++i) {
    auto& item = report.items[i];
    item.item = i;
    item.virtual_cost = result.virtual_costs[i];
  }
  for (size_t kk = 0; kk < result.menu.shown.size(); ++kk) {
    auto& item = report.items[result.menu.shown[kk]];
    item.shown = true;
    item.price = result.menu.prices[kk];
    item.sale_prob = probs[kk];
  }
  if (config.payments && !config.menu) {
    const MenuRule rule = make_rule(instance, config.strategy);
    const SaleProbFn prob = analytic_sale_prob(instance);
    for (int i = 0; i < instance.n(); ++i) {
      const PaymentSchedule p = seller_payment(rule, instance, costs, i, prob);
      report.items[i].expected_payment = p.expected_payment;
      report.items[i].payment_if_sold = p.payment_if_sold;
    }
  }
  if (config.oracle) {
    const auto disc = oracle::discretize(instance, costs, config.oracle_m);
    double opt = 0.0;
    if (result.menu.mode == MenuMode::kCascade) {
      opt = oracle::oracle_cascade(disc).revenue;
    } else {
      opt = oracle::oracle_full(disc).revenue;
    }
    report.oracle_revenue = opt;
    const double strat_disc = oracle::eval_menu(disc, result.menu);
    report.ratio = opt > 1e-12 ? strat_disc / opt : 1.0;
  }
  const auto t1 = std::chrono::steady_clock::now();
  report.runtime_ms =
      std::chrono::duration<double, std::milli>(t1 - t0).count();
  return report;
}

std::string report_csv_header(int max_items) {
  std::string h =
      "instance_id,strategy,n,k,seed,revenue_analytic,revenue_mc,mc_stderr,"
      "oracle_revenue,ratio,runtime_ms";
  for (int i = 0; i < max_items; ++i) {
    const std::string p = "item" + std::to_string(i) + "_";
    h += "," + p + "shown," + p + "price," + p + "virtual_cost," + p +
         "sale_prob," + p + "payment_if_sold";
  }
  return h;
}

std::string report_csv_row(const RevenueReport& report, int max_items) {
  std::ostringstream row;
  row << report.instance_id << ',' << report.strategy << ',' << report.n << ','
      << report.k << ',' << report.seed << ','
      << format_double(report.revenue_analytic) << ','
      << format_double(report.revenue_mc) << ','
      << format_double(report.mc_stderr) << ',';
  if (report.oracle_revenue) row << format_double(*report.oracle_revenue);
  row << ',';
  if (report.ratio) row << format_double(*report.ratio);
  row << ',' << format_double(report.runtime_ms);
  for (int i = 0; i < max_items; ++i) {
    if (i < static_cast<int>(report.items.size())) {
      const auto& item = report.items[i];
      row << ',' << (item.shown ? 1 : 0) << ','
          << (item.shown ? format_double(item.price) : std::string()) << ','
          << format_double(item.virtual_cost) << ','
          << format_double(item.sale_prob) << ','
          << format_double(item.payment_if_sold);
    } else {
      row << ",,,,,";
    }
  }
  return row.str();
}

SuiteSummary run_suite(const SuiteConfig& config) {
  std::vector<ExperimentConfig> experiments = config.experiments;
  if (config.generator) {
    const auto& gen = *config.generator;
    for (int i = 0; i < gen.count; ++i) {
      ExperimentConfig e;
      const int span = gen.n_max - gen.n_min + 1;
      const int n = gen.n_min + static_cast<int>(i % span);
      e.instance = random_instance(gen.seed, static_cast<uint64_t>(i), n);
      e.instance_id = "gen-" + std::to_string(i);
      e.strategy = config.strategy;
      if (e.strategy.kind == StrategyKind::kKLimited) {
        e.strategy.k = std::min(e.strategy.k, n);
      }
      e.seed = gen.seed + static_cast<uint64_t>(i);
      e.samples = config.samples;
      e.oracle = config.oracle;
      e.oracle_m = config.oracle_m;
      e.payments = config.payments;
      experiments.push_back(std::move(e));
    }
  }
  SuiteSummary summary;
  summary.rows.resize(experiments.size());
#pragma omp parallel for schedule(dynamic)
  for (int64_t i = 0; i < static_cast<int64_t>(experiments.size()); ++i) {
    SuiteRow& row = summary.rows[i];
    try {
      row.report = run_experiment(experiments[i]);
      row.ok = true;
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
      row.report.instance_id = experiments[i].instance_id;
    }
  }
  double ratio_sum = 0.0;
  int ratio_count = 0;
  for (const auto& row : summary.rows) {
    if (!row.ok) {
      ++summary.failed;
      continue;
    }
    if (row.report.ratio) {
      ratio_sum += *row.report.ratio;
      ++ratio_count;
      if (!summary.min_ratio || *row.report.ratio < *summary.min_ratio) {
        summary.min_ratio = *row.report.ratio;
      }
    }
  }
  if (ratio_count > 0) summary.mean_ratio = ratio_sum / ratio_count;
  return summary;
}

std::string suite_csv(const SuiteSummary& summary) {
  int max_items = 0;
  for (const auto& row : summary.rows) {
    max_items = std::max(max_items, static_cast<int>(row.report.items.size()));
  }
  std::ostringstream out;
  out << "status," << report_csv_header(max_items) << '\n';
  for (const auto& row : summary.rows) {
    if (row.ok) {
      out << "ok," << report_csv_row(row.report, max_items) << '\n';
    } else {
      out << "error," << row.report.instance_id << ",\"" << row.error << '"'
          << '\n';
    }
  }
  return out.str();
}

}  // namespace broker::harness
