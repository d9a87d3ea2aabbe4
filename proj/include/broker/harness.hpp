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

#ifndef BROKER_HARNESS_HPP_
#define BROKER_HARNESS_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "broker/market.hpp"
#include "broker/strategies.hpp"

namespace broker::harness {

// A config error names the offending field; the CLI maps it to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// ---------------------------------------------------------------------------
// Experiment configuration (schema_version 1).

struct ExperimentConfig {
  int schema_version = 1;
  std::string instance_id = "instance";
  MarketInstance instance;
  StrategyConfig strategy;
  bool cost_sampled = true;           // "cost_mode": "sampled" | "fixed"
  std::vector<double> fixed_costs;    // required when fixed
  uint64_t seed = 0;
  int64_t samples = 100000;
  bool oracle = false;
  int oracle_m = 50;
  bool payments = true;
  std::optional<PriceMenu> menu;      // simulate this menu instead of a strategy
  std::string out;
};

ExperimentConfig parse_experiment_config(const std::string& json_text);
ExperimentConfig load_experiment_config(const std::string& path);

// Distribution grammar: {"family": "exponential", "rate": g},
// {"family": "uniform", "lo": a, "hi": b},
// {"family": "shifted-exponential", "rate": g, "shift": s},
// {"family": "truncated-normal", "mean": m, "sigma": s}.
DistributionSpec parse_distribution_json(const std::string& json_text);
std::string distribution_to_json(const DistributionSpec& d);

// ---------------------------------------------------------------------------
// Reports.

struct ItemReport {
  int item = 0;
  bool shown = false;
  double price = 0.0;
  double virtual_cost = 0.0;
  double sale_prob = 0.0;
  double expected_payment = 0.0;
  double payment_if_sold = 0.0;
};

struct RevenueReport {
  std::string instance_id;
  std::string strategy;
  int n = 0;
  int k = 0;
  uint64_t seed = 0;
  double revenue_analytic = 0.0;
  double revenue_mc = 0.0;
  double mc_stderr = 0.0;
  std::optional<double> oracle_revenue;
  std::optional<double> ratio;
  double runtime_ms = 0.0;
  std::optional<double> reserve;
  std::vector<double> costs;
  std::vector<ItemReport> items;
};

RevenueReport run_experiment(const ExperimentConfig& config);

// Frozen CSV schema: instance_id, strategy, n, k, seed, revenue_analytic,
// revenue_mc, mc_stderr, oracle_revenue, ratio, runtime_ms, then per-item
// blocks (shown, price, virtual_cost, sale_prob, payment_if_sold). Note
// runtime_ms is wall-clock and not covered by the determinism contract.
std::string report_csv_header(int max_items);
std::string report_csv_row(const RevenueReport& report, int max_items);

// ---------------------------------------------------------------------------
// Suites.

struct SuiteGenerator {
  int count = 0;
  int n_min = 2;
  int n_max = 3;
  uint64_t seed = 0;
};

struct SuiteConfig {
  int schema_version = 1;
  std::vector<ExperimentConfig> experiments;  // explicit list, or ...
  std::optional<SuiteGenerator> generator;    // ... generated instances
  StrategyConfig strategy;                    // applied to generated instances
  int64_t samples = 100000;
  bool oracle = true;
  int oracle_m = 50;
  bool payments = false;
  std::string out;
};

SuiteConfig parse_suite_config(const std::string& json_text);
SuiteConfig load_suite_config(const std::string& path);

struct SuiteRow {
  bool ok = false;
  std::string error;
  RevenueReport report;
};

struct SuiteSummary {
  std::vector<SuiteRow> rows;
  int failed = 0;
  std::optional<double> min_ratio;
  std::optional<double> mean_ratio;
};

// Rows are computed in parallel but merged in config order.
SuiteSummary run_suite(const SuiteConfig& config);
std::string suite_csv(const SuiteSummary& summary);

// ---------------------------------------------------------------------------
// Random instances (deterministic in (seed, id)).

MarketInstance random_instance(uint64_t seed, uint64_t id, int n);
std::vector<double> sample_costs(const MarketInstance& instance, uint64_t seed,
                                 uint64_t id);

// ---------------------------------------------------------------------------
// Acceptance checks.

struct CheckRow {
  int criterion = 0;
  std::string case_id;
  std::string metric;
  double value = 0.0;
  double threshold = 0.0;
  std::string cmp;  // "<=" or ">="
  bool pass = false;
};

struct CheckOptions {
  uint64_t seed = 20260810;
  int threads = 0;                // 0 = library default
  std::vector<int> criteria;      // empty = 1..10
  std::ostream* log = nullptr;    // per-criterion pass/fail lines
  std::string cli_path;           // used by criterion 11 to respawn `check`
};

struct CriterionOutcome {
  int criterion = 0;
  std::string name;
  bool pass = true;
};

struct CheckReport {
  std::vector<CheckRow> rows;
  std::vector<CriterionOutcome> criteria;
  bool all_pass = true;
};

CheckReport run_check(const CheckOptions& options);
// Deterministic CSV (no timing fields): byte-identical for equal
// (seed, criteria) at any thread count.
std::string check_csv(const CheckReport& report);

// "%.17g" formatting used by every CSV writer.
std::string format_double(double x);

}  // namespace broker::harness

#endif  // BROKER_HARNESS_HPP_
