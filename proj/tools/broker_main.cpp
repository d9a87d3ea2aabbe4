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

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "broker/harness.hpp"
#include "broker/oracle.hpp"
#include "broker/parallel.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitResource = 3;
constexpr int kExitCheckFailed = 4;

struct CommonFlags {
  std::string config;
  std::optional<uint64_t> seed;
  std::optional<int64_t> samples;
  std::optional<int> oracle_m;
  std::string out;
  int threads = 0;
};

void add_common(CLI::App* cmd, CommonFlags* flags, bool needs_config = true) {
  auto* opt = cmd->add_option("--config", flags->config, "JSON config path");
  if (needs_config) opt->required();
  cmd->add_option("--seed", flags->seed, "override the config seed");
  cmd->add_option("--samples", flags->samples, "override the sample count");
  cmd->add_option("--oracle-m", flags->oracle_m,
                  "override the oracle discretization size");
  cmd->add_option("--out", flags->out, "output CSV path (default: stdout)");
  cmd->add_option("--threads", flags->threads, "worker thread count");
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    throw broker::harness::ConfigError("out", "cannot write '" + out_path + "'");
  }
  out << text;
}

broker::harness::ExperimentConfig load_with_overrides(const CommonFlags& f) {
  auto cfg = broker::harness::load_experiment_config(f.config);
  if (f.seed) cfg.seed = *f.seed;
  if (f.samples) cfg.samples = *f.samples;
  if (f.oracle_m) cfg.oracle_m = *f.oracle_m;
  if (!f.out.empty()) cfg.out = f.out;
  return cfg;
}

void print_report(const broker::harness::RevenueReport& report) {
  std::cout << "instance " << report.instance_id << "  strategy "
            << report.strategy << "  n=" << report.n << "\n";
  std::cout << "  analytic revenue " << report.revenue_analytic
            << "   mc revenue " << report.revenue_mc << " +/- "
            << report.mc_stderr << "\n";
  if (report.oracle_revenue) {
    std::cout << "  oracle revenue " << *report.oracle_revenue << "   ratio "
              << *report.ratio << "\n";
  }
  for (const auto& item : report.items) {
    std::cout << "  item " << item.item;
    if (item.shown) {
      std::cout << "  price " << item.price;
    } else {
      std::cout << "  (not shown)";
    }
    std::cout << "  theta " << item.virtual_cost << "  P(sale) "
              << item.sale_prob << "  payment-if-sold " << item.payment_if_sold
              << "\n";
  }
}

int cmd_price(const CommonFlags& flags) {
  auto cfg = load_with_overrides(flags);
  const auto report = broker::harness::run_experiment(cfg);
  print_report(report);
  const int items = static_cast<int>(report.items.size());
  emit(broker::harness::report_csv_header(items) + "\n" +
           broker::harness::report_csv_row(report, items) + "\n",
       cfg.out);
  return kExitOk;
}

int cmd_simulate(const CommonFlags& flags) {
  auto cfg = load_with_overrides(flags);
  cfg.payments = false;
  const auto report = broker::harness::run_experiment(cfg);
  print_report(report);
  const int items = static_cast<int>(report.items.size());
  emit(broker::harness::report_csv_header(items) + "\n" +
           broker::harness::report_csv_row(report, items) + "\n",
       cfg.out);
  return kExitOk;
}

int cmd_oracle(const CommonFlags& flags) {
  auto cfg = load_with_overrides(flags);
  const auto costs = cfg.cost_sampled
                         ? broker::harness::sample_costs(cfg.instance,
                                                         cfg.seed, 0)
                         : cfg.fixed_costs;
  const auto disc = broker::oracle::discretize(cfg.instance, costs,
                                               cfg.oracle_m);
  std::ostringstream csv;
  csv << "kind,revenue,detail\n";
  if (cfg.strategy.kind == broker::StrategyKind::kCascade) {
    const auto best = broker::oracle::oracle_cascade(disc);
    std::cout << "optimal cascade revenue " << best.revenue << "  order";
    csv << "cascade," << broker::harness::format_double(best.revenue) << ",";
    for (int i : best.order) {
      std::cout << ' ' << i;
      csv << i << ' ';
    }
    std::cout << "\n";
    csv << "\n";
  } else {
    const auto best = broker::oracle::oracle_full(disc);
    std::cout << "optimal full-attention revenue " << best.revenue
              << "  prices";
    csv << "full," << broker::harness::format_double(best.revenue) << ",";
    for (double p : best.prices) {
      std::cout << ' ' << p;
      csv << p << ' ';
    }
    std::cout << "\n";
    csv << "\n";
  }
  std::cout << "discretization m=" << disc.m << " error bound "
            << disc.error_bound << "\n";
  emit(csv.str(), cfg.out);
  return kExitOk;
}

int cmd_suite(const CommonFlags& flags) {
  auto cfg = broker::harness::load_suite_config(flags.config);
  if (flags.samples) cfg.samples = *flags.samples;
  if (flags.oracle_m) cfg.oracle_m = *flags.oracle_m;
  if (flags.seed && cfg.generator) cfg.generator->seed = *flags.seed;
  if (!flags.out.empty()) cfg.out = flags.out;
  const auto summary = broker::harness::run_suite(cfg);
  emit(broker::harness::suite_csv(summary), cfg.out);
  std::cout << summary.rows.size() << " rows, " << summary.failed
            << " failed";
  if (summary.min_ratio) {
    std::cout << ", min ratio " << *summary.min_ratio << ", mean ratio "
              << *summary.mean_ratio;
  }
  std::cout << "\n";
  return kExitOk;
}

int cmd_check(uint64_t seed, const std::string& criteria_csv,
              const std::string& out, int threads, bool quiet,
              const std::string& cli_path) {
  broker::harness::CheckOptions options;
  options.seed = seed;
  options.threads = threads;
  options.cli_path = cli_path;
  if (!quiet) options.log = &std::cout;
  if (!criteria_csv.empty()) {
    std::stringstream ss(criteria_csv);
    std::string token;
    while (std::getline(ss, token, ',')) {
      options.criteria.push_back(std::stoi(token));
    }
  }
  const auto report = broker::harness::run_check(options);
  emit(broker::harness::check_csv(report), out);
  return report.all_pass ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"posted-price market intermediation toolkit"};
  app.require_subcommand(1);

  CommonFlags price_flags, sim_flags, oracle_flags, suite_flags;
  auto* price = app.add_subcommand("price", "price one instance and compute payments");
  add_common(price, &price_flags);
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo revenue of a menu");
  add_common(simulate, &sim_flags);
  auto* oracle = app.add_subcommand("oracle", "exact optimum on a small instance");
  add_common(oracle, &oracle_flags);
  auto* suite = app.add_subcommand("suite", "batch experiments and ratios");
  add_common(suite, &suite_flags);

  uint64_t check_seed = 20260810;
  std::string check_criteria;
  std::string check_out;
  int check_threads = 0;
  bool check_quiet = false;
  auto* check = app.add_subcommand("check", "run the acceptance suite");
  check->add_option("--seed", check_seed, "acceptance seed");
  check->add_option("--criteria", check_criteria,
                    "comma-separated criteria (default 1-10)");
  check->add_option("--out", check_out, "CSV output path");
  check->add_option("--threads", check_threads, "worker thread count");
  check->add_flag("--quiet", check_quiet, "suppress per-criterion lines");

  CLI11_PARSE(app, argc, argv);

  try {
    if (price->parsed()) {
      broker::par::set_threads(price_flags.threads);
      return cmd_price(price_flags);
    }
    if (simulate->parsed()) {
      broker::par::set_threads(sim_flags.threads);
      return cmd_simulate(sim_flags);
    }
    if (oracle->parsed()) {
      broker::par::set_threads(oracle_flags.threads);
      return cmd_oracle(oracle_flags);
    }
    if (suite->parsed()) {
      broker::par::set_threads(suite_flags.threads);
      return cmd_suite(suite_flags);
    }
    if (check->parsed()) {
      return cmd_check(check_seed, check_criteria, check_out, check_threads,
                       check_quiet, argv[0]);
    }
  } catch (const broker::harness::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const broker::oracle::ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
