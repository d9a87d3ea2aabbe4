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

// The acceptance suite. Every threshold is pinned here; `check` exposes the
// same runs through the CLI so the whole suite is reproducible end to end.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <numeric>
#include <ostream>
#include <sstream>

#include "broker/buyer.hpp"
#include "broker/harness.hpp"
#include "broker/mc.hpp"
#include "broker/oracle.hpp"
#include "broker/parallel.hpp"
#include "broker/payments.hpp"
#include "broker/rng.hpp"
#include "broker/single_item.hpp"

namespace broker::harness {

namespace {

constexpr double kE = std::numbers::e;

struct Ctx {
  uint64_t seed = 0;
  std::vector<CheckRow> rows;
  bool pass = true;

  void expect_le(int crit, const std::string& case_id,
                 const std::string& metric, double value, double threshold) {
    const bool ok = value <= threshold;
    rows.push_back({crit, case_id, metric, value, threshold, "<=", ok});
    pass = pass && ok;
  }
  void expect_ge(int crit, const std::string& case_id,
                 const std::string& metric, double value, double threshold) {
    const bool ok = value >= threshold;
    rows.push_back({crit, case_id, metric, value, threshold, ">=", ok});
    pass = pass && ok;
  }
};

// --------------------------------------------------------------------------
// 1. Closed-form anchors.

bool criterion1(Ctx& ctx) {
  const bool before = ctx.pass;
  ctx.pass = true;
  const auto exp_quote = myerson_price(DistributionSpec::exponential(1.0));
  ctx.expect_le(1, "exponential-1", "price_abs_err",
                std::abs(exp_quote.price - 1.0), 1e-6);
  ctx.expect_le(1, "exponential-1", "revenue_abs_err",
                std::abs(exp_quote.revenue - std::exp(-1.0)), 1e-6);
  const auto uni_quote = myerson_price(DistributionSpec::uniform(0.0, 1.0));
  ctx.expect_le(1, "uniform-01", "price_abs_err",
                std::abs(uni_quote.price - 0.5), 1e-6);
  ctx.expect_le(1, "uniform-01", "revenue_abs_err",
                std::abs(uni_quote.revenue - 0.25), 1e-6);
  const bool ok = ctx.pass;
  ctx.pass = before && ok;
  return ok;
}

// --------------------------------------------------------------------------
// 2. Hazard-rate identity and MHR grid checks on random distributions.

DistributionSpec random_check_dist(uint64_t seed, uint64_t id) {
  const uint64_t stream = rng::kStreamTest + id;
  const double u1 = rng::uniform01(seed, stream, 1);
  const double u2 = rng::uniform01(seed, stream, 2);
  switch (id % 4) {
    case 0:
      return DistributionSpec::exponential(0.3 + 3.0 * u1);
    case 1:
      return DistributionSpec::uniform(2.0 * u1, 2.0 * u1 + 0.2 + 2.0 * u2);
    case 2:
      return DistributionSpec::shifted_exponential(0.4 + 2.5 * u1, 1.5 * u2);
    default:
      return DistributionSpec::truncated_normal(-0.5 + 2.5 * u1,
                                                0.15 + 1.2 * u2);
  }
}

bool criterion2(Ctx& ctx) {
  const bool before = ctx.pass;
  ctx.pass = true;
  double worst_mhr = 0.0;
  double worst_gap = 0.0;
  int worst_mhr_id = 0;
  int worst_gap_id = 0;
  for (int id = 0; id < 100; ++id) {
    const auto d = random_check_dist(ctx.seed, 100 + id);
    const double mhr = mhr_violation(d);
    const double gap = hazard_identity_gap(d, 64, 10000);
    if (mhr > worst_mhr) {
      worst_mhr = mhr;
      worst_mhr_id = id;
    }
    if (gap > worst_gap) {
      worst_gap = gap;
      worst_gap_id = id;
    }
  }
  ctx.expect_le(2, "dist-" + std::to_string(worst_mhr_id),
                "max_mhr_violation", worst_mhr, 1e-6);
  ctx.expect_le(2, "dist-" + std::to_string(worst_gap_id),
                "max_hazard_identity_gap", worst_gap, 1e-6);
  const bool ok = ctx.pass;
  ctx.pass = before && ok;
  return ok;
}

// --------------------------------------------------------------------------
// 3. Anonymous reserve is a 1/2-approximation against the discrete oracle.

bool criterion3(Ctx& ctx) {
  const bool before = ctx.pass;
  ctx.pass = true;
  // Pre-validate the 2% discretization budget with an m-convergence sweep.
  for (int id = 0; id < 4; ++id) {
    const int n = 2 + (id % 2);
    const auto instance = random_instance(ctx.seed, 300 + id, n);
    const auto costs = sample_costs(instance, ctx.seed, 300 + id);
    const double opt25 =
        oracle::oracle_full(oracle::discretize(instance, costs, 25)).revenue;
    const double opt50 =
        oracle::oracle_full(oracle::discretize(instance, costs, 50)).revenue;
    const double scale = std::max(opt50, 1e-9);
    ctx.expect_le(3, "sweep-" + std::to_string(id), "m25_vs_m50_rel_gap",
                  std::abs(opt50 - opt25) / scale, 0.02);
  }
  for (int id = 0; id < 50; ++id) {
    const int n = 2 + (id % 2);
    const auto instance = random_instance(ctx.seed, 300 + id, n);
    const auto costs = sample_costs(instance, ctx.seed, 300 + id);
    const auto disc = oracle::discretize(instance, costs, 50);
    const auto strat = anonymous_reserve(instance, costs);
    const double rev = oracle::eval_menu(disc, strat.menu);
    const double opt = oracle::oracle_full(disc).revenue;
    ctx.expect_ge(3, "inst-" + std::to_string(id), "anonymous_reserve_revenue",
                  rev, 0.5 * opt - 0.02 * opt);
  }
  const bool ok = ctx.pass;
  ctx.pass = before && ok;
  return ok;
}

// --------------------------------------------------------------------------
// 4. Any fixed cascade order with optimal prices is a 1/2-approximation.

std::vector<int> random_order(uint64_t seed, uint64_t stream, int n) {
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(rng::uniform01(seed, stream, i) * (i + 1));
    std::swap(order[i], order[std::min(j, i)]);
  }
  return order;
}

bool criterion4(Ctx& ctx) {
  const bool before = ctx.pass;
  ctx.pass = true;
  for (int id = 0; id < 50; ++id) {
    const int n = 3 + (id % 4);
    const auto instance = random_instance(ctx.seed, 400 + id, n);
    const auto costs = sample_costs(instance, ctx.seed, 400 + id);
    const auto disc = oracle::discretize(instance, costs, 50);
    const auto order = random_order(ctx.seed, rng::kStreamTest + 400 + id, n);
    const double fixed = oracle::cascade_fixed_order(disc, order).revenue;
    const double opt = oracle::oracle_cascade(disc).revenue;
    ctx.expect_ge(4, "inst-" + std::to_string(id), "fixed_order_revenue",
                  fixed, 0.5 * opt - 1e-6);
    // The continuous backward-induction prices, judged by the same
    // discretized buyer, carry the discretization budget.
    const auto strat = cascade_prices(instance, costs, order);
    const double rev = oracle::eval_menu(disc, strat.menu);
    ctx.expect_ge(4, "inst-" + std::to_string(id),
                  "continuous_prices_revenue", rev, 0.5 * opt - 0.02 * opt);
  }
  const bool ok = ctx.pass;
  ctx.pass = before && ok;
  return ok;
}

// --------------------------------------------------------------------------
// 5. Best single item earns at least 1/(e ln n) of the optimal cascade.

bool criterion5(Ctx& ctx) {
  const bool before = ctx.pass;
  ctx.pass = true;
  for (int id = 0; id < 30; ++id) {
    const int n = (id % 2 == 0) ? 4 : 8;
    const auto instance = random_instance(ctx.seed, 500 + id, n);
    const auto costs = sample_costs(instance, ctx.seed, 500 + id);
    const auto disc = oracle::discretize(instance, costs, 50);
    const auto best = best_single_item(instance, costs);
    const double rev = oracle::eval_menu(disc, best.menu);
    const double opt = oracle::oracle_cascade(disc).revenue;
    ctx.expect_ge(5, "inst-" + std::to_string(id), "best_single_revenue", rev,
                  opt / (kE * std::log(n)) - 0.02 * opt);
  }
  // Log-growth sweep: n iid exponential(1) items, zero costs.
  for (const int n : {2, 4, 8, 16}) {
    MarketInstance instance;
    for (int i = 0; i < n; ++i) {
      instance.items.push_back({DistributionSpec::exponential(1.0),
                                DistributionSpec::uniform(0.0, 1.0)});
    }
    const std::vector<double> costs(n, 0.0);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    const auto strat = cascade_prices(instance, costs, order);
    const double cascade_rev = strat.diag.cascade_cumulative.front();
    const double single_rev = std::exp(-1.0);
    ctx.expect_le(5, "iid-exp-n" + std::to_string(n), "cascade_over_single",
                  cascade_rev / single_rev, kE * std::log(n) + 1e-9);
  }
  const bool ok = ctx.pass;
  ctx.pass = before && ok;
  return ok;
}

// --------------------------------------------------------------------------
// 6. Greedy subset selection achieves (1 - 1/e) of the best subset.

bool criterion6(Ctx& ctx) {
  const bool before = ctx.pass;
  ctx.pass = true;
  constexpr double kGreedyFactor = 1.0 - 1.0 / kE;
  for (int id = 0; id < 30; ++id) {
    const int n = 4 + (id % 7);
    const int k = std::min(n, 1 + (id % 4));
    const auto instance = random_instance(ctx.seed, 600 + id, n);
    const auto costs = sample_costs(instance, ctx.seed, 600 + id);
    const auto disc = oracle::discretize(instance, costs, 50);
    const double opt = oracle::oracle_best_subset(disc, k).value;

    const auto exact_sel = greedy_k_select(
        n, k, [&](std::span<const int> s) {
          return oracle::expected_max_margin(disc, s);
        });
    const double exact_val = oracle::expected_max_margin(disc, exact_sel);
    ctx.expect_ge(6, "inst-" + std::to_string(id), "exact_greedy_value",
                  exact_val, kGreedyFactor * opt - 1e-9);

    mc::MaxMarginEstimator estimator(instance, disc.virtual_costs, 100000,
                                     ctx.seed + id);
    const auto mc_sel = greedy_k_select(
        n, k, [&](std::span<const int> s) { return estimator.value(s); });
    const double mc_val = oracle::expected_max_margin(disc, mc_sel);
    const double se = estimator.stderr_of(mc_sel);
    ctx.expect_ge(6, "inst-" + std::to_string(id), "mc_greedy_value", mc_val,
                  kGreedyFactor * opt - 3.0 * se);
  }
  const bool ok = ctx.pass;
  ctx.pass = before && ok;
  return ok;
}

// --------------------------------------------------------------------------
// 7. The k-limited pipeline achieves (e-1)/(2e) of the best k-subset.

bool criterion7(Ctx& ctx) {
  const bool before = ctx.pass;
  ctx.pass = true;
  constexpr double kFactor = (kE - 1.0) / (2.0 * kE);
  for (int id = 0; id < 20; ++id) {
    const int n = 2 + (id % 3);
    const int k = std::min(n, 1 + (id % 2));
    const auto instance = random_instance(ctx.seed, 700 + id, n);
    const auto costs = sample_costs(instance, ctx.seed, 700 + id);
    const auto disc = oracle::discretize(instance, costs, 50);
    StrategyConfig cfg;
    cfg.kind = StrategyKind::kKLimited;
    cfg.k = k;
    cfg.seed = ctx.seed + id;
    const auto strat = k_limited_strategy(instance, costs, cfg);
    const double rev = oracle::eval_menu(disc, strat.menu);
    const double opt = oracle::oracle_best_k_full(disc, k).revenue;
    ctx.expect_ge(7, "inst-" + std::to_string(id) + "-k" + std::to_string(k),
                  "k_limited_revenue", rev, kFactor * opt - 0.02 * opt);
  }
  const bool ok = ctx.pass;
  ctx.pass = before && ok;
  return ok;
}

// --------------------------------------------------------------------------
// 8. Seller monotonicity: sale probability nonincreasing in own cost.

bool criterion8(Ctx& ctx) {
  const bool before = ctx.pass;
  ctx.pass = true;
  const std::vector<StrategyKind> kinds = {
      StrategyKind::kBestSingle, StrategyKind::kAnonymousReserve,
      StrategyKind::kKLimited, StrategyKind::kCascade};
  for (int id = 0; id < 20; ++id) {
    const int n = 2 + (id % 3);
    const auto instance = random_instance(ctx.seed, 800 + id, n);
    const auto costs = sample_costs(instance, ctx.seed, 800 + id);
    const int item = id % n;
    std::vector<double> grid(20);
    for (int j = 0; j < 20; ++j) {
      grid[j] = instance.items[item].cost.quantile((j + 0.5) / 20.0);
    }
    for (const auto kind : kinds) {
      StrategyConfig cfg;
      cfg.kind = kind;
      cfg.k = std::min(2, n);
      cfg.seed = ctx.seed + id;
      if (kind == StrategyKind::kCascade) {
        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        cfg.order = order;
      }
      const auto rule = make_rule(instance, cfg);
      const auto profile = sale_probability_profile(
          rule, instance, costs, item, grid, analytic_sale_prob(instance));
      double worst = 0.0;
      for (size_t j = 0; j + 1 < profile.size(); ++j) {
        worst = std::max(worst, profile[j + 1] - profile[j]);
      }
      ctx.expect_le(8, "inst-" + std::to_string(id) + "-" + strategy_name(kind),
                    "max_upward_step", worst, 2e-6);
    }
  }
  const bool ok = ctx.pass;
  ctx.pass = before && ok;
  return ok;
}

// --------------------------------------------------------------------------
// 9. Payments: truthfulness, revenue identity, value independence.

struct PaymentCase {
  std::string name;
  MarketInstance instance;
  std::vector<double> costs;
  StrategyConfig cfg;
  int identity_blocks = 200;
  int identity_draws = 5000;
};

std::vector<PaymentCase> payment_cases(uint64_t seed) {
  std::vector<PaymentCase> cases;
  {
    PaymentCase c;
    c.name = "best-single";
    c.instance = random_instance(seed, 900, 2);
    c.costs = sample_costs(c.instance, seed, 900);
    c.cfg.kind = StrategyKind::kBestSingle;
    cases.push_back(std::move(c));
  }
  {
    PaymentCase c;
    c.name = "anonymous-reserve";
    c.instance = random_instance(seed, 901, 2);
    c.costs = sample_costs(c.instance, seed, 901);
    c.cfg.kind = StrategyKind::kAnonymousReserve;
    cases.push_back(std::move(c));
  }
  {
    PaymentCase c;
    c.name = "cascade";
    c.instance = random_instance(seed, 902, 3);
    c.costs = sample_costs(c.instance, seed, 902);
    c.cfg.kind = StrategyKind::kCascade;
    c.cfg.order = std::vector<int>{0, 1, 2};
    cases.push_back(std::move(c));
  }
  {
    PaymentCase c;
    c.name = "k-limited";
    c.instance = random_instance(seed, 903, 3);
    c.costs = sample_costs(c.instance, seed, 903);
    c.cfg.kind = StrategyKind::kKLimited;
    c.cfg.k = 2;
    c.cfg.estimator_draws = 4000;
    c.cfg.seed = seed + 903;
    c.identity_blocks = 50;
    c.identity_draws = 20000;
    cases.push_back(std::move(c));
  }
  return cases;
}

bool criterion9(Ctx& ctx) {
  const bool before = ctx.pass;
  ctx.pass = true;
  for (const auto& pc : payment_cases(ctx.seed)) {
    const auto rule = make_rule(pc.instance, pc.cfg);
    const auto prob = analytic_sale_prob(pc.instance);
    // (a) Truthfulness on a 21-point misreport grid.
    for (int item = 0; item < std::min(2, pc.instance.n()); ++item) {
      const auto& cost_dist = pc.instance.items[item].cost;
      std::vector<double> grid;
      for (int j = 0; j < 21; ++j) {
        grid.push_back(cost_dist.quantile((j + 0.5) / 21.0));
      }
      grid.push_back(pc.costs[item]);
      std::sort(grid.begin(), grid.end());
      const auto utilities =
          truthfulness_probe(rule, pc.instance, pc.costs, item, grid, prob);
      double best = -1e300;
      double truthful = 0.0;
      for (size_t j = 0; j < grid.size(); ++j) {
        best = std::max(best, utilities[j]);
        if (grid[j] == pc.costs[item]) truthful = utilities[j];
      }
      const std::string case_id = pc.name + "-item" + std::to_string(item);
      ctx.expect_le(9, case_id, "probe_regret", best - truthful, 1e-4);
      ctx.expect_ge(9, case_id, "truthful_utility", truthful, -1e-9);
    }
    // (b) Revenue identity at 1e6 total samples.
    const auto identity = revenue_identity_check(
        rule, pc.instance, pc.identity_blocks, pc.identity_draws, ctx.seed);
    ctx.expect_le(9, pc.name, "identity_abs_discrepancy",
                  std::abs(identity.discrepancy),
                  4.0 * identity.stderr_ + 1e-4);
  }
  // (c) Value independence of payment_if_sold: disjoint buyer-value sample
  // sets move the payment only within Monte Carlo noise.
  {
    const auto cases = payment_cases(ctx.seed);
    const auto& pc = cases[1];  // anonymous reserve, n = 2
    const auto rule = make_rule(pc.instance, pc.cfg);
    const double exact =
        seller_payment(rule, pc.instance, pc.costs, 0,
                       analytic_sale_prob(pc.instance))
            .payment_if_sold;
    constexpr int kSets = 8;
    constexpr int64_t kDraws = 10000;
    std::vector<double> payments(kSets);
    for (int s = 0; s < kSets; ++s) {
      const auto prob = mc_sale_prob(
          pc.instance, kDraws, ctx.seed,
          rng::kStreamTest + (uint64_t{2} << 40) +
              static_cast<uint64_t>(s) * (kDraws + 1));
      payments[s] =
          seller_payment(rule, pc.instance, pc.costs, 0, prob).payment_if_sold;
    }
    double mean = 0.0;
    for (double p : payments) mean += p / kSets;
    double var = 0.0;
    for (double p : payments) var += (p - mean) * (p - mean) / (kSets - 1);
    const double sd = std::sqrt(var);
    double spread = 0.0;
    for (double p : payments) spread = std::max(spread, std::abs(p - mean));
    ctx.expect_le(9, "value-independence", "mc_mean_vs_exact",
                  std::abs(mean - exact), 4.0 * sd / std::sqrt(kSets) + 2e-4);
    ctx.expect_le(9, "value-independence", "mc_spread_over_sd",
                  sd > 0 ? spread / sd : 0.0, 4.0);
  }
  const bool ok = ctx.pass;
  ctx.pass = before && ok;
  return ok;
}

// --------------------------------------------------------------------------
// 10. Exponential domination of incremental revenue.

bool criterion10(Ctx& ctx) {
  const bool before = ctx.pass;
  ctx.pass = true;
  double worst = -1e300;
  int worst_id = 0;
  for (int id = 0; id < 100; ++id) {
    const auto d = random_check_dist(ctx.seed, 1000 + id);
    const double r_out =
        1.5 * rng::uniform01(ctx.seed, rng::kStreamTest + 1000 + id, 7);
    const double r_myerson = myerson_price(d).revenue;
    const double inc =
        price_with_outside_option(d, 0.0, r_out).incremental_revenue;
    const double excess = inc - exponential_bound(r_myerson, r_out);
    if (excess > worst) {
      worst = excess;
      worst_id = id;
    }
  }
  ctx.expect_le(10, "pair-" + std::to_string(worst_id), "max_bound_excess",
                worst, 1e-9);
  const bool ok = ctx.pass;
  ctx.pass = before && ok;
  return ok;
}

// --------------------------------------------------------------------------
// 11. Determinism: `check` twice, 1 vs 8 threads, byte-identical CSV.

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool criterion11(Ctx& ctx, const CheckOptions& options) {
  const bool before = ctx.pass;
  ctx.pass = true;
  if (options.cli_path.empty()) {
    ctx.rows.push_back({11, "setup", "cli_path_missing", 1.0, 0.0, "<=",
                        false});
    ctx.pass = false;
  } else {
    const std::string base = "/tmp/broker_check_" +
                             std::to_string(static_cast<unsigned>(ctx.seed));
    const std::string out1 = base + "_t1.csv";
    const std::string out8 = base + "_t8.csv";
    const std::string common = " check --criteria 1,2,3,4,5,6,7,8,9,10 --seed " +
                               std::to_string(ctx.seed) + " --quiet";
    const int rc1 = std::system(
        (options.cli_path + common + " --threads 1 --out " + out1).c_str());
    const int rc8 = std::system(
        (options.cli_path + common + " --threads 8 --out " + out8).c_str());
    const std::string a = slurp(out1);
    const std::string b = slurp(out8);
    const bool same = !a.empty() && a == b;
    ctx.rows.push_back({11, "threads-1-vs-8", "csv_byte_identical",
                        same ? 1.0 : 0.0, 1.0, ">=", same});
    ctx.rows.push_back({11, "exit-codes", "both_runs_exited_zero",
                        (rc1 == 0 && rc8 == 0) ? 1.0 : 0.0, 1.0, ">=",
                        rc1 == 0 && rc8 == 0});
    ctx.pass = same && rc1 == 0 && rc8 == 0;
  }
  const bool ok = ctx.pass;
  ctx.pass = before && ok;
  return ok;
}

const char* criterion_name(int c) {
  switch (c) {
    case 1:
      return "closed-form anchors";
    case 2:
      return "hazard identity and MHR grids";
    case 3:
      return "anonymous reserve 1/2-approximation";
    case 4:
      return "fixed-order cascade 1/2-approximation";
    case 5:
      return "best single item 1/(e ln n)";
    case 6:
      return "greedy selection (1-1/e)";
    case 7:
      return "k-limited pipeline (e-1)/(2e)";
    case 8:
      return "seller monotonicity";
    case 9:
      return "payments: truthfulness, identity, value independence";
    case 10:
      return "exponential domination";
    case 11:
      return "determinism across thread counts";
  }
  return "unknown";
}

}  // namespace

CheckReport run_check(const CheckOptions& options) {
  par::set_threads(options.threads);
  std::vector<int> criteria = options.criteria;
  if (criteria.empty()) {
    criteria = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  }
  Ctx ctx;
  ctx.seed = options.seed;
  CheckReport report;
  for (const int c : criteria) {
    bool ok = false;
    switch (c) {
      case 1:
        ok = criterion1(ctx);
        break;
      case 2:
        ok = criterion2(ctx);
        break;
      case 3:
        ok = criterion3(ctx);
        break;
      case 4:
        ok = criterion4(ctx);
        break;
      case 5:
        ok = criterion5(ctx);
        break;
      case 6:
        ok = criterion6(ctx);
        break;
      case 7:
        ok = criterion7(ctx);
        break;
      case 8:
        ok = criterion8(ctx);
        break;
      case 9:
        ok = criterion9(ctx);
        break;
      case 10:
        ok = criterion10(ctx);
        break;
      case 11:
        ok = criterion11(ctx, options);
        break;
      default:
        throw ConfigError("criteria", "unknown criterion " + std::to_string(c));
    }
    report.criteria.push_back({c, criterion_name(c), ok});
    if (options.log) {
      *options.log << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << c << ": "
                   << criterion_name(c) << '\n';
      options.log->flush();
    }
  }
  report.rows = std::move(ctx.rows);
  report.all_pass = true;
  for (const auto& c : report.criteria) report.all_pass &= c.pass;
  return report;
}

std::string check_csv(const CheckReport& report) {
  std::ostringstream out;
  out << "criterion,case_id,metric,value,threshold,cmp,pass\n";
  for (const auto& row : report.rows) {
    out << row.criterion << ',' << row.case_id << ',' << row.metric << ','
        << format_double(row.value) << ',' << format_double(row.threshold)
        << ',' << row.cmp << ',' << (row.pass ? 1 : 0) << '\n';
  }
  return out.str();
}

}  // namespace broker::harness
