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

#include "broker/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "broker/mc.hpp"
#include "broker/numeric.hpp"

namespace broker {

std::string strategy_name(StrategyKind k) {
  switch (k) {
    case StrategyKind::kBestSingle:
      return "best-single";
    case StrategyKind::kAnonymousReserve:
      return "anonymous-reserve";
    case StrategyKind::kKLimited:
      return "k-limited";
    case StrategyKind::kCascade:
      return "cascade";
  }
  return "unknown";
}

std::optional<StrategyKind> strategy_from_name(const std::string& name) {
  if (name == "best-single") return StrategyKind::kBestSingle;
  if (name == "anonymous-reserve") return StrategyKind::kAnonymousReserve;
  if (name == "k-limited") return StrategyKind::kKLimited;
  if (name == "cascade") return StrategyKind::kCascade;
  return std::nullopt;
}

std::vector<double> reduce_costs(const MarketInstance& instance,
                                 std::span<const double> costs) {
  if (static_cast<int>(costs.size()) != instance.n()) {
    throw std::invalid_argument("reduce_costs: cost vector size mismatch");
  }
  std::vector<double> theta(costs.size());
  for (int i = 0; i < instance.n(); ++i) {
    // virtual_cost rejects reports outside the cost support.
    theta[i] = instance.items[i].cost.virtual_cost(costs[i]);
  }
  return theta;
}

namespace {

// Price of item i whose virtual margin equals r: the v with
// virtual_value_i(v) = r + theta_i, clamped into the support. With r >= 0
// the price never falls below theta_i, so the menu cannot sell at a loss.
double reserve_price(const DistributionSpec& value_dist, double theta,
                     double r) {
  return value_dist.inverse_virtual_value(r + theta);
}

StrategyResult reserve_menu(const MarketInstance& instance,
                            std::vector<double> theta,
                            std::vector<int> shown, MenuMode mode) {
  StrategyResult res;
  const double median = median_of_virtual_max(instance, theta, shown);
  const double r = std::max(0.0, median);
  res.menu.mode = mode;
  res.menu.shown = std::move(shown);
  res.menu.prices.reserve(res.menu.shown.size());
  for (int i : res.menu.shown) {
    res.menu.prices.push_back(
        reserve_price(instance.items[i].value, theta[i], r));
  }
  res.diag.reserve = r;
  res.virtual_costs = std::move(theta);
  return res;
}

}  // namespace

StrategyResult best_single_item(const MarketInstance& instance,
                                std::span<const double> costs) {
  auto theta = reduce_costs(instance, costs);
  StrategyResult res;
  res.diag.item_incremental.resize(instance.n());
  int best = 0;
  double best_gain = -1.0;
  SingleItemQuote best_quote;
  for (int i = 0; i < instance.n(); ++i) {
    const SingleItemQuote q =
        price_with_outside_option(instance.items[i].value, theta[i], 0.0);
    res.diag.item_incremental[i] = q.incremental_revenue;
    if (q.incremental_revenue > best_gain) {
      best_gain = q.incremental_revenue;
      best = i;
      best_quote = q;
    }
  }
  res.menu.mode = MenuMode::kFull;
  res.menu.shown = {best};
  res.menu.prices = {best_quote.price};
  res.virtual_costs = std::move(theta);
  return res;
}

double median_of_virtual_max(const MarketInstance& instance,
                             std::span<const double> virtual_costs,
                             std::span<const int> subset) {
  std::vector<int> all;
  if (subset.empty()) {
    all.resize(instance.n());
    std::iota(all.begin(), all.end(), 0);
    subset = all;
  }
  double r_lo = std::numeric_limits<double>::infinity();
  double r_hi = -std::numeric_limits<double>::infinity();
  for (int i : subset) {
    const auto& d = instance.items[i].value;
    r_lo = std::min(r_lo, d.virtual_value(d.support().lo) - virtual_costs[i]);
    r_hi = std::max(r_hi,
                    d.virtual_value(d.upper_for_numerics()) - virtual_costs[i]);
  }
  // P(max psi <= r) is the product of the per-item CDFs at the reserve
  // price for r; it is 0 at r_lo and essentially 1 at r_hi.
  const auto cdf_max = [&](double r) {
    double prod = 1.0;
    for (int i : subset) {
      const auto& d = instance.items[i].value;
      prod *= d.cdf(d.inverse_virtual_value(r + virtual_costs[i]));
    }
    return prod - 0.5;
  };
  return num::bisect_nondecreasing(cdf_max, r_lo, r_hi);
}

StrategyResult anonymous_reserve(const MarketInstance& instance,
                                 std::span<const double> costs) {
  auto theta = reduce_costs(instance, costs);
  std::vector<int> shown(instance.n());
  std::iota(shown.begin(), shown.end(), 0);
  return reserve_menu(instance, std::move(theta), std::move(shown),
                      MenuMode::kFull);
}

std::vector<int> greedy_k_select(
    int n, int k,
    const std::function<double(std::span<const int>)>& expected_max) {
  std::vector<int> selected;
  std::vector<char> in_set(n, 0);
  double current = 0.0;
  for (int step = 0; step < k; ++step) {
    int best = -1;
    double best_value = current;
    std::vector<int> trial = selected;
    trial.push_back(-1);
    for (int x = 0; x < n; ++x) {
      if (in_set[x]) continue;
      trial.back() = x;
      const double v = expected_max(trial);
      if (v > best_value) {
        best_value = v;
        best = x;
      }
    }
    if (best < 0) break;  // no positive marginal gain left
    selected.push_back(best);
    in_set[best] = 1;
    current = best_value;
  }
  std::sort(selected.begin(), selected.end());
  return selected;
}

StrategyResult k_limited_strategy(const MarketInstance& instance,
                                  std::span<const double> costs,
                                  const StrategyConfig& cfg) {
  if (cfg.k < 1 || cfg.k > instance.n()) {
    throw std::invalid_argument("k_limited_strategy: k outside [1, n]");
  }
  auto theta = reduce_costs(instance, costs);
  mc::MaxMarginEstimator estimator(instance, theta, cfg.estimator_draws,
                                   cfg.seed);
  auto selected = greedy_k_select(
      instance.n(), cfg.k,
      [&](std::span<const int> s) { return estimator.value(s); });
  StrategyResult res;
  if (selected.empty()) {
    res.menu.mode = MenuMode::kKLimited;
    res.virtual_costs = std::move(theta);
    res.diag.reserve = 0.0;
    return res;
  }
  res = reserve_menu(instance, std::move(theta), selected, MenuMode::kKLimited);
  res.diag.selected = std::move(selected);
  res.diag.estimator_stderr = estimator.stderr_of(res.diag.selected);
  return res;
}

StrategyResult cascade_prices(const MarketInstance& instance,
                              std::span<const double> costs,
                              std::span<const int> order) {
  auto theta = reduce_costs(instance, costs);
  PriceMenu menu;
  menu.mode = MenuMode::kCascade;
  menu.shown.assign(order.begin(), order.end());
  validate_menu({MenuMode::kCascade, menu.shown,
                 std::vector<double>(menu.shown.size(), 0.0)},
                instance.n());
  const size_t len = menu.shown.size();
  menu.prices.assign(len, 0.0);
  std::vector<double> cumulative(len, 0.0);
  std::vector<double> incremental(len, 0.0);
  double r_behind = 0.0;  // optimal revenue of the slots after the current one
  for (size_t pos = len; pos-- > 0;) {
    const int item = menu.shown[pos];
    const SingleItemQuote q = price_with_outside_option(
        instance.items[item].value, theta[item], r_behind);
    menu.prices[pos] = q.price;
    incremental[pos] = q.incremental_revenue;
    r_behind += q.incremental_revenue;
    cumulative[pos] = r_behind;
  }
  StrategyResult res;
  res.menu = std::move(menu);
  res.virtual_costs = std::move(theta);
  res.diag.cascade_cumulative = std::move(cumulative);
  res.diag.cascade_incremental = std::move(incremental);
  return res;
}

std::vector<int> default_cascade_order(const MarketInstance& instance,
                                       std::span<const double> virtual_costs) {
  std::vector<int> order(instance.n());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> gain(instance.n());
  for (int i = 0; i < instance.n(); ++i) {
    gain[i] = price_with_outside_option(instance.items[i].value,
                                        virtual_costs[i], 0.0)
                  .incremental_revenue;
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return gain[a] > gain[b]; });
  return order;
}

std::vector<double> incremental_revenue_curve(const StrategyResult& result) {
  if (result.menu.mode != MenuMode::kCascade) {
    throw std::domain_error(
        "incremental_revenue_curve: result is not a cascade");
  }
  return result.diag.cascade_incremental;
}

StrategyResult run_strategy(const MarketInstance& instance,
                            std::span<const double> costs,
                            const StrategyConfig& cfg) {
  switch (cfg.kind) {
    case StrategyKind::kBestSingle:
      return best_single_item(instance, costs);
    case StrategyKind::kAnonymousReserve:
      return anonymous_reserve(instance, costs);
    case StrategyKind::kKLimited:
      return k_limited_strategy(instance, costs, cfg);
    case StrategyKind::kCascade: {
      if (cfg.order) return cascade_prices(instance, costs, *cfg.order);
      const auto theta = reduce_costs(instance, costs);
      return cascade_prices(instance, costs,
                            default_cascade_order(instance, theta));
    }
  }
  throw std::invalid_argument("run_strategy: unknown strategy kind");
}

}  // namespace broker
