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

#ifndef BROKER_STRATEGIES_HPP_
#define BROKER_STRATEGIES_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "broker/market.hpp"
#include "broker/single_item.hpp"

namespace broker {

// The intermediary's pricing strategies. Each one takes reported costs,
// replaces them with virtual costs, and emits a price menu. All pricing
// happens in margin space: the virtual margin of item i at value v is
//   psi_i(v) = virtual_value_i(v) - theta_i,
// and a buyer price p corresponds to the margin p - theta_i.

enum class StrategyKind { kBestSingle, kAnonymousReserve, kKLimited, kCascade };

std::string strategy_name(StrategyKind k);
std::optional<StrategyKind> strategy_from_name(const std::string& name);

struct StrategyConfig {
  StrategyKind kind = StrategyKind::kAnonymousReserve;
  int k = 1;                            // k-limited budget
  std::optional<std::vector<int>> order;  // cascade; defaulted when absent
  int64_t estimator_draws = 100000;     // greedy expected-max sample size
  uint64_t seed = 0;                    // estimator common random numbers
};

struct StrategyDiagnostics {
  std::optional<double> reserve;          // anonymous / k-limited margin r
  std::vector<double> item_incremental;   // per-item stand-alone revenue
  std::vector<double> cascade_cumulative;   // R_k in shown order
  std::vector<double> cascade_incremental;  // Delta R_k in shown order
  std::vector<int> selected;              // greedy selection (k-limited)
  double estimator_stderr = 0.0;
};

struct StrategyResult {
  PriceMenu menu;
  std::vector<double> virtual_costs;  // theta, indexed by item
  StrategyDiagnostics diag;
};

// Component-wise virtual costs; rejects reports outside the cost support.
std::vector<double> reduce_costs(const MarketInstance& instance,
                                 std::span<const double> costs);

// Show only the item with the largest stand-alone optimal revenue at its
// virtual cost, priced by the single-item rule. Ties go to the lowest index.
StrategyResult best_single_item(const MarketInstance& instance,
                                std::span<const double> costs);

// Anonymous virtual reserve: r is the median of max_i psi_i(v_i), floored
// at 0 so the intermediary never prices below virtual cost, and item i is
// priced at the value whose virtual margin equals r. Shows every item.
StrategyResult anonymous_reserve(const MarketInstance& instance,
                                 std::span<const double> costs);

// The r with P(max_{i in subset} psi_i(v_i) <= r) = 1/2, by bisection on
// the product of per-item CDFs. An empty subset means all items.
double median_of_virtual_max(const MarketInstance& instance,
                             std::span<const double> virtual_costs,
                             std::span<const int> subset = {});

// Greedy subset selection against a set-function estimator of
// E[max(0, max_{i in S} psi_i)]. Stops at k items or at zero marginal gain;
// ties go to the lowest item index.
std::vector<int> greedy_k_select(
    int n, int k,
    const std::function<double(std::span<const int>)>& expected_max);

// Greedy selection of at most k items, then the anonymous reserve
// restricted to the selected set.
StrategyResult k_limited_strategy(const MarketInstance& instance,
                                  std::span<const double> costs,
                                  const StrategyConfig& cfg);

// Optimal prices for a fixed cascade order, computed backward: the last
// slot is priced with outside option 0, each earlier slot with outside
// option equal to the cumulative revenue behind it.
StrategyResult cascade_prices(const MarketInstance& instance,
                              std::span<const double> costs,
                              std::span<const int> order);

// Convenience default: items in descending order of stand-alone revenue.
std::vector<int> default_cascade_order(const MarketInstance& instance,
                                       std::span<const double> virtual_costs);

// The Delta R_k sequence of a cascade result, in shown order; throws
// std::domain_error for non-cascade results.
std::vector<double> incremental_revenue_curve(const StrategyResult& result);

// Dispatch on cfg.kind.
StrategyResult run_strategy(const MarketInstance& instance,
                            std::span<const double> costs,
                            const StrategyConfig& cfg);

}  // namespace broker

#endif  // BROKER_STRATEGIES_HPP_
