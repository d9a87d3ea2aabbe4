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

#ifndef BROKER_PAYMENTS_HPP_
#define BROKER_PAYMENTS_HPP_

#include <functional>
#include <span>
#include <vector>

#include "broker/market.hpp"
#include "broker/strategies.hpp"

namespace broker {

// Truthful seller payments. With a monotone allocation, the payment that
// makes truthful cost reports a dominant strategy is
//
//   expected_payment_i(c) = c_i * x_i(c) + integral_{c_i}^{top} x_i(c_-i, u) du
//
// where x_i is the sale probability of item i averaged over buyer values.
// Payments are collected in expectation over values and charged per sale as
// payment_if_sold, which depends only on costs and on which item was bought.

// A pricing rule bound to an instance: maps a full cost vector to a menu.
using MenuRule = std::function<StrategyResult(std::span<const double>)>;
MenuRule make_rule(const MarketInstance& instance, const StrategyConfig& cfg);

// P(item bought) under a strategy result; analytic by default.
using SaleProbFn = std::function<double(const StrategyResult&, int)>;
SaleProbFn analytic_sale_prob(const MarketInstance& instance);
// Monte Carlo variant used to demonstrate that payments do not depend on
// the buyer-value sample set.
SaleProbFn mc_sale_prob(const MarketInstance& instance, int64_t draws,
                        uint64_t seed, uint64_t stream_base);

struct PaymentSchedule {
  double expected_payment = 0.0;
  double sale_probability = 0.0;
  double payment_if_sold = 0.0;
};

// x_i(c_-i, u) for each u in an ascending grid inside item i's cost support.
std::vector<double> sale_probability_profile(const MenuRule& rule,
                                             const MarketInstance& instance,
                                             std::span<const double> costs,
                                             int item,
                                             std::span<const double> grid,
                                             const SaleProbFn& prob);

PaymentSchedule seller_payment(const MenuRule& rule,
                               const MarketInstance& instance,
                               std::span<const double> costs, int item,
                               const SaleProbFn& prob);

// Seller i's expected utility at true cost costs[item] for each misreport
// on the grid; the truthful report attains the maximum within integration
// tolerance.
std::vector<double> truthfulness_probe(const MenuRule& rule,
                                       const MarketInstance& instance,
                                       std::span<const double> costs, int item,
                                       std::span<const double> report_grid,
                                       const SaleProbFn& prob);

struct IdentityCheck {
  double discrepancy = 0.0;   // mean of (simulated profit - analytic margin)
  double stderr_ = 0.0;       // standard error over cost blocks
  double simulated_mean = 0.0;
  double analytic_mean = 0.0;
  int64_t samples = 0;
};

// Verifies E[buyer payments - seller payments] = E[sum_i x_i (p_i - theta_i)]
// by sampling cost vectors and buyer values; the discrepancy must vanish
// within Monte Carlo noise.
IdentityCheck revenue_identity_check(const MenuRule& rule,
                                     const MarketInstance& instance,
                                     int cost_blocks, int value_draws_per_block,
                                     uint64_t seed);

}  // namespace broker

#endif  // BROKER_PAYMENTS_HPP_
