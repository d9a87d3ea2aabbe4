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

#include "broker/payments.hpp"

#include <algorithm>
#include <cmath>

#include "broker/buyer.hpp"
#include "broker/mc.hpp"
#include "broker/numeric.hpp"
#include "broker/rng.hpp"

namespace broker {

namespace {

constexpr double kPaymentTol = 1e-5;
constexpr int kProfileInit = 64;
constexpr int kProfileMax = 4096;

// Sale probability of `item` as a function of its substituted cost report,
// sampled on a refined uniform grid of the cost support. One shared grid
// serves the payment integral and every probe report, so all quantities
// are consistent.
class CostProfile {
 public:
  CostProfile(std::function<double(double)> x_of, double lo, double hi,
              double abs_tol)
      : x_of_(std::move(x_of)), lo_(lo), hi_(hi) {
    int n = kProfileInit;
    build(n);
    double trap_prev = integral_all();
    double rich_prev = trap_prev;
    while (n < kProfileMax) {
      n *= 2;
      build(n);
      const double trap = integral_all();
      const double rich = (4.0 * trap - trap_prev) / 3.0;
      trap_prev = trap;
      if (std::abs(rich - rich_prev) < abs_tol) break;
      rich_prev = rich;
    }
  }

  double x_at(double u) const { return x_of_(u); }

  // integral_{from}^{hi} of the profile; `from` is evaluated exactly.
  double tail_integral(double from) const {
    if (from >= hi_) return 0.0;
    from = std::max(from, lo_);
    const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), from);
    const size_t j = static_cast<size_t>(it - nodes_.begin());
    if (j >= nodes_.size()) return 0.0;
    const double xf = x_of_(from);
    double total = 0.5 * (xf + values_[j]) * (nodes_[j] - from);
    total += suffix_[j];
    return total;
  }

 private:
  void build(int n) {
    nodes_.resize(n + 1);
    values_.resize(n + 1);
    const double h = (hi_ - lo_) / n;
    for (int i = 0; i <= n; ++i) {
      nodes_[i] = (i == n) ? hi_ : lo_ + i * h;
      values_[i] = x_of_(nodes_[i]);
    }
    suffix_.assign(n + 1, 0.0);
    for (int i = n - 1; i >= 0; --i) {
      suffix_[i] = suffix_[i + 1] + 0.5 * (values_[i] + values_[i + 1]) *
                                        (nodes_[i + 1] - nodes_[i]);
    }
  }

  double integral_all() const { return suffix_.empty() ? 0.0 : suffix_[0]; }

  std::function<double(double)> x_of_;
  double lo_;
  double hi_;
  std::vector<double> nodes_;
  std::vector<double> values_;
  std::vector<double> suffix_;
};

double prob_of_item(const std::vector<double>& probs, const PriceMenu& menu,
                    int item) {
  for (size_t k = 0; k < menu.shown.size(); ++k) {
    if (menu.shown[k] == item) return probs[k];
  }
  return 0.0;
}

std::function<double(double)> substituted_sale_prob(
    const MenuRule& rule, const MarketInstance& instance,
    std::span<const double> costs, int item, const SaleProbFn& prob) {
  std::vector<double> base(costs.begin(), costs.end());
  return [rule, &instance, base = std::move(base), item, prob](double u) {
    std::vector<double> c = base;
    c[item] = u;
    const StrategyResult res = rule(c);
    return prob(res, item);
  };
}

}  // namespace

MenuRule make_rule(const MarketInstance& instance, const StrategyConfig& cfg) {
  return [&instance, cfg](std::span<const double> costs) {
    return run_strategy(instance, costs, cfg);
  };
}

SaleProbFn analytic_sale_prob(const MarketInstance& instance) {
  return [&instance](const StrategyResult& res, int item) {
    const auto probs = purchase_probabilities(instance, res.menu);
    return prob_of_item(probs, res.menu, item);
  };
}

SaleProbFn mc_sale_prob(const MarketInstance& instance, int64_t draws,
                        uint64_t seed, uint64_t stream_base) {
  return [&instance, draws, seed, stream_base](const StrategyResult& res,
                                               int item) {
    const auto sim = mc::simulate_menu(instance, res.menu, res.virtual_costs,
                                       draws, seed, stream_base);
    return prob_of_item(sim.buy_freq, res.menu, item);
  };
}

std::vector<double> sale_probability_profile(const MenuRule& rule,
                                             const MarketInstance& instance,
                                             std::span<const double> costs,
                                             int item,
                                             std::span<const double> grid,
                                             const SaleProbFn& prob) {
  const auto x_of = substituted_sale_prob(rule, instance, costs, item, prob);
  std::vector<double> out;
  out.reserve(grid.size());
  for (double u : grid) out.push_back(x_of(u));
  return out;
}

PaymentSchedule seller_payment(const MenuRule& rule,
                               const MarketInstance& instance,
                               std::span<const double> costs, int item,
                               const SaleProbFn& prob) {
  const auto& cost_dist = instance.items[item].cost;
  const double top = cost_dist.upper_for_numerics();
  const auto x_of = substituted_sale_prob(rule, instance, costs, item, prob);
  const CostProfile profile(x_of, cost_dist.support().lo, top, kPaymentTol);
  PaymentSchedule schedule;
  const double c = costs[item];
  schedule.sale_probability = x_of(c);
  schedule.expected_payment =
      c * schedule.sale_probability + profile.tail_integral(c);
  schedule.payment_if_sold =
      schedule.sale_probability > 0.0
          ? schedule.expected_payment / schedule.sale_probability
          : 0.0;
  return schedule;
}

std::vector<double> truthfulness_probe(const MenuRule& rule,
                                       const MarketInstance& instance,
                                       std::span<const double> costs, int item,
                                       std::span<const double> report_grid,
                                       const SaleProbFn& prob) {
  const auto& cost_dist = instance.items[item].cost;
  const double top = cost_dist.upper_for_numerics();
  const auto x_of = substituted_sale_prob(rule, instance, costs, item, prob);
  const CostProfile profile(x_of, cost_dist.support().lo, top, kPaymentTol);
  const double true_cost = costs[item];
  std::vector<double> utility;
  utility.reserve(report_grid.size());
  for (double report : report_grid) {
    const double x_rep = profile.x_at(report);
    const double payment = report * x_rep + profile.tail_integral(report);
    utility.push_back(payment - true_cost * x_rep);
  }
  return utility;
}

IdentityCheck revenue_identity_check(const MenuRule& rule,
                                     const MarketInstance& instance,
                                     int cost_blocks, int value_draws_per_block,
                                     uint64_t seed) {
  const int n = instance.n();
  const auto prob = analytic_sale_prob(instance);
  std::vector<double> block_diff(cost_blocks, 0.0);
  std::vector<double> block_sim(cost_blocks, 0.0);
  std::vector<double> block_analytic(cost_blocks, 0.0);
#pragma omp parallel for schedule(dynamic)
  for (int b = 0; b < cost_blocks; ++b) {
    std::vector<double> costs(n);
    for (int i = 0; i < n; ++i) {
      costs[i] = instance.items[i].cost.sample(
          seed, rng::kStreamIdentity + static_cast<uint64_t>(b),
          static_cast<uint64_t>(i));
    }
    const StrategyResult res = rule(costs);
    const auto probs = purchase_probabilities(instance, res.menu);
    double analytic = 0.0;
    for (size_t k = 0; k < res.menu.shown.size(); ++k) {
      analytic += probs[k] *
                  (res.menu.prices[k] - res.virtual_costs[res.menu.shown[k]]);
    }
    std::vector<double> pay_if_sold(n, 0.0);
    for (int i = 0; i < n; ++i) {
      pay_if_sold[i] = seller_payment(rule, instance, costs, i, prob)
                           .payment_if_sold;
    }
    const uint64_t value_stream =
        rng::kStreamIdentity + (uint64_t{1} << 30) +
        static_cast<uint64_t>(b) * static_cast<uint64_t>(value_draws_per_block);
    BuyerValuation values{std::vector<double>(n, 0.0)};
    double sim_sum = 0.0;
    for (int d = 0; d < value_draws_per_block; ++d) {
      for (size_t k = 0; k < res.menu.shown.size(); ++k) {
        const int idx = res.menu.shown[k];
        values.values[idx] = instance.items[idx].value.sample(
            seed, value_stream + static_cast<uint64_t>(d),
            static_cast<uint64_t>(idx));
      }
      const BuyerOutcome out = choose(values, res.menu);
      if (out.bought) sim_sum += out.price_paid - pay_if_sold[*out.bought];
    }
    block_sim[b] = sim_sum / value_draws_per_block;
    block_analytic[b] = analytic;
    block_diff[b] = block_sim[b] - analytic;
  }
  IdentityCheck check;
  check.samples =
      static_cast<int64_t>(cost_blocks) * value_draws_per_block;
  double mean = 0.0;
  for (double d : block_diff) mean += d;
  mean /= cost_blocks;
  double var = 0.0;
  for (double d : block_diff) var += (d - mean) * (d - mean);
  var /= std::max(1, cost_blocks - 1);
  check.discrepancy = mean;
  check.stderr_ = std::sqrt(var / cost_blocks);
  for (double s : block_sim) check.simulated_mean += s / cost_blocks;
  for (double a : block_analytic) check.analytic_mean += a / cost_blocks;
  return check;
}

}  // namespace broker
