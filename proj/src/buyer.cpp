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

#include "broker/buyer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "broker/numeric.hpp"

namespace broker {

void validate_menu(const PriceMenu& menu, int n) {
  if (menu.shown.size() != menu.prices.size()) {
    throw std::invalid_argument("menu: shown/prices size mismatch");
  }
  if (static_cast<int>(menu.shown.size()) > n) {
    throw std::invalid_argument("menu: more shown items than the instance has");
  }
  std::unordered_set<int> seen;
  for (size_t k = 0; k < menu.shown.size(); ++k) {
    const int idx = menu.shown[k];
    if (idx < 0 || idx >= n) {
      throw std::invalid_argument("menu: item index out of range");
    }
    if (!seen.insert(idx).second) {
      throw std::invalid_argument("menu: duplicate item index");
    }
    if (!std::isfinite(menu.prices[k])) {
      throw std::invalid_argument("menu: non-finite price");
    }
  }
}

BuyerOutcome choose_full(const BuyerValuation& values, const PriceMenu& menu) {
  int best_item = -1;
  size_t best_k = 0;
  double best_surplus = -1.0;
  for (size_t k = 0; k < menu.shown.size(); ++k) {
    const int idx = menu.shown[k];
    const double s = values.values[idx] - menu.prices[k];
    if (s < 0.0) continue;
    if (best_item < 0 || s > best_surplus ||
        (s == best_surplus && idx < best_item)) {
      best_item = idx;
      best_k = k;
      best_surplus = s;
    }
  }
  if (best_item < 0) return {};
  return {best_item, menu.prices[best_k], best_surplus};
}

BuyerOutcome choose_cascade(const BuyerValuation& values,
                            const PriceMenu& menu) {
  for (size_t k = 0; k < menu.shown.size(); ++k) {
    const int idx = menu.shown[k];
    const double s = values.values[idx] - menu.prices[k];
    if (s >= 0.0) return {idx, menu.prices[k], s};
  }
  return {};
}

BuyerOutcome choose(const BuyerValuation& values, const PriceMenu& menu) {
  return menu.mode == MenuMode::kCascade ? choose_cascade(values, menu)
                                         : choose_full(values, menu);
}

namespace {

// P(buy shown[k]) for full attention:
//   integral over v >= p_k of f_k(v) * prod_{j != k} F_j(v - p_k + p_j) dv.
// Ties have measure zero for continuous distributions, so the strict/weak
// distinction in the choice rule does not enter.
double full_attention_probability(const MarketInstance& instance,
                                  const PriceMenu& menu, size_t k) {
  const int item = menu.shown[k];
  const auto& dist = instance.items[item].value;
  const double p = menu.prices[k];
  const auto [lo, hi] = dist.support();
  const double a = std::max(lo, p);
  const double b = dist.upper_for_numerics();
  if (!(a < b)) return 0.0;

  // Competitor CDF arguments kink where they cross their own support ends.
  std::vector<double> cuts;
  for (size_t j = 0; j < menu.shown.size(); ++j) {
    if (j == k) continue;
    const auto [jlo, jhi] = instance.items[menu.shown[j]].value.support();
    cuts.push_back(p - menu.prices[j] + jlo);
    if (std::isfinite(jhi)) cuts.push_back(p - menu.prices[j] + jhi);
  }

  const auto integrand = [&](double v) {
    double w = dist.pdf(v);
    if (w == 0.0) return 0.0;
    for (size_t j = 0; j < menu.shown.size() && w > 0.0; ++j) {
      if (j == k) continue;
      w *= instance.items[menu.shown[j]].value.cdf(v - p + menu.prices[j]);
    }
    return w;
  };
  return num::integrate(integrand, a, b, cuts);
}

}  // namespace

std::vector<double> purchase_probabilities(const MarketInstance& instance,
                                           const PriceMenu& menu) {
  validate_menu(menu, instance.n());
  std::vector<double> probs(menu.shown.size(), 0.0);
  if (menu.mode == MenuMode::kCascade) {
    double reach = 1.0;  // probability the buyer looks past all prior slots
    for (size_t k = 0; k < menu.shown.size(); ++k) {
      const auto& dist = instance.items[menu.shown[k]].value;
      const double pass = dist.cdf(menu.prices[k]);
      probs[k] = reach * (1.0 - pass);
      reach *= pass;
    }
    return probs;
  }
  for (size_t k = 0; k < menu.shown.size(); ++k) {
    probs[k] = full_attention_probability(instance, menu, k);
  }
  return probs;
}

double expected_revenue(const MarketInstance& instance, const PriceMenu& menu,
                        std::span<const double> virtual_costs) {
  const auto probs = purchase_probabilities(instance, menu);
  double total = 0.0;
  for (size_t k = 0; k < menu.shown.size(); ++k) {
    total += probs[k] * (menu.prices[k] - virtual_costs[menu.shown[k]]);
  }
  return total;
}

}  // namespace broker
