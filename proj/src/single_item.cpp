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

#include "broker/single_item.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "broker/numeric.hpp"

namespace broker {

namespace {

SingleItemQuote quote_at(const DistributionSpec& d, double price, double cost,
                         double r_out) {
  SingleItemQuote q;
  q.price = price;
  q.sale_prob = 1.0 - d.cdf(price);
  q.incremental_revenue =
      std::max(0.0, q.sale_prob * (price - cost - r_out));
  q.revenue = r_out + q.incremental_revenue;
  return q;
}

}  // namespace

SingleItemQuote myerson_price(const DistributionSpec& v_dist) {
  return price_with_outside_option(v_dist, 0.0, 0.0);
}

SingleItemQuote price_with_outside_option(const DistributionSpec& v_dist,
                                          double cost, double r_out) {
  if (!(r_out >= 0.0)) {
    throw std::domain_error("price_with_outside_option: r_out must be >= 0");
  }
  const auto [lo, hi] = v_dist.support();
  const double top = v_dist.upper_for_numerics();
  if (std::isfinite(hi) && cost + r_out >= hi) {
    // No price can both sell and cover cost plus outside option.
    return quote_at(v_dist, hi, cost, r_out);
  }
  // g is nondecreasing under MHR; its root is the unique interior optimum.
  // The bracket endpoints double as the boundary optima.
  const auto g = [&](double eta) {
    const double hr = v_dist.hazard_rate(eta);
    return eta - cost - r_out - 1.0 / hr;
  };
  double bracket_hi = top;
  if (!std::isfinite(hi)) {
    // Large cost + outside option can push the optimum past the numeric
    // tail quantile; widen until g changes sign.
    for (int i = 0; i < 64 && g(bracket_hi) < 0.0; ++i) {
      bracket_hi = lo + 2.0 * (bracket_hi - lo) + 1.0;
    }
  }
  const double eta = num::bisect_nondecreasing(g, lo, bracket_hi);
  return quote_at(v_dist, eta, cost, r_out);
}

double exponential_bound(double r_myerson, double r_out) {
  if (!(r_myerson > 0.0)) {
    throw std::domain_error("exponential_bound: r_myerson must be positive");
  }
  const double gamma = 1.0 / (std::numbers::e * r_myerson);
  return r_myerson * std::exp(-gamma * r_out);
}

bool ms_trade_rule(const DistributionSpec& v_dist,
                   const DistributionSpec& c_dist, double v, double c) {
  return v_dist.virtual_value(v) >= c_dist.virtual_cost(c);
}

}  // namespace broker
