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

#ifndef BROKER_SINGLE_ITEM_HPP_
#define BROKER_SINGLE_ITEM_HPP_

#include "broker/distribution.hpp"

namespace broker {

// Result of optimally pricing one item against a cost and an outside option.
//
// `revenue` is the total expected revenue including the outside option:
//   sale_prob * (price - cost) + (1 - sale_prob) * r_out.
// `incremental_revenue` is revenue - r_out and is never negative (pricing
// the item out is always available).
struct SingleItemQuote {
  double price = 0.0;
  double sale_prob = 0.0;
  double revenue = 0.0;
  double incremental_revenue = 0.0;
};

// Optimal posted price for a single item with no cost and no outside
// option: the price where the virtual value crosses zero.
SingleItemQuote myerson_price(const DistributionSpec& v_dist);

// Optimal posted price when selling costs `cost` and not selling is worth
// `r_out`: solves eta - cost - r_out = 1 / hr(eta). When several prices tie
// on a grid the smallest (the bisection root) is the one reported.
SingleItemQuote price_with_outside_option(const DistributionSpec& v_dist,
                                          double cost, double r_out);

// Upper bound on the incremental revenue of ANY MHR value distribution
// whose stand-alone optimal revenue is r_myerson, at outside option r_out.
// The bound is attained by the exponential distribution with
// rate = 1 / (e * r_myerson).
double exponential_bound(double r_myerson, double r_out);

// Bilateral-trade rule for one buyer and one seller: trade happens exactly
// when the buyer's virtual value covers the seller's virtual cost.
bool ms_trade_rule(const DistributionSpec& v_dist,
                   const DistributionSpec& c_dist, double v, double c);

}  // namespace broker

#endif  // BROKER_SINGLE_ITEM_HPP_
