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

#ifndef BROKER_BUYER_HPP_
#define BROKER_BUYER_HPP_

#include <span>
#include <vector>

#include "broker/market.hpp"

namespace broker {

// Deterministic buyer choice. Zero surplus buys; ties among shown items go
// to the lowest item index.
BuyerOutcome choose_full(const BuyerValuation& values, const PriceMenu& menu);

// Cascade choice: scan `shown` in order, buy the first item with v >= p.
BuyerOutcome choose_cascade(const BuyerValuation& values,
                            const PriceMenu& menu);

// Dispatch on menu.mode (k-limited is full attention over the shown set).
BuyerOutcome choose(const BuyerValuation& values, const PriceMenu& menu);

// Exact purchase probabilities by quadrature (full / k-limited) or in
// closed form (cascade). Entry k is the probability of buying menu.shown[k].
std::vector<double> purchase_probabilities(const MarketInstance& instance,
                                           const PriceMenu& menu);

// Expected margin revenue sum_k P(buy shown[k]) * (price_k - theta_k), with
// virtual_costs indexed by item (size n).
double expected_revenue(const MarketInstance& instance, const PriceMenu& menu,
                        std::span<const double> virtual_costs);

}  // namespace broker

#endif  // BROKER_BUYER_HPP_
