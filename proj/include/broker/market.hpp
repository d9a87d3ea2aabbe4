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

#ifndef BROKER_MARKET_HPP_
#define BROKER_MARKET_HPP_

#include <optional>
#include <vector>

#include "broker/distribution.hpp"

namespace broker {

// One listing: the buyer's value distribution and the seller's cost
// distribution for the item.
struct MarketItem {
  DistributionSpec value;
  DistributionSpec cost;
};

struct MarketInstance {
  std::vector<MarketItem> items;
  int n() const { return static_cast<int>(items.size()); }
};

enum class MenuMode { kFull, kKLimited, kCascade };

// What the buyer sees: which items, at what prices, and (in cascade mode)
// in what order.
struct PriceMenu {
  MenuMode mode = MenuMode::kFull;
  std::vector<int> shown;      // item indices; order matters in cascade mode
  std::vector<double> prices;  // aligned with `shown`
};

// Throws std::invalid_argument when the menu shape is inconsistent with an
// n-item instance (duplicate indices, non-finite prices, size mismatch).
void validate_menu(const PriceMenu& menu, int n);

struct BuyerValuation {
  std::vector<double> values;  // one draw per item
};

struct BuyerOutcome {
  std::optional<int> bought;  // item index
  double price_paid = 0.0;
  double surplus = 0.0;
};

}  // namespace broker

#endif  // BROKER_MARKET_HPP_
