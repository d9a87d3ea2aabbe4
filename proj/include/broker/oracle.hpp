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

#ifndef BROKER_ORACLE_HPP_
#define BROKER_ORACLE_HPP_

#include <span>
#include <stdexcept>
#include <vector>

#include "broker/market.hpp"

namespace broker::oracle {

// Brute-force optima on small discretized instances. These provide the
// denominators for every approximation-ratio test, so they favour exactness
// over speed and carry explicit size guards.

class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DiscretizedItem {
  std::vector<double> values;  // ascending equal-mass quantile midpoints
  std::vector<double> psi;     // virtual margin at each midpoint
  double mass = 0.0;           // 1 / m for every midpoint
};

struct DiscretizedInstance {
  std::vector<DiscretizedItem> items;
  std::vector<double> virtual_costs;
  int m = 0;
  // Conservative per-draw discretization error: the widest quantile bucket
  // times its mass, maximized over items.
  double error_bound = 0.0;
  int n() const { return static_cast<int>(items.size()); }
};

// Replace each value distribution by m equal-mass quantile midpoints;
// `costs` are raw seller reports, reduced to virtual costs internally.
DiscretizedInstance discretize(const MarketInstance& instance,
                               std::span<const double> costs, int m);

// Exact expected margin revenue of a menu against the discrete values,
// using the same buyer tie and zero-surplus rules as the continuous code.
double eval_menu(const DiscretizedInstance& disc, const PriceMenu& menu);
// Reference evaluator that enumerates all m^n joint outcomes and runs the
// actual buyer choice function; used to cross-check eval_menu.
double eval_menu_enumerate(const DiscretizedInstance& disc,
                           const PriceMenu& menu);

struct FullResult {
  // One price per item; an absent (hidden) item carries +infinity.
  std::vector<double> prices;
  double revenue = 0.0;
  PriceMenu menu() const;  // hidden items dropped
};

// Exhaustive search over posted-price menus in the full-attention model.
// Candidate prices for an item are its own support points at or above its
// virtual cost, plus hiding it; callers may inject extra candidates (for
// example a strategy's prices) via `extra`.
FullResult oracle_full(const DiscretizedInstance& disc,
                       std::span<const std::vector<double>> extra = {});
FullResult oracle_full_serial(const DiscretizedInstance& disc,
                              std::span<const std::vector<double>> extra = {});

// Same search restricted to menus showing only items from `keep`.
FullResult oracle_full_subset(const DiscretizedInstance& disc,
                              std::span<const int> keep);

// Best full-attention revenue over all subsets of at most k shown items.
FullResult oracle_best_k_full(const DiscretizedInstance& disc, int k);

struct CascadeResult {
  std::vector<int> order;
  std::vector<double> prices;      // aligned with order
  std::vector<double> cumulative;  // R_k in shown order
  double revenue = 0.0;
};

// Optimal prices for one fixed order by exact backward induction on the
// discrete distributions.
CascadeResult cascade_fixed_order(const DiscretizedInstance& disc,
                                  std::span<const int> order);

// Best cascade over all n! orders (n <= 8).
CascadeResult oracle_cascade(const DiscretizedInstance& disc);
CascadeResult oracle_cascade_serial(const DiscretizedInstance& disc);

// Exact E[max(0, max_{i in set} psi_i)] on the discretization.
double expected_max_margin(const DiscretizedInstance& disc,
                           std::span<const int> set);

struct SubsetResult {
  std::vector<int> subset;
  double value = 0.0;
};

// Best size-<=k subset under expected_max_margin, by enumeration (n <= 15).
SubsetResult oracle_best_subset(const DiscretizedInstance& disc, int k);

}  // namespace broker::oracle

#endif  // BROKER_ORACLE_HPP_
