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

#ifndef BROKER_MC_HPP_
#define BROKER_MC_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "broker/market.hpp"
#include "broker/rng.hpp"

namespace broker::mc {

struct MenuSimResult {
  double revenue_mean = 0.0;    // mean margin (price - virtual cost) per draw
  double revenue_stderr = 0.0;
  std::vector<double> buy_freq;  // aligned with menu.shown
  int64_t samples = 0;
};

// Monte Carlo revenue of a menu. Draw d of item i is addressed by
// (seed, stream_base + d, position i), so results do not depend on thread
// count or scheduling; the OpenMP version reduces over fixed blocks.
MenuSimResult simulate_menu(const MarketInstance& instance,
                            const PriceMenu& menu,
                            std::span<const double> virtual_costs,
                            int64_t samples, uint64_t seed,
                            uint64_t stream_base = rng::kStreamMenuSim);

// Straight-line single-threaded reference used by tests and the benchmark.
MenuSimResult simulate_menu_serial(const MarketInstance& instance,
                                   const PriceMenu& menu,
                                   std::span<const double> virtual_costs,
                                   int64_t samples, uint64_t seed,
                                   uint64_t stream_base = rng::kStreamMenuSim);

// Common-random-number estimator of E[ max(0, max_{i in S} psi_i) ] where
// psi_i = virtual value of item i's draw minus its virtual cost. All subset
// evaluations reuse one draw matrix, which keeps greedy comparisons
// consistent.
class MaxMarginEstimator {
 public:
  MaxMarginEstimator(const MarketInstance& instance,
                     std::span<const double> virtual_costs, int64_t draws,
                     uint64_t seed, uint64_t stream_base = rng::kStreamEstimator);

  double value(std::span<const int> set) const;
  double value_serial(std::span<const int> set) const;
  // Standard error of value(set) on the same draws.
  double stderr_of(std::span<const int> set) const;
  int64_t draws() const { return draws_; }

 private:
  int64_t draws_;
  std::vector<std::vector<double>> psi_;  // [item][draw]
};

}  // namespace broker::mc

#endif  // BROKER_MC_HPP_
