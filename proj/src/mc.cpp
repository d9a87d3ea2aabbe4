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

#include "broker/mc.hpp"

#include <cmath>

#include "broker/buyer.hpp"
#include "broker/parallel.hpp"

namespace broker::mc {

namespace {

struct DrawAccumulator {
  double margin_sum = 0.0;
  double margin_sq = 0.0;
  std::vector<double> buys;

  explicit DrawAccumulator(size_t shown) : buys(shown, 0.0) {}

  void add(const DrawAccumulator& o) {
    margin_sum += o.margin_sum;
    margin_sq += o.margin_sq;
    for (size_t k = 0; k < buys.size(); ++k) buys[k] += o.buys[k];
  }
};

void run_draw(const MarketInstance& instance, const PriceMenu& menu,
              std::span<const double> virtual_costs, uint64_t seed,
              uint64_t stream, BuyerValuation& scratch,
              DrawAccumulator& acc) {
  for (size_t k = 0; k < menu.shown.size(); ++k) {
    const int idx = menu.shown[k];
    scratch.values[idx] =
        instance.items[idx].value.sample(seed, stream, static_cast<uint64_t>(idx));
  }
  const BuyerOutcome out = choose(scratch, menu);
  double margin = 0.0;
  if (out.bought) {
    for (size_t k = 0; k < menu.shown.size(); ++k) {
      if (menu.shown[k] == *out.bought) {
        acc.buys[k] += 1.0;
        break;
      }
    }
    margin = out.price_paid - virtual_costs[*out.bought];
  }
  acc.margin_sum += margin;
  acc.margin_sq += margin * margin;
}

MenuSimResult finalize(DrawAccumulator&& acc, int64_t samples) {
  MenuSimResult r;
  r.samples = samples;
  if (samples <= 0) return r;
  r.revenue_mean = acc.margin_sum / samples;
  const double var =
      std::max(0.0, acc.margin_sq / samples - r.revenue_mean * r.revenue_mean);
  r.revenue_stderr = std::sqrt(var / samples);
  r.buy_freq.resize(acc.buys.size());
  for (size_t k = 0; k < acc.buys.size(); ++k) {
    r.buy_freq[k] = acc.buys[k] / samples;
  }
  return r;
}

}  // namespace

MenuSimResult simulate_menu(const MarketInstance& instance,
                            const PriceMenu& menu,
                            std::span<const double> virtual_costs,
                            int64_t samples, uint64_t seed,
                            uint64_t stream_base) {
  validate_menu(menu, instance.n());
  const int64_t block = par::kDefaultBlock;
  const int64_t blocks = samples <= 0 ? 0 : (samples + block - 1) / block;
  std::vector<DrawAccumulator> partial(blocks,
                                       DrawAccumulator(menu.shown.size()));
#pragma omp parallel for schedule(static)
  for (int64_t b = 0; b < blocks; ++b) {
    BuyerValuation scratch{std::vector<double>(instance.n(), 0.0)};
    const int64_t first = b * block;
    const int64_t last = std::min(samples, first + block);
    for (int64_t d = first; d < last; ++d) {
      run_draw(instance, menu, virtual_costs, seed,
               stream_base + static_cast<uint64_t>(d), scratch, partial[b]);
    }
  }
  DrawAccumulator total(menu.shown.size());
  for (auto& p : partial) total.add(p);
  return finalize(std::move(total), samples);
}

MenuSimResult simulate_menu_serial(const MarketInstance& instance,
                                   const PriceMenu& menu,
                                   std::span<const double> virtual_costs,
                                   int64_t samples, uint64_t seed,
                                   uint64_t stream_base) {
  validate_menu(menu, instance.n());
  DrawAccumulator acc(menu.shown.size());
  BuyerValuation scratch{std::vector<double>(instance.n(), 0.0)};
  for (int64_t d = 0; d < samples; ++d) {
    run_draw(instance, menu, virtual_costs, seed,
             stream_base + static_cast<uint64_t>(d), scratch, acc);
  }
  return finalize(std::move(acc), samples);
}

MaxMarginEstimator::MaxMarginEstimator(const MarketInstance& instance,
                                       std::span<const double> virtual_costs,
                                       int64_t draws, uint64_t seed,
                                       uint64_t stream_base)
    : draws_(draws), psi_(instance.n()) {
  const int n = instance.n();
  for (int i = 0; i < n; ++i) psi_[i].resize(draws);
#pragma omp parallel for schedule(static)
  for (int64_t d = 0; d < draws; ++d) {
    for (int i = 0; i < n; ++i) {
      const auto& dist = instance.items[i].value;
      const double v = dist.sample(seed, stream_base + static_cast<uint64_t>(d),
                                   static_cast<uint64_t>(i));
      psi_[i][d] = dist.virtual_value(v) - virtual_costs[i];
    }
  }
}

double MaxMarginEstimator::value(std::span<const int> set) const {
  if (set.empty() || draws_ == 0) return 0.0;
  const double sum = par::block_sum(draws_, [&](int64_t first, int64_t last,
                                                int64_t) {
    double s = 0.0;
    for (int64_t d = first; d < last; ++d) {
      double m = 0.0;  // the no-sale option floors the max at zero
      for (int i : set) m = std::max(m, psi_[i][d]);
      s += m;
    }
    return s;
  });
  return sum / static_cast<double>(draws_);
}

double MaxMarginEstimator::value_serial(std::span<const int> set) const {
  if (set.empty() || draws_ == 0) return 0.0;
  double s = 0.0;
  for (int64_t d = 0; d < draws_; ++d) {
    double m = 0.0;
    for (int i : set) m = std::max(m, psi_[i][d]);
    s += m;
  }
  return s / static_cast<double>(draws_);
}

double MaxMarginEstimator::stderr_of(std::span<const int> set) const {
  if (set.empty() || draws_ < 2) return 0.0;
  double s = 0.0;
  double s2 = 0.0;
  for (int64_t d = 0; d < draws_; ++d) {
    double m = 0.0;
    for (int i : set) m = std::max(m, psi_[i][d]);
    s += m;
    s2 += m * m;
  }
  const double mean = s / draws_;
  const double var = std::max(0.0, s2 / draws_ - mean * mean);
  return std::sqrt(var / draws_);
}

}  // namespace broker::mc
