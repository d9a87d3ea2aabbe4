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

#include "broker/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>

#include "broker/buyer.hpp"
#include "broker/strategies.hpp"

namespace broker::oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int count_less(const std::vector<double>& sorted, double x) {
  return static_cast<int>(
      std::lower_bound(sorted.begin(), sorted.end(), x) - sorted.begin());
}

int count_less_equal(const std::vector<double>& sorted, double x) {
  return static_cast<int>(
      std::upper_bound(sorted.begin(), sorted.end(), x) - sorted.begin());
}

// Per-menu scratch for the counting evaluator: surpluses of each shown item
// at the current prices, ascending because the atoms are ascending.
struct FullEvalScratch {
  std::vector<std::vector<double>> surplus;
  explicit FullEvalScratch(const DiscretizedInstance& disc)
      : surplus(disc.items.size()) {
    for (size_t i = 0; i < disc.items.size(); ++i) {
      surplus[i].resize(disc.items[i].values.size());
    }
  }
};

// Exact full-attention revenue for item-indexed prices (+infinity hides an
// item). Counts joint outcomes with the buyer's rules: zero surplus buys,
// ties go to the lowest item index.
double eval_full_prices(const DiscretizedInstance& disc,
                        std::span<const double> prices,
                        FullEvalScratch& scratch) {
  const int n = disc.n();
  int shown[16];
  int n_shown = 0;
  for (int i = 0; i < n; ++i) {
    if (std::isfinite(prices[i])) shown[n_shown++] = i;
  }
  if (n_shown == 0) return 0.0;
  for (int s = 0; s < n_shown; ++s) {
    const int i = shown[s];
    const auto& vals = disc.items[i].values;
    auto& sur = scratch.surplus[i];
    for (size_t t = 0; t < vals.size(); ++t) sur[t] = vals[t] - prices[i];
  }
  const int m = disc.m;
  double total_weight = 0.0;  // sum over items of winning outcome counts * margin
  for (int s = 0; s < n_shown; ++s) {
    const int i = shown[s];
    const double margin = prices[i] - disc.virtual_costs[i];
    const auto& sur = scratch.surplus[i];
    const int first = count_less(sur, 0.0);  // zero surplus still buys
    double wins = 0.0;
    for (int t = first; t < m; ++t) {
      const double si = sur[t];
      double w = 1.0;
      for (int r = 0; r < n_shown && w != 0.0; ++r) {
        if (r == s) continue;
        const int j = shown[r];
        // The lower item index wins ties, so item i beats a lower-indexed
        // j only with strictly larger surplus.
        w *= (j < i) ? count_less(scratch.surplus[j], si)
                     : count_less_equal(scratch.surplus[j], si);
      }
      wins += w;
    }
    total_weight += wins * margin;
  }
  double mass = 1.0;
  for (int s = 0; s < n_shown; ++s) mass /= m;
  return total_weight * mass;
}

std::vector<double> menu_as_item_prices(const DiscretizedInstance& disc,
                                        const PriceMenu& menu) {
  std::vector<double> prices(disc.n(), kInf);
  for (size_t k = 0; k < menu.shown.size(); ++k) {
    prices[menu.shown[k]] = menu.prices[k];
  }
  return prices;
}

int64_t factorial(int n) {
  int64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// rank -> permutation of [0, n) in lexicographic order.
void decode_permutation(int64_t rank, int n, std::vector<int>& out) {
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  out.clear();
  int64_t f = factorial(n - 1);
  for (int pos = 0; pos < n; ++pos) {
    const int idx = static_cast<int>(rank / f);
    rank %= f;
    out.push_back(pool[idx]);
    pool.erase(pool.begin() + idx);
    if (pos + 1 < n) f /= (n - 1 - pos);
  }
}

double eval_cascade_order(const DiscretizedInstance& disc,
                          std::span<const int> order) {
  double behind = 0.0;
  for (size_t pos = order.size(); pos-- > 0;) {
    const int item = order[pos];
    const auto& vals = disc.items[item].values;
    const double theta = disc.virtual_costs[item];
    const int m = disc.m;
    double best = 0.0;
    for (int t = 0; t < m; ++t) {
      const int sales = m - count_less(vals, vals[t]);
      const double gain =
          (static_cast<double>(sales) / m) * (vals[t] - theta - behind);
      if (gain > best) best = gain;
    }
    behind += best;
  }
  return behind;
}

}  // namespace

DiscretizedInstance discretize(const MarketInstance& instance,
                               std::span<const double> costs, int m) {
  if (m < 2) throw std::invalid_argument("discretize: m must be at least 2");
  if (static_cast<int64_t>(m) * instance.n() > 4'000'000) {
    throw ResourceError("discretize: m * n exceeds the 4e6 point budget");
  }
  DiscretizedInstance disc;
  disc.m = m;
  disc.virtual_costs = reduce_costs(instance, costs);
  disc.items.resize(instance.n());
  for (int i = 0; i < instance.n(); ++i) {
    const auto& dist = instance.items[i].value;
    auto& item = disc.items[i];
    item.mass = 1.0 / m;
    item.values.resize(m);
    item.psi.resize(m);
    for (int t = 0; t < m; ++t) {
      const double q = (2.0 * t + 1.0) / (2.0 * m);
      item.values[t] = dist.quantile(q);
      item.psi[t] = dist.virtual_value(item.values[t]) - disc.virtual_costs[i];
    }
    double widest = 0.0;
    double prev_edge = dist.support().lo;
    for (int t = 0; t < m; ++t) {
      const double edge = (t + 1 == m) ? dist.upper_for_numerics()
                                       : dist.quantile((t + 1.0) / m);
      widest = std::max(widest, edge - prev_edge);
      prev_edge = edge;
    }
    disc.error_bound = std::max(disc.error_bound, widest / m);
  }
  return disc;
}

double eval_menu(const DiscretizedInstance& disc, const PriceMenu& menu) {
  validate_menu(menu, disc.n());
  if (menu.mode == MenuMode::kCascade) {
    double reach = 1.0;
    double revenue = 0.0;
    for (size_t k = 0; k < menu.shown.size(); ++k) {
      const int item = menu.shown[k];
      const auto& vals = disc.items[item].values;
      const double pass =
          static_cast<double>(count_less(vals, menu.prices[k])) / disc.m;
      revenue += reach * (1.0 - pass) *
                 (menu.prices[k] - disc.virtual_costs[item]);
      reach *= pass;
    }
    return revenue;
  }
  FullEvalScratch scratch(disc);
  return eval_full_prices(disc, menu_as_item_prices(disc, menu), scratch);
}

double eval_menu_enumerate(const DiscretizedInstance& disc,
                           const PriceMenu& menu) {
  validate_menu(menu, disc.n());
  const int shown = static_cast<int>(menu.shown.size());
  double outcomes = 1.0;
  for (int k = 0; k < shown; ++k) outcomes *= disc.m;
  if (outcomes > 5e7) {
    throw ResourceError("eval_menu_enumerate: more than 5e7 joint outcomes");
  }
  // Map shown-item prices onto full m^shown enumeration through the real
  // buyer choice functions.
  std::vector<int> digit(shown, 0);
  BuyerValuation values{std::vector<double>(disc.n(), 0.0)};
  double total = 0.0;
  const double mass = 1.0 / outcomes;
  while (true) {
    for (int k = 0; k < shown; ++k) {
      values.values[menu.shown[k]] = disc.items[menu.shown[k]].values[digit[k]];
    }
    const BuyerOutcome out = choose(values, menu);
    if (out.bought) {
      total += mass * (out.price_paid - disc.virtual_costs[*out.bought]);
    }
    int k = shown - 1;
    while (k >= 0 && ++digit[k] == disc.m) digit[k--] = 0;
    if (k < 0) break;
  }
  return total;
}

PriceMenu FullResult::menu() const {
  PriceMenu menu;
  menu.mode = MenuMode::kFull;
  for (size_t i = 0; i < prices.size(); ++i) {
    if (std::isfinite(prices[i])) {
      menu.shown.push_back(static_cast<int>(i));
      menu.prices.push_back(prices[i]);
    }
  }
  return menu;
}

namespace {

// Candidate prices per item: own support atoms at or above the virtual
// cost, any injected extras, and +infinity for hiding the item. Pricing
// below virtual cost is dominated by hiding, so those atoms are pruned.
// Items outside `keep` (when nonempty) only get the hidden option.
std::vector<std::vector<double>> candidate_grids(
    const DiscretizedInstance& disc, std::span<const std::vector<double>> extra,
    std::span<const int> keep = {}) {
  std::vector<char> kept(disc.n(), keep.empty() ? 1 : 0);
  for (int i : keep) kept[i] = 1;
  std::vector<std::vector<double>> grids(disc.n());
  for (int i = 0; i < disc.n(); ++i) {
    auto& g = grids[i];
    if (kept[i]) {
      for (double v : disc.items[i].values) {
        if (v >= disc.virtual_costs[i]) g.push_back(v);
      }
      if (!extra.empty()) {
        for (double p : extra[i]) {
          if (std::isfinite(p) && p >= disc.virtual_costs[i]) g.push_back(p);
        }
      }
      std::sort(g.begin(), g.end());
      g.erase(std::unique(g.begin(), g.end()), g.end());
    }
    g.push_back(kInf);
  }
  return grids;
}

template <bool kParallel>
FullResult oracle_full_impl(const DiscretizedInstance& disc,
                            std::span<const std::vector<double>> extra,
                            std::span<const int> keep = {}) {
  const int n = disc.n();
  if (n > 4) {
    throw ResourceError(
        "oracle_full: feasible only up to n = 4 items, got n = " +
        std::to_string(n));
  }
  const auto grids = candidate_grids(disc, extra, keep);
  int64_t combos = 1;
  for (const auto& g : grids) combos *= static_cast<int64_t>(g.size());
  if (combos > 50'000'000) {
    throw ResourceError(
        "oracle_full: price grid has " + std::to_string(combos) +
        " combinations; feasible bound is 5e7");
  }

  double best_rev = -kInf;
  int64_t best_combo = -1;
#pragma omp parallel if (kParallel)
  {
    FullEvalScratch scratch(disc);
    std::vector<double> prices(n);
    double local_rev = -kInf;
    int64_t local_combo = -1;
#pragma omp for schedule(static) nowait
    for (int64_t c = 0; c < combos; ++c) {
      int64_t rest = c;
      for (int i = n - 1; i >= 0; --i) {
        const auto& g = grids[i];
        prices[i] = g[rest % g.size()];
        rest /= g.size();
      }
      const double rev = eval_full_prices(disc, prices, scratch);
      if (rev > local_rev || (rev == local_rev && c < local_combo)) {
        local_rev = rev;
        local_combo = c;
      }
    }
#pragma omp critical(broker_oracle_full)
    {
      if (local_combo >= 0 &&
          (best_combo < 0 || local_rev > best_rev ||
           (local_rev == best_rev && local_combo < best_combo))) {
        best_rev = local_rev;
        best_combo = local_combo;
      }
    }
  }

  FullResult result;
  result.prices.resize(n);
  int64_t rest = best_combo;
  for (int i = n - 1; i >= 0; --i) {
    const auto& g = grids[i];
    result.prices[i] = g[rest % g.size()];
    rest /= g.size();
  }
  result.revenue = best_rev;
  return result;
}

}  // namespace

FullResult oracle_full(const DiscretizedInstance& disc,
                       std::span<const std::vector<double>> extra) {
  return oracle_full_impl<true>(disc, extra);
}

FullResult oracle_full_serial(const DiscretizedInstance& disc,
                              std::span<const std::vector<double>> extra) {
  return oracle_full_impl<false>(disc, extra);
}

FullResult oracle_full_subset(const DiscretizedInstance& disc,
                              std::span<const int> keep) {
  return oracle_full_impl<true>(disc, {}, keep);
}

FullResult oracle_best_k_full(const DiscretizedInstance& disc, int k) {
  const int n = disc.n();
  k = std::min(k, n);
  if (k < 1) throw std::invalid_argument("oracle_best_k_full: k must be >= 1");
  std::vector<int> combo(k);
  std::iota(combo.begin(), combo.end(), 0);
  FullResult best;
  best.revenue = -kInf;
  while (true) {
    FullResult r = oracle_full_subset(disc, combo);
    if (r.revenue > best.revenue) best = std::move(r);
    int i = k - 1;
    while (i >= 0 && combo[i] == n - k + i) --i;
    if (i < 0) break;
    ++combo[i];
    for (int j = i + 1; j < k; ++j) combo[j] = combo[j - 1] + 1;
  }
  return best;
}

CascadeResult cascade_fixed_order(const DiscretizedInstance& disc,
                                  std::span<const int> order) {
  validate_menu({MenuMode::kCascade, std::vector<int>(order.begin(), order.end()),
                 std::vector<double>(order.size(), 0.0)},
                disc.n());
  CascadeResult res;
  res.order.assign(order.begin(), order.end());
  const size_t len = order.size();
  res.prices.assign(len, kInf);
  res.cumulative.assign(len, 0.0);
  double behind = 0.0;
  for (size_t pos = len; pos-- > 0;) {
    const int item = order[pos];
    const auto& vals = disc.items[item].values;
    const double theta = disc.virtual_costs[item];
    double best = 0.0;
    double best_price = kInf;  // never sell when no positive margin exists
    for (int t = 0; t < disc.m; ++t) {
      const int sales = disc.m - count_less(vals, vals[t]);
      const double gain =
          (static_cast<double>(sales) / disc.m) * (vals[t] - theta - behind);
      if (gain > best) {
        best = gain;
        best_price = vals[t];
      }
    }
    res.prices[pos] = best_price;
    behind += best;
    res.cumulative[pos] = behind;
  }
  res.revenue = behind;
  return res;
}

namespace {

template <bool kParallel>
CascadeResult oracle_cascade_impl(const DiscretizedInstance& disc) {
  const int n = disc.n();
  if (n > 8) {
    throw ResourceError(
        "oracle_cascade: order enumeration feasible only up to n = 8, got "
        "n = " +
        std::to_string(n));
  }
  const int64_t total = factorial(n);
  double best_rev = -kInf;
  int64_t best_rank = -1;
#pragma omp parallel if (kParallel)
  {
    std::vector<int> order;
    double local_rev = -kInf;
    int64_t local_rank = -1;
#pragma omp for schedule(static) nowait
    for (int64_t rank = 0; rank < total; ++rank) {
      decode_permutation(rank, n, order);
      const double rev = eval_cascade_order(disc, order);
      if (rev > local_rev || (rev == local_rev && rank < local_rank)) {
        local_rev = rev;
        local_rank = rank;
      }
    }
#pragma omp critical(broker_oracle_cascade)
    {
      if (local_rank >= 0 &&
          (best_rank < 0 || local_rev > best_rev ||
           (local_rev == best_rev && local_rank < best_rank))) {
        best_rev = local_rev;
        best_rank = local_rank;
      }
    }
  }
  std::vector<int> best_order;
  decode_permutation(best_rank, n, best_order);
  return cascade_fixed_order(disc, best_order);
}

}  // namespace

CascadeResult oracle_cascade(const DiscretizedInstance& disc) {
  return oracle_cascade_impl<true>(disc);
}

CascadeResult oracle_cascade_serial(const DiscretizedInstance& disc) {
  return oracle_cascade_impl<false>(disc);
}

double expected_max_margin(const DiscretizedInstance& disc,
                           std::span<const int> set) {
  if (set.empty()) return 0.0;
  // Sweep the union of psi atoms in ascending order, tracking per-item
  // counts of atoms at or below the sweep point.
  struct Cursor {
    const std::vector<double>* psi;
    int next = 0;
  };
  std::vector<Cursor> cur;
  cur.reserve(set.size());
  for (int i : set) cur.push_back({&disc.items[i].psi, 0});
  const int m = disc.m;
  double expected = 0.0;
  double prev_cdf = 0.0;
  while (true) {
    double t = kInf;
    for (const auto& c : cur) {
      if (c.next < m) t = std::min(t, (*c.psi)[c.next]);
    }
    if (!std::isfinite(t)) break;
    for (auto& c : cur) {
      while (c.next < m && (*c.psi)[c.next] <= t) ++c.next;
    }
    double cdf = 1.0;
    for (const auto& c : cur) cdf *= static_cast<double>(c.next) / m;
    if (t > 0.0) expected += t * (cdf - prev_cdf);
    prev_cdf = cdf;
  }
  return expected;
}

SubsetResult oracle_best_subset(const DiscretizedInstance& disc, int k) {
  const int n = disc.n();
  if (n > 15) {
    throw ResourceError(
        "oracle_best_subset: subset enumeration feasible only up to n = 15");
  }
  k = std::min(k, n);
  if (k < 1) throw std::invalid_argument("oracle_best_subset: k must be >= 1");
  // The objective is monotone, so the optimum over sizes <= k is attained
  // at size exactly k; enumerate k-combinations in lexicographic order.
  std::vector<int> combo(k);
  std::iota(combo.begin(), combo.end(), 0);
  SubsetResult best;
  best.value = -kInf;
  while (true) {
    const double v = expected_max_margin(disc, combo);
    if (v > best.value) {
      best.value = v;
      best.subset = combo;
    }
    int i = k - 1;
    while (i >= 0 && combo[i] == n - k + i) --i;
    if (i < 0) break;
    ++combo[i];
    for (int j = i + 1; j < k; ++j) combo[j] = combo[j - 1] + 1;
  }
  return best;
}

}  // namespace broker::oracle
