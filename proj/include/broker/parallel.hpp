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

#ifndef BROKER_PARALLEL_HPP_
#define BROKER_PARALLEL_HPP_

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace broker::par {

// Thread-count-invariant reductions. Work is cut into fixed blocks whose
// partial results land in an indexed buffer and are combined serially in
// block order, so the floating-point result is bit-identical at any thread
// count. This is what lets `check` promise byte-identical CSVs.

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline void set_threads(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

inline constexpr int64_t kDefaultBlock = 4096;

// fn(first, last, block_index) -> double partial over [first, last).
template <class F>
double block_sum(int64_t count, F&& fn, int64_t block = kDefaultBlock) {
  if (count <= 0) return 0.0;
  const int64_t blocks = (count + block - 1) / block;
  std::vector<double> partial(blocks, 0.0);
#pragma omp parallel for schedule(static)
  for (int64_t b = 0; b < blocks; ++b) {
    const int64_t first = b * block;
    const int64_t last = std::min(count, first + block);
    partial[b] = fn(first, last, b);
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

// Argmax of eval(i) over [0, count) with deterministic tie-breaking toward
// the smallest index. Comparisons are exact, so the result is independent
// of how candidates are partitioned across threads.
template <class F>
std::pair<double, int64_t> argmax_indexed(int64_t count, F&& eval) {
  double best_val = -1.0 / 0.0;
  int64_t best_idx = -1;
#pragma omp parallel
  {
    double local_val = -1.0 / 0.0;
    int64_t local_idx = -1;
#pragma omp for schedule(static) nowait
    for (int64_t i = 0; i < count; ++i) {
      const double v = eval(i);
      if (v > local_val || (v == local_val && i < local_idx)) {
        local_val = v;
        local_idx = i;
      }
    }
#pragma omp critical(broker_argmax)
    {
      if (local_idx >= 0 &&
          (local_val > best_val ||
           (local_val == best_val && local_idx < best_idx) || best_idx < 0)) {
        best_val = local_val;
        best_idx = local_idx;
      }
    }
  }
  return {best_val, best_idx};
}

}  // namespace broker::par

#endif  // BROKER_PARALLEL_HPP_
