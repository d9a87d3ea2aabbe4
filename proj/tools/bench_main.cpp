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

// Benchmark comparing the OpenMP kernels against their serial references.
// The parallel kernels must agree with the references (revenues exactly for
// the oracles, to float reassociation for the Monte Carlo sums).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "broker/harness.hpp"
#include "broker/mc.hpp"
#include "broker/oracle.hpp"
#include "broker/parallel.hpp"
#include "broker/strategies.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct Line {
  const char* name;
  double serial_ms;
  double parallel_ms;
  double rel_gap;
};

void print(const Line& line) {
  std::printf("%-28s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx   "
              "|gap| %.2e\n",
              line.name, line.serial_ms, line.parallel_ms,
              line.serial_ms / std::max(line.parallel_ms, 1e-9),
              line.rel_gap);
}

}  // namespace

int main(int argc, char** argv) {
  int threads = 0;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--threads") threads = std::atoi(argv[i + 1]);
  }
  broker::par::set_threads(threads);
  std::printf("threads: %d\n", broker::par::max_threads());

  const uint64_t seed = 7;
  const auto instance = broker::harness::random_instance(seed, 1, 3);
  const auto costs = broker::harness::sample_costs(instance, seed, 1);
  const auto strat = broker::anonymous_reserve(instance, costs);

  {
    const int64_t draws = 2'000'000;
    auto t0 = Clock::now();
    const auto serial = broker::mc::simulate_menu_serial(
        instance, strat.menu, strat.virtual_costs, draws, seed);
    const double ts = ms_since(t0);
    t0 = Clock::now();
    const auto parallel = broker::mc::simulate_menu(
        instance, strat.menu, strat.virtual_costs, draws, seed);
    const double tp = ms_since(t0);
    print({"menu Monte Carlo (2e6)", ts, tp,
           std::abs(serial.revenue_mean - parallel.revenue_mean)});
  }
  {
    const auto theta = broker::reduce_costs(instance, costs);
    broker::mc::MaxMarginEstimator est(instance, theta, 1'000'000, seed);
    const std::vector<int> set = {0, 1, 2};
    auto t0 = Clock::now();
    const double vs = est.value_serial(set);
    const double ts = ms_since(t0);
    t0 = Clock::now();
    const double vp = est.value(set);
    const double tp = ms_since(t0);
    print({"expected-max estimate (1e6)", ts, tp, std::abs(vs - vp)});
  }
  {
    const auto disc = broker::oracle::discretize(instance, costs, 50);
    auto t0 = Clock::now();
    const auto serial = broker::oracle::oracle_full_serial(disc);
    const double ts = ms_since(t0);
    t0 = Clock::now();
    const auto parallel = broker::oracle::oracle_full(disc);
    const double tp = ms_since(t0);
    print({"full oracle (n=3, m=50)", ts, tp,
           std::abs(serial.revenue - parallel.revenue)});
  }
  {
    const auto big = broker::harness::random_instance(seed, 2, 7);
    const auto big_costs = broker::harness::sample_costs(big, seed, 2);
    const auto disc = broker::oracle::discretize(big, big_costs, 50);
    auto t0 = Clock::now();
    const auto serial = broker::oracle::oracle_cascade_serial(disc);
    const double ts = ms_since(t0);
    t0 = Clock::now();
    const auto parallel = broker::oracle::oracle_cascade(disc);
    const double tp = ms_since(t0);
    print({"cascade oracle (n=7, m=50)", ts, tp,
           std::abs(serial.revenue - parallel.revenue)});
  }
  return 0;
}
