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

#ifndef BROKER_NUMERIC_HPP_
#define BROKER_NUMERIC_HPP_

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace broker::num {

inline constexpr double kRootTol = 1e-10;
inline constexpr int kRootMaxIter = 200;
inline constexpr double kQuadRelTol = 1e-8;

// Root of a nondecreasing function on [lo, hi] by bisection. If g has no
// sign change on the bracket the nearer endpoint is returned, which is the
// clamping behaviour the pricing code relies on.
template <class F>
double bisect_nondecreasing(F&& g, double lo, double hi,
                            double tol = kRootTol, int max_iter = kRootMaxIter) {
  double glo = g(lo);
  if (glo >= 0.0) return lo;
  double ghi = g(hi);
  if (ghi <= 0.0) return hi;
  for (int i = 0; i < max_iter && hi - lo > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

namespace detail {

template <class F>
double adaptive_simpson(F& f, double a, double m, double b, double fa,
                        double fm, double fb, double whole, double eps,
                        int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * eps) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson(f, a, lm, m, fa, flm, fm, left, 0.5 * eps,
                          depth - 1) +
         adaptive_simpson(f, m, rm, b, fm, frm, fb, right, 0.5 * eps,
                          depth - 1);
}

}  // namespace detail

// Adaptive Simpson over [a, b]. Known kinks of the integrand are passed as
// breakpoints and become panel boundaries.
template <class F>
double integrate(F&& f, double a, double b,
                 std::span<const double> breakpoints = {},
                 double rel_tol = kQuadRelTol) {
  if (!(b > a)) return 0.0;
  std::vector<double> cuts;
  cuts.push_back(a);
  for (double x : breakpoints) {
    if (x > a && x < b) cuts.push_back(x);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());

  // First pass to size the absolute tolerance.
  double rough = 0.0;
  std::vector<double> fvals(cuts.size());
  for (size_t i = 0; i < cuts.size(); ++i) fvals[i] = f(cuts[i]);
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    rough += 0.5 * (cuts[i + 1] - cuts[i]) * (fvals[i] + fvals[i + 1]);
  }
  const double eps_total = rel_tol * std::max(std::abs(rough), 1e-12);

  double total = 0.0;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i];
    const double hi = cuts[i + 1];
    if (!(hi > lo)) continue;
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    const double whole = (hi - lo) / 6.0 * (fvals[i] + 4.0 * fm + fvals[i + 1]);
    const double eps = eps_total * (hi - lo) / (b - a);
    total += detail::adaptive_simpson(f, lo, mid, hi, fvals[i], fm,
                                      fvals[i + 1], whole, eps, 40);
  }
  return total;
}

// Composite trapezoid on [a, b], doubling the grid until the Richardson
// extrapolation moves by less than abs_tol. Suited to monotone, piecewise
// smooth integrands whose evaluations are expensive.
template <class F>
double trapezoid_refine(F&& f, double a, double b, double abs_tol = 1e-5,
                        int initial_intervals = 64, int max_intervals = 4096) {
  if (!(b > a)) return 0.0;
  int n = initial_intervals;
  double h = (b - a) / n;
  double sum = 0.5 * (f(a) + f(b));
  for (int i = 1; i < n; ++i) sum += f(a + i * h);
  double t_prev = sum * h;
  double rich_prev = t_prev;
  while (n < max_intervals) {
    double add = 0.0;
    for (int i = 0; i < n; ++i) add += f(a + (i + 0.5) * h);
    const double t_next = 0.5 * t_prev + 0.5 * h * add;
    const double rich = (4.0 * t_next - t_prev) / 3.0;
    n *= 2;
    h *= 0.5;
    t_prev = t_next;
    if (std::abs(rich - rich_prev) < abs_tol) return rich;
    rich_prev = rich;
  }
  return rich_prev;
}

double normal_pdf(double z);
double normal_cdf(double z);
// Inverse standard normal CDF, |error| < 1e-13 over (0, 1).
double inverse_normal_cdf(double p);

}  // namespace broker::num

#endif  // BROKER_NUMERIC_HPP_
