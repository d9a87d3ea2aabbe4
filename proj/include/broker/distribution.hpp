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

#ifndef BROKER_DISTRIBUTION_HPP_
#define BROKER_DISTRIBUTION_HPP_

#include <cstdint>
#include <string>

namespace broker {

enum class Family {
  kExponential,
  kUniform,
  kShiftedExponential,
  kTruncatedNormal,
};

std::string family_name(Family f);

struct Support {
  double lo;
  double hi;  // may be +infinity
};

// A parametric continuous value/cost distribution with monotone hazard rate,
// plus the virtual-value and virtual-cost views used by the pricing code.
//
// Instances are immutable after construction and safe to share across
// threads. All four families are MHR by construction; the truncated normal
// additionally grid-validates monotonicity of its hazard rate and virtual
// cost when built.
class DistributionSpec {
 public:
  static DistributionSpec exponential(double rate);
  static DistributionSpec uniform(double lo, double hi);
  static DistributionSpec shifted_exponential(double rate, double shift);
  static DistributionSpec truncated_normal(double mean, double sigma);

  Family family() const;
  Support support() const { return {lo_, hi_}; }
  // Finite stand-in for the upper support end: hi itself when bounded,
  // otherwise the 1 - 1e-9 quantile.
  double upper_for_numerics() const;

  double pdf(double z) const;               // 0 outside the support
  double cdf(double z) const;               // clamped to [0, 1]
  double quantile(double q) const;          // q in [0, 1)
  double hazard_rate(double z) const;       // f / (1 - F); throws off-support
  double virtual_value(double v) const;     // v - (1-F)/f; throws off-support
  double virtual_cost(double c) const;      // c + F/f; throws off-support
  // Unique v with virtual_value(v) == r, clamped to the support ends when r
  // lies outside the attainable range.
  double inverse_virtual_value(double r) const;

  // The same distribution translated right by delta >= 0.
  DistributionSpec shift(double delta) const;

  // Inverse-CDF draw addressed by (seed, stream, pos); deterministic.
  double sample(uint64_t seed, uint64_t stream, uint64_t pos) const;

  // Parameters in the constructor's terms (offset excluded for the
  // truncated normal, whose shift is reported separately).
  double rate() const { return rate_; }
  double shift_amount() const { return shift_; }
  double mean() const { return mean_; }
  double sigma() const { return sigma_; }

  bool operator==(const DistributionSpec& o) const = default;

 private:
  DistributionSpec() = default;

  enum class Kind { kExp, kUniform, kTruncNorm };

  Kind kind_ = Kind::kUniform;
  double lo_ = 0.0;
  double hi_ = 1.0;
  double rate_ = 0.0;   // exponential
  double shift_ = 0.0;  // exponential / truncated normal translation
  double mean_ = 0.0;   // truncated normal (pre-truncation)
  double sigma_ = 0.0;
  double tn_alpha_ = 0.0;  // (0 - mean) / sigma
  double tn_mass_ = 1.0;   // 1 - Phi(alpha)

  void require_in_support(double z, const char* what) const;
};

// Grid diagnostics used by validation and tests.

// Largest monotonicity violation of the hazard rate over a grid of
// `points` interior quantiles (positive value = violation).
double mhr_violation(const DistributionSpec& d, int points = 1000);
// Largest violation of monotonicity of the virtual cost over a grid.
double virtual_cost_violation(const DistributionSpec& d, int points = 1000);
// Largest gap |F(z) - (1 - exp(-int_0^z hr))| over a grid of `points`
// check locations, integrating the hazard rate with at least `panels`
// Simpson panels in total.
double hazard_identity_gap(const DistributionSpec& d, int points = 64,
                           int panels = 10000);

}  // namespace broker

#endif  // BROKER_DISTRIBUTION_HPP_
