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

#include "broker/distribution.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "broker/numeric.hpp"
#include "broker/rng.hpp"

namespace broker {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTailQuantile = 1.0 - 1e-9;

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::kExponential:
      return "exponential";
    case Family::kUniform:
      return "uniform";
    case Family::kShiftedExponential:
      return "shifted-exponential";
    case Family::kTruncatedNormal:
      return "truncated-normal";
  }
  return "unknown";
}

DistributionSpec DistributionSpec::exponential(double rate) {
  return shifted_exponential(rate, 0.0);
}

DistributionSpec DistributionSpec::shifted_exponential(double rate,
                                                       double shift) {
  if (!(rate > 0.0)) {
    throw std::invalid_argument("exponential: rate must be positive");
  }
  if (!(shift >= 0.0)) {
    throw std::invalid_argument("exponential: shift must be nonnegative");
  }
  DistributionSpec d;
  d.kind_ = Kind::kExp;
  d.rate_ = rate;
  d.shift_ = shift;
  d.lo_ = shift;
  d.hi_ = kInf;
  return d;
}

DistributionSpec DistributionSpec::uniform(double lo, double hi) {
  if (!(lo < hi)) {
    throw std::invalid_argument("uniform: requires lo < hi");
  }
  DistributionSpec d;
  d.kind_ = Kind::kUniform;
  d.lo_ = lo;
  d.hi_ = hi;
  return d;
}

DistributionSpec DistributionSpec::truncated_normal(double mean,
                                                    double sigma) {
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("truncated-normal: sigma must be positive");
  }
  DistributionSpec d;
  d.kind_ = Kind::kTruncNorm;
  d.mean_ = mean;
  d.sigma_ = sigma;
  d.shift_ = 0.0;
  d.lo_ = 0.0;
  d.hi_ = kInf;
  d.tn_alpha_ = -mean / sigma;
  d.tn_mass_ = 1.0 - num::normal_cdf(d.tn_alpha_);
  if (!(d.tn_mass_ > 1e-12)) {
    throw std::invalid_argument(
        "truncated-normal: almost no mass above zero; increase mean or sigma");
  }
  // Monotone hazard rate and monotone virtual cost, checked on a grid.
  if (mhr_violation(d) > 1e-9 || virtual_cost_violation(d) > 1e-9) {
    throw std::invalid_argument(
        "truncated-normal: hazard-rate monotonicity check failed");
  }
  return d;
}

Family DistributionSpec::family() const {
  switch (kind_) {
    case Kind::kExp:
      return shift_ > 0.0 ? Family::kShiftedExponential : Family::kExponential;
    case Kind::kUniform:
      return Family::kUniform;
    case Kind::kTruncNorm:
      return Family::kTruncatedNormal;
  }
  return Family::kUniform;
}

double DistributionSpec::upper_for_numerics() const {
  return std::isfinite(hi_) ? hi_ : quantile(kTailQuantile);
}

double DistributionSpec::pdf(double z) const {
  if (z < lo_ || z > hi_) return 0.0;
  switch (kind_) {
    case Kind::kExp:
      return rate_ * std::exp(-rate_ * (z - shift_));
    case Kind::kUniform:
      return 1.0 / (hi_ - lo_);
    case Kind::kTruncNorm: {
      const double t = (z - shift_ - mean_) / sigma_;
      return num::normal_pdf(t) / (sigma_ * tn_mass_);
    }
  }
  return 0.0;
}

double DistributionSpec::cdf(double z) const {
  if (z <= lo_) return 0.0;
  if (z >= hi_) return 1.0;
  switch (kind_) {
    case Kind::kExp:
      return -std::expm1(-rate_ * (z - shift_));
    case Kind::kUniform:
      return (z - lo_) / (hi_ - lo_);
    case Kind::kTruncNorm: {
      const double t = (z - shift_ - mean_) / sigma_;
      // 1 - F = (1 - Phi(t)) / mass keeps the upper tail accurate.
      const double upper = (1.0 - num::normal_cdf(t)) / tn_mass_;
      return std::clamp(1.0 - upper, 0.0, 1.0);
    }
  }
  return 0.0;
}

double DistributionSpec::quantile(double q) const {
  if (!(q >= 0.0) || q > 1.0) {
    throw std::domain_error("quantile: q outside [0, 1]");
  }
  if (q == 0.0) return lo_;
  switch (kind_) {
    case Kind::kExp:
      return shift_ - std::log1p(-q) / rate_;
    case Kind::kUniform:
      return lo_ + q * (hi_ - lo_);
    case Kind::kTruncNorm: {
      const double p = (1.0 - tn_mass_) + q * tn_mass_;
      return shift_ + mean_ + sigma_ * num::inverse_normal_cdf(p);
    }
  }
  return lo_;
}

void DistributionSpec::require_in_support(double z, const char* what) const {
  if (z < lo_ || z > hi_) {
    throw std::domain_error(std::string(what) + ": argument outside support");
  }
}

double DistributionSpec::hazard_rate(double z) const {
  require_in_support(z, "hazard_rate");
  switch (kind_) {
    case Kind::kExp:
      return rate_;
    case Kind::kUniform:
      if (z >= hi_) return kInf;
      return 1.0 / (hi_ - z);
    case Kind::kTruncNorm: {
      const double t = (z - shift_ - mean_) / sigma_;
      const double tail = 1.0 - num::normal_cdf(t);
      if (tail <= 0.0) return kInf;
      return num::normal_pdf(t) / (sigma_ * tail);
    }
  }
  return kInf;
}

double DistributionSpec::virtual_value(double v) const {
  require_in_support(v, "virtual_value");
  switch (kind_) {
    case Kind::kExp:
      return v - 1.0 / rate_;
    case Kind::kUniform:
      return 2.0 * v - hi_;
    case Kind::kTruncNorm: {
      const double t = (v - shift_ - mean_) / sigma_;
      const double tail = 1.0 - num::normal_cdf(t);
      return v - sigma_ * tail / num::normal_pdf(t);
    }
  }
  return v;
}

double DistributionSpec::virtual_cost(double c) const {
  require_in_support(c, "virtual_cost");
  switch (kind_) {
    case Kind::kExp:
      return c + std::expm1(rate_ * (c - shift_)) / rate_;
    case Kind::kUniform:
      return 2.0 * c - lo_;
    case Kind::kTruncNorm: {
      const double t = (c - shift_ - mean_) / sigma_;
      const double below = num::normal_cdf(t) - (1.0 - tn_mass_);
      return c + sigma_ * std::max(below, 0.0) / num::normal_pdf(t);
    }
  }
  return c;
}

double DistributionSpec::inverse_virtual_value(double r) const {
  switch (kind_) {
    case Kind::kExp:
      return std::max(lo_, r + 1.0 / rate_);
    case Kind::kUniform:
      return std::clamp(0.5 * (r + hi_), lo_, hi_);
    case Kind::kTruncNorm: {
      if (virtual_value(lo_) >= r) return lo_;
      double hi = upper_for_numerics();
      // The virtual value is unbounded above; widen until it brackets r.
      for (int i = 0; i < 64 && virtual_value(hi) < r; ++i) {
        hi = lo_ + 2.0 * (hi - lo_) + 1.0;
      }
      return num::bisect_nondecreasing(
          [&](double v) { return virtual_value(v) - r; }, lo_, hi);
    }
  }
  return lo_;
}

DistributionSpec DistributionSpec::shift(double delta) const {
  if (!(delta >= 0.0)) {
    throw std::domain_error("shift: delta must be nonnegative");
  }
  DistributionSpec d = *this;
  switch (kind_) {
    case Kind::kExp:
      d.shift_ += delta;
      d.lo_ += delta;
      return d;
    case Kind::kUniform:
      d.lo_ += delta;
      d.hi_ += delta;
      return d;
    case Kind::kTruncNorm:
      d.shift_ += delta;
      d.lo_ += delta;
      return d;
  }
  return d;
}

double DistributionSpec::sample(uint64_t seed, uint64_t stream,
                                uint64_t pos) const {
  return quantile(rng::uniform01(seed, stream, pos));
}

double mhr_violation(const DistributionSpec& d, int points) {
  double worst = 0.0;
  double prev = -kInf;
  for (int i = 0; i < points; ++i) {
    const double q = (i + 0.5) / points;
    const double hr = d.hazard_rate(d.quantile(q));
    if (i > 0) worst = std::max(worst, prev - hr);
    prev = hr;
  }
  return worst;
}

double virtual_cost_violation(const DistributionSpec& d, int points) {
  double worst = 0.0;
  double prev = -kInf;
  for (int i = 0; i < points; ++i) {
    const double q = (i + 0.5) / points;
    const double theta = d.virtual_cost(d.quantile(q));
    if (i > 0) worst = std::max(worst, prev - theta);
    prev = theta;
  }
  return worst;
}

double hazard_identity_gap(const DistributionSpec& d, int points, int panels) {
  // Checkpoints at quantiles up to 0.99; the hazard rate of a bounded
  // support blows up at the top end, and the identity is checked where the
  // quadrature stays well conditioned.
  const double lo = d.support().lo;
  int per_segment = (panels + points - 1) / points;
  per_segment += per_segment % 2;  // Simpson needs an even count
  double acc = 0.0;                // integral of hr from lo to the checkpoint
  double prev_z = lo;
  double worst = 0.0;
  for (int i = 1; i <= points; ++i) {
    const double q = 0.99 * i / points;
    const double z = d.quantile(q);
    const double h = (z - prev_z) / per_segment;
    double simpson = d.hazard_rate(prev_z) + d.hazard_rate(z);
    for (int j = 1; j < per_segment; ++j) {
      simpson += (j % 2 == 1 ? 4.0 : 2.0) * d.hazard_rate(prev_z + j * h);
    }
    acc += simpson * h / 3.0;
    prev_z = z;
    const double implied = 1.0 - std::exp(-acc);
    worst = std::max(worst, std::abs(d.cdf(z) - implied));
  }
  return worst;
}

}  // namespace broker
