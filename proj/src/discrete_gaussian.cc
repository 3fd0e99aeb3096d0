// Copyright 2026 The DA Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "da/discrete_gaussian.h"

#include <cmath>
#include <numeric>

#include "absl/status/status.h"

namespace da {
namespace {

using u128 = unsigned __int128;

// Bernoulli(num / den), num <= den.
bool BernoulliRational(u128 num, u128 den, Rng& rng) {
  return rng.UniformInt128(den) < num;
}

// gamma = num/den in [0, 1].
bool BernoulliExpMinusUnit(u128 num, u128 den, Rng& rng) {
  u128 k = 1;
  // Stop at the first failure of Bernoulli(gamma / k); the index parity
  // decides the outcome.
  while (BernoulliRational(num, den * k, rng)) ++k;
  return k % 2 == 1;
}

uint64_t ISqrt(uint64_t x) {
  uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(x)));
  while (r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

}  // namespace

Rational Rational::Approximate(double value, uint64_t max_den) {
  // Continued-fraction convergents of `value`.
  uint64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double x = value;
  for (int iter = 0; iter < 64; ++iter) {
    const double a_real = std::floor(x);
    if (a_real > 1e18) break;
    const uint64_t a = static_cast<uint64_t>(a_real);
    const uint64_t q2 = a * q1 + q0;
    if (q2 > max_den) break;
    const uint64_t p2 = a * p1 + p0;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const double frac = x - a_real;
    if (frac < 1e-15 * std::max(1.0, x)) break;
    x = 1.0 / frac;
  }
  if (q1 == 0) return {static_cast<uint64_t>(std::llround(value)), 1};
  const uint64_t g = std::gcd(p1, q1);
  return {p1 / g, q1 / g};
}

bool BernoulliExpMinus(u128 num, u128 den, Rng& rng) {
  // exp(-gamma) = exp(-1)^floor(gamma) * exp(-frac(gamma)).
  u128 whole = num / den;
  while (whole-- > 0) {
    if (!BernoulliExpMinusUnit(1, 1, rng)) return false;
  }
  return BernoulliExpMinusUnit(num % den, den, rng);
}

int64_t SampleDiscreteLaplace(uint64_t s, uint64_t t, Rng& rng) {
  while (true) {
    const uint64_t u = rng.UniformInt(t);
    if (!BernoulliExpMinus(u, t, rng)) continue;
    uint64_t v = 0;
    while (BernoulliExpMinus(1, 1, rng)) ++v;
    const uint64_t x = u + t * v;
    const int64_t y = static_cast<int64_t>(x / s);
    const bool negative = rng.UniformInt(2) == 1;
    if (negative && y == 0) continue;
    return negative ? -y : y;
  }
}

absl::StatusOr<DiscreteGaussianSampler> DiscreteGaussianSampler::Create(
    Rational sigma_squared) {
  if (sigma_squared.num == 0 || sigma_squared.den == 0) {
    return absl::InvalidArgumentError("sigma^2 must be positive");
  }
  const uint64_t g = std::gcd(sigma_squared.num, sigma_squared.den);
  sigma_squared = {sigma_squared.num / g, sigma_squared.den / g};
  if (sigma_squared.den > kMaxDenominator ||
      sigma_squared.num / sigma_squared.den >= kMaxSigmaSquared) {
    return absl::InvalidArgumentError("sigma^2 is outside the supported range");
  }
  // floor(sqrt(p/q)) == floor(sqrt(floor(p/q))).
  const uint64_t t = ISqrt(sigma_squared.num / sigma_squared.den) + 1;
  return DiscreteGaussianSampler(sigma_squared, t);
}

absl::StatusOr<DiscreteGaussianSampler> DiscreteGaussianSampler::Create(
    double sigma_squared) {
  if (!(sigma_squared > 0) || !std::isfinite(sigma_squared)) {
    return absl::InvalidArgumentError("sigma^2 must be positive and finite");
  }
  if (sigma_squared >= static_cast<double>(kMaxSigmaSquared)) {
    return absl::InvalidArgumentError("sigma^2 is outside the supported range");
  }
  Rational r = Rational::Approximate(sigma_squared, kMaxDenominator);
  if (r.num == 0) {
    return absl::InvalidArgumentError("sigma^2 is too small to represent");
  }
  return Create(r);
}

int64_t DiscreteGaussianSampler::Sample(Rng& rng) const {
  const u128 p = sigma_squared_.num;
  const u128 q = sigma_squared_.den;
  const u128 t = t_;
  // Accept Y ~ DLap(t) with probability exp(-(|Y| - sigma^2/t)^2 / (2 sigma^2))
  //   = exp(-(|Y| t q - p)^2 / (2 p q t^2)).
  const u128 den = 2 * p * q * t * t;
  while (true) {
    const int64_t y = SampleDiscreteLaplace(1, t_, rng);
    const u128 abs_y = static_cast<u128>(y < 0 ? -y : y);
    // |Y| beyond 2^32 has negligible probability for supported sigma and
    // would overflow the exponent.
    if (abs_y > (u128{1} << 32)) continue;
    const u128 a = abs_y * t * q;
    const u128 diff = a > p ? a - p : p - a;
    if (BernoulliExpMinus(diff * diff, den, rng)) return y;
  }
}

}  // namespace da
