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

#ifndef DA_DISCRETE_GAUSSIAN_H_
#define DA_DISCRETE_GAUSSIAN_H_

#include <cstdint>

#include "absl/status/statusor.h"
#include "da/rng.h"

namespace da {

// Non-negative rational number with 64-bit parts.
struct Rational {
  uint64_t num = 0;
  uint64_t den = 1;

  double ToDouble() const { return static_cast<double>(num) / den; }
  // Closest fraction to `value` with denominator at most `max_den`.
  static Rational Approximate(double value, uint64_t max_den);
};

// Exact Bernoulli(exp(-num/den)) using only integer randomness.
bool BernoulliExpMinus(unsigned __int128 num, unsigned __int128 den, Rng& rng);

// Exact discrete Laplace on the integers with scale t/s:
// Pr[Y = y] proportional to exp(-|y| s / t).
int64_t SampleDiscreteLaplace(uint64_t s, uint64_t t, Rng& rng);

// Exact sampler for N_Z(0, sigma^2): Pr[Y = y] proportional to
// exp(-y^2 / (2 sigma^2)) over the integers, by rejection from a discrete
// Laplace. sigma^2 is held as a rational so no floating-point Gaussian is
// ever rounded.
class DiscreteGaussianSampler {
 public:
  static constexpr uint64_t kMaxDenominator = uint64_t{1} << 20;
  static constexpr uint64_t kMaxSigmaSquared = uint64_t{1} << 20;

  static absl::StatusOr<DiscreteGaussianSampler> Create(Rational sigma_squared);
  // sigma^2 is first approximated by a fraction with denominator at most
  // kMaxDenominator (exact for dyadic values such as 4/eps^2 at eps = 2^j).
  static absl::StatusOr<DiscreteGaussianSampler> Create(double sigma_squared);

  int64_t Sample(Rng& rng) const;

  Rational sigma_squared() const { return sigma_squared_; }

 private:
  DiscreteGaussianSampler(Rational sigma_squared, uint64_t t)
      : sigma_squared_(sigma_squared), t_(t) {}

  Rational sigma_squared_;
  uint64_t t_;  // floor(sigma) + 1
};

}  // namespace da

#endif  // DA_DISCRETE_GAUSSIAN_H_
