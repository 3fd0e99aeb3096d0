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

#ifndef DA_RNG_H_
#define DA_RNG_H_

#include <cstdint>
#include <random>

namespace da {

// Seeded pseudo-random source shared by every mechanism.
//
// Only the raw 64-bit engine output is taken from the standard library (its
// sequence is fixed by the standard); every distribution is implemented here
// so that a seed reproduces bit-identical releases across toolchains.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t NextU64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double Uniform();
  // Uniform in (0, 1].
  double UniformPositive() { return 1.0 - Uniform(); }
  // Uniform integer in [0, n). n must be positive.
  uint64_t UniformInt(uint64_t n);
  unsigned __int128 UniformInt128(unsigned __int128 n);

  bool Bernoulli(double p) { return Uniform() < p; }
  // Laplace(0, scale) as the difference of two exponentials.
  double Laplace(double scale);
  // Standard normal (Box-Muller, one variate per call).
  double Gaussian();

 private:
  std::mt19937_64 engine_;
};

// Seed of repetition `rep` of an experiment seeded with `seed`.
inline uint64_t DeriveSeed(uint64_t seed, uint64_t rep) { return seed + rep; }

}  // namespace da

#endif  // DA_RNG_H_
