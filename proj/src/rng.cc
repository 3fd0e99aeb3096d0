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

#include "da/rng.h"

#include <cmath>
#include <numbers>

namespace da {

double Rng::Uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

uint64_t Rng::UniformInt(uint64_t n) {
  // Rejection on the top of the range keeps the draw exactly uniform.
  const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

unsigned __int128 Rng::UniformInt128(unsigned __int128 n) {
  if ((n >> 64) == 0) return UniformInt(static_cast<uint64_t>(n));
  const unsigned __int128 max = ~static_cast<unsigned __int128>(0);
  const unsigned __int128 limit = max - max % n;
  unsigned __int128 x;
  do {
    x = (static_cast<unsigned __int128>(engine_()) << 64) | engine_();
  } while (x >= limit);
  return x % n;
}

double Rng::Laplace(double scale) {
  const double a = std::log(UniformPositive());
  const double b = std::log(UniformPositive());
  return scale * (b - a);
}

double Rng::Gaussian() {
  const double u = UniformPositive();
  const double v = Uniform();
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

}  // namespace da
