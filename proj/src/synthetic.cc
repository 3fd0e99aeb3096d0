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

#include "da/synthetic.h"

#include <array>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "da/rng.h"

namespace da {
namespace {

// IPUMS RACE codes 1..9 with shares resembling a New England state.
constexpr std::array<double, 9> kRaceWeights = {
    0.780, 0.070, 0.003, 0.030, 0.002, 0.040, 0.040, 0.030, 0.005};
constexpr std::array<double, 9> kRaceEffect = {0.3,  -0.6, -0.7, 0.5, 0.6,
                                               0.2,  -0.8, -0.3, -0.4};
constexpr int kMinAge = 18;
constexpr int kAgeSpan = 75;  // ages 18..92

size_t Categorical(std::span<const double> weights, Rng& rng) {
  double u = rng.Uniform();
  for (size_t i = 0; i + 1 < weights.size(); ++i) {
    if (u < weights[i]) return i;
    u -= weights[i];
  }
  return weights.size() - 1;
}

double AgeEffect(int age) {
  // Few incomes above the cutoff before 30 or after 75.
  if (age < 30) return -2.5;
  if (age < 45) return 0.4;
  if (age < 62) return 0.7;
  if (age < 75) return -0.3;
  return -1.2;
}

}  // namespace

void WriteSyntheticCsv(const SyntheticOptions& options, std::ostream& out) {
  Rng rng(options.seed);
  out << "RACE,SEX,OWNERSHP,AGE,INCTOT\n";
  for (size_t r = 0; r < options.rows; ++r) {
    const size_t race = Categorical(kRaceWeights, rng);
    const bool male = rng.Bernoulli(0.5);
    const bool owner = rng.Bernoulli(0.65);
    const int age = kMinAge + static_cast<int>(rng.UniformInt(kAgeSpan + 1));
    const double logit = -0.8 + kRaceEffect[race] + (male ? 0.7 : 0.0) +
                         (owner ? 0.9 : 0.0) + AgeEffect(age);
    const bool high = rng.Bernoulli(1 / (1 + std::exp(-logit)));
    const uint64_t income =
        high ? 50001 + rng.UniformInt(150000) : rng.UniformInt(50001);
    out << race + 1 << ',' << (male ? 1 : 2) << ',' << (owner ? 1 : 2) << ','
        << age << ',' << income << '\n';
  }
}

std::shared_ptr<const Schema> AcsLikeSchema() {
  auto labels = [](int from, int to) {
    std::vector<std::string> out;
    for (int v = from; v <= to; ++v) out.push_back(std::to_string(v));
    return out;
  };
  std::vector<Attribute> attributes = {
      {"RACE", labels(1, 9), true, AttributeKind::kCategorical},
      {"SEX", labels(1, 2), false, AttributeKind::kCategorical},
      {"OWNERSHP", labels(1, 2), false, AttributeKind::kCategorical},
      {"AGE", labels(0, 4), false, AttributeKind::kNumeric},
      {"INCTOT", labels(0, 1), false, AttributeKind::kCategorical},
  };
  static const std::shared_ptr<const Schema> schema =
      std::make_shared<const Schema>(*Schema::Create(std::move(attributes)));
  return schema;
}

absl::StatusOr<Dataset> GenerateSynthetic(const SyntheticOptions& options) {
  std::stringstream csv;
  WriteSyntheticCsv(options, csv);
  const Binning binning = Binning::AcsDefault();
  return ParseCsv(csv, AcsLikeSchema(), &binning);
}

}  // namespace da
