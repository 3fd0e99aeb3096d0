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

#include <algorithm>
#include <cmath>
#include <vector>

#include "da/accounting.h"
#include "da/anonymity.h"
#include "da/histogram.h"
#include "da/mechanisms.h"
#include "da/metrics.h"
#include "da/rng.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace da {
namespace {

using ::da::testing::Cat;
using ::da::testing::MakeHistogram;
using ::da::testing::MakeSchema;
using ::da::testing::OneGroupSchema;
using ::testing::DoubleNear;
using ::testing::ElementsAre;

ReleaseFn ExactHalfCs(int64_t k, double epsilon) {
  return [=](const Histogram& h, Rng& rng) {
    return DpCellSuppressionRelease(h, k, epsilon, rng,
                                    CellSuppressionVariant::kPerCellNoise,
                                    SuppressedValue::kExactHalf);
  };
}

ReleaseFn DpSwap(double epsilon) {
  return [=](const Histogram& h, Rng& rng) -> absl::StatusOr<RealHistogram> {
    absl::StatusOr<Histogram> out = DpSwapping(h, epsilon, rng);
    if (!out.ok()) return out.status();
    return ToReal(*out);
  };
}

Histogram RandomHistogram(std::shared_ptr<const Schema> schema, int64_t lo,
                          int64_t hi, Rng& rng) {
  std::vector<int64_t> counts(schema->universe_size());
  for (int64_t& c : counts) {
    c = lo + static_cast<int64_t>(rng.UniformInt(hi - lo + 1));
  }
  return MakeHistogram(std::move(schema), std::move(counts));
}

TEST(SuppressionProbabilityTest, Values) {
  EXPECT_DOUBLE_EQ(SuppressionProbability(6, 6, 1), 0.5);
  EXPECT_NEAR(SuppressionProbability(2, 6, 1), 1 - 0.5 * std::exp(-2), 1e-15);
  EXPECT_NEAR(SuppressionProbability(10, 6, 1), 0.5 * std::exp(-2), 1e-15);
}

TEST(AnalyticBiasCsTest, ValuesAndCauchySchwarz) {
  auto schema = OneGroupSchema(3);
  const BiasVector bias =
      *AnalyticBiasCs(MakeHistogram(schema, {2, 6, 10}), 6, 1);
  EXPECT_NEAR(bias.per_cell[0], 0.9323323583816936, 1e-12);
  EXPECT_EQ(bias.per_cell[1], -1.5);  // p(k) = 1/2
  EXPECT_NEAR(bias.per_cell[2], -3.5 * std::exp(-2), 1e-12);
  EXPECT_EQ(bias.mode, BiasMode::kAnalytic);

  auto wide = OneGroupSchema(8);
  Rng rng(1);
  for (int trial = 0; trial < 500; ++trial) {
    const Histogram h = RandomHistogram(wide, 0, 20, rng);
    const int64_t k = 1 + static_cast<int64_t>(rng.UniformInt(10));
    const double eps = 0.1 + 4 * rng.Uniform();
    const BiasVector b = *AnalyticBiasCs(h, k, eps);
    double gap = 0, p = 0;
    for (size_t i = 0; i < h.size(); ++i) {
      gap += std::pow(k / 2.0 - h[i], 2);
      p += std::pow(SuppressionProbability(h[i], k, eps), 2);
    }
    EXPECT_LE(b.l1, std::sqrt(gap) * std::sqrt(p) + 1e-12);
  }
}

TEST(AnalyticBiasSwapTest, HandExampleAndGroupSums) {
  auto schema = OneGroupSchema(3);
  const Histogram h = MakeHistogram(schema, {2, 4, 6});
  const GroupIndex groups(*schema);
  const BiasVector bias = *AnalyticBiasSwap(h, groups, 0);
  EXPECT_THAT(bias.per_cell,
              ElementsAre(DoubleNear(2, 1e-12), DoubleNear(0, 1e-12),
                          DoubleNear(-2, 1e-12)));
  EXPECT_NEAR(bias.l1, 4, 1e-12);
  EXPECT_NEAR(*SwapMadL1(h, groups, 0), 4, 1e-12);

  auto grouped = MakeSchema({Cat("Q", 4, true), Cat("N", 3)});
  const GroupIndex g(*grouped);
  Rng rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const Histogram x = RandomHistogram(grouped, 0, 30, rng);
    const double eps = 3 * rng.Uniform();
    const BiasVector b = *AnalyticBiasSwap(x, g, eps);
    for (size_t group = 0; group < g.num_groups(); ++group) {
      double sum = 0;
      for (uint64_t cell : g.group(group)) sum += b.per_cell[cell];
      EXPECT_NEAR(sum, 0, 1e-9);
    }
    const FairnessReport fairness = *FairnessOf(b);
    EXPECT_LE(fairness.alpha, AlphaBoundSwap(x, 4, eps) + 1e-9);
  }
  // Equal counts inside each group give zero bias.
  const BiasVector flat =
      *AnalyticBiasSwap(MakeHistogram(grouped, std::vector<int64_t>(12, 5)),
                        g, 1);
  EXPECT_EQ(flat.l1, 0);
}

TEST(AnalyticBiasSwapTest, StructuralMismatch) {
  auto a = OneGroupSchema(3);
  auto b = OneGroupSchema(4);
  const GroupIndex wrong(*b);
  EXPECT_TRUE(absl::IsInvalidArgument(
      AnalyticBiasSwap(MakeHistogram(a, {1, 2, 3}), wrong, 1).status()));
}

TEST(AnalyticBiasKanonFlagTest, Values) {
  EXPECT_EQ(AnalyticBiasKanonFlag(5, 6, 0.5), 0);
  EXPECT_DOUBLE_EQ(AnalyticBiasKanonFlag(1, 1, 0.5), 0.5);
  EXPECT_DOUBLE_EQ(AnalyticBiasKanonFlag(2, 1, 0.5), 0.25);
}

TEST(AnalyticBiasKanonFlagTest, MatchesSubsamplingFrequency) {
  auto schema = MakeSchema({Cat("Q", 1, true)});
  const Dataset cell = HistogramToDataset(MakeHistogram(schema, {2}));
  const int n = 100000;
  int merged = 0;
  for (int seed = 0; seed < n; ++seed) {
    Rng rng(static_cast<uint64_t>(seed));
    // A cell with k = 1 is merged when no record survives.
    merged += Subsample(cell, 0.5, rng).num_rows() <= 0;
  }
  const double p = AnalyticBiasKanonFlag(2, 1, 0.5);
  EXPECT_NEAR(merged / static_cast<double>(n), p,
              3 * std::sqrt(p * (1 - p) / n));
}

TEST(AlphaBoundTest, Values) {
  auto schema = OneGroupSchema(3);
  const Histogram h = MakeHistogram(schema, {2, 6, 10});
  const double p2 = 1 - 0.5 * std::exp(-2), p10 = 0.5 * std::exp(-2);
  // max(|3 - 2|, |3 - 10|) = 7.
  EXPECT_NEAR(AlphaBoundCs(h, 6, 1), 8 * p2 + 7 * (p2 - p10), 1e-12);
  EXPECT_NEAR(AlphaBoundSwap(MakeHistogram(schema, {0, 4, 10}), 9, 1),
              180 / (std::exp(1) + 8), 1e-12);
  EXPECT_NEAR(AlphaBoundSwap(MakeHistogram(schema, {0, 4, 10}), 9, 1), 16.794,
              1e-3);
  EXPECT_NEAR(AlphaBoundLaplace(h, 1), 4 * std::exp(-1), 1e-12);
  EXPECT_NEAR(AlphaBoundLaplace(h, 1), 1.4715, 1e-4);
  EXPECT_LT(AlphaBoundLaplace(h, 2), AlphaBoundLaplace(h, 1));
  const Histogram flat = MakeHistogram(schema, {4, 4, 4});
  EXPECT_EQ(AlphaBoundCs(flat, 6, 1), 0);
  EXPECT_EQ(AlphaBoundSwap(flat, 9, 1), 0);
  EXPECT_EQ(AlphaBoundLaplace(flat, 1), 0);
}

TEST(AlphaBoundTest, CsBoundCoversEmpiricalAlpha) {
  auto schema = OneGroupSchema(4);
  Rng rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const Histogram h = RandomHistogram(schema, 0, 12, rng);
    const int64_t k = 2 + static_cast<int64_t>(rng.UniformInt(8));
    const double eps = 0.25 + 2 * rng.Uniform();
    EmpiricalOptions options;
    options.reps = 100000;
    options.seed = static_cast<uint64_t>(trial);
    const BiasVector b = *EmpiricalBias(ExactHalfCs(k, eps), h, options);
    const double se =
        *std::max_element(b.standard_error.begin(), b.standard_error.end());
    EXPECT_LE(FairnessOf(b)->alpha, AlphaBoundCs(h, k, eps) + 6 * se);
  }
}

TEST(DominanceTest, Examples) {
  auto schema = OneGroupSchema(3);
  const Histogram h = MakeHistogram(schema, {2, 6, 10});
  for (double eps : {0.1, 1.0, 5.0}) {
    for (uint64_t n_q : {1, 3, 9}) {
      const DominanceReport report = FairnessDominanceCheck(h, 6, n_q, eps);
      EXPECT_TRUE(report.precondition_met);
      EXPECT_TRUE(report.holds) << eps << " " << n_q;
    }
  }
  const DominanceReport unmet =
      FairnessDominanceCheck(MakeHistogram(schema, {1, 6, 10}), 6, 9, 1);
  EXPECT_FALSE(unmet.precondition_met);
  EXPECT_FALSE(unmet.ToJson().contains("holds"));
}

TEST(FairnessOfTest, AlphaIsRange) {
  const FairnessReport r = *FairnessOf(BiasVector::Analytic({-2, 0, 2}));
  EXPECT_EQ(r.alpha, 4);
  EXPECT_EQ(r.argmax_cell, 2u);
  EXPECT_EQ(r.argmin_cell, 0u);
  EXPECT_EQ(FairnessOf(BiasVector::Analytic({0, 0}))->alpha, 0);
  EXPECT_EQ(FairnessOf(BiasVector::Analytic({1.5, 3.5, 2.5}))->alpha,
            FairnessOf(BiasVector::Analytic({0, 2, 1}))->alpha);
  EXPECT_FALSE(FairnessOf(BiasVector::Analytic({})).ok());
}

TEST(EmpiricalTest, IdentityAndLaplace) {
  auto schema = OneGroupSchema(3);
  const Histogram h = MakeHistogram(schema, {2, 6, 10});
  EmpiricalOptions options;
  options.reps = 50;
  const EmpiricalStudy id = *RunEmpirical(
      [](const Histogram& x, Rng&) -> absl::StatusOr<RealHistogram> {
        return ToReal(x);
      },
      h, options);
  EXPECT_EQ(id.bias.l1, 0);
  EXPECT_EQ(id.mean_l1_error, 0);

  options.reps = 100000;
  const BiasVector lap = *EmpiricalBias(
      [](const Histogram& x, Rng& rng) { return LaplaceMechanism(x, 1, rng); },
      h, options);
  for (size_t i = 0; i < 3; ++i) {
    EXPECT_LE(std::abs(lap.per_cell[i]), 3 * lap.standard_error[i]);
  }
  EXPECT_EQ(lap.mode, BiasMode::kEmpirical);
  EXPECT_EQ(lap.reps, 100000);
}

TEST(EmpiricalTest, MatchesAnalyticCsAndSwap) {
  auto schema = OneGroupSchema(3);
  const Histogram h = MakeHistogram(schema, {2, 6, 10});
  EmpiricalOptions options;
  options.reps = 100000;
  const BiasVector cs = *EmpiricalBias(ExactHalfCs(6, 1), h, options);
  const BiasVector cs_exact = *AnalyticBiasCs(h, 6, 1);
  for (size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(cs.per_cell[i], cs_exact.per_cell[i],
                3 * std::max(cs.standard_error[i], 1e-12));
  }

  auto grouped = MakeSchema({Cat("Q", 3, true), Cat("N", 2)});
  const Histogram x = MakeHistogram(grouped, {1, 7, 3, 0, 9, 4});
  const BiasVector swap = *EmpiricalBias(DpSwap(1), x, options);
  const BiasVector swap_exact = *AnalyticBiasSwap(x, GroupIndex(*grouped), 1);
  for (size_t i = 0; i < x.size(); ++i) {
    EXPECT_NEAR(swap.per_cell[i], swap_exact.per_cell[i],
                3 * swap.standard_error[i]);
  }
}

TEST(EmpiricalTest, FloorHalfGapIsBounded) {
  // The released floor(k/2) differs from k/2 by 1/2 per suppressed cell.
  auto schema = OneGroupSchema(3);
  const Histogram h = MakeHistogram(schema, {1, 5, 9});
  EmpiricalOptions options;
  options.reps = 20000;
  const BiasVector exact = *EmpiricalBias(ExactHalfCs(5, 1), h, options);
  const BiasVector floor = *EmpiricalBias(
      [](const Histogram& x, Rng& rng) {
        return DpCellSuppressionRelease(x, 5, 1, rng,
                                        CellSuppressionVariant::kPerCellNoise,
                                        SuppressedValue::kFloorHalf);
      },
      h, options);
  for (size_t i = 0; i < 3; ++i) {
    const double gap = exact.per_cell[i] - floor.per_cell[i];
    EXPECT_GE(gap, -1e-12);
    EXPECT_LE(gap, 0.5 * SuppressionProbability(h[i], 5, 1) + 0.02);
  }
}

TEST(EmpiricalTest, DeterministicUnderSeed) {
  auto schema = OneGroupSchema(3);
  const Histogram h = MakeHistogram(schema, {2, 6, 10});
  EmpiricalOptions options;
  options.reps = 1000;
  options.project_nonnegative = true;
  auto lap = [](const Histogram& x, Rng& rng) {
    return LaplaceMechanism(x, 0.5, rng);
  };
  const EmpiricalStudy a = *RunEmpirical(lap, h, options);
  const EmpiricalStudy b = *RunEmpirical(lap, h, options);
  EXPECT_EQ(a.bias.per_cell, b.bias.per_cell);
  EXPECT_EQ(a.mean_l1_error, b.mean_l1_error);
  options.reps = 0;
  EXPECT_FALSE(RunEmpirical(lap, h, options).ok());
}

}  // namespace
}  // namespace da
