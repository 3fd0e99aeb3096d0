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

#include <cmath>
#include <vector>

#include "da/accounting.h"
#include "gtest/gtest.h"

namespace da {
namespace {

// Independent oracle: direct pmf summation with exact binomial coefficients
// built by Pascal's rule.
double PascalCdf(int trials, int successes, double p) {
  std::vector<double> row = {1.0};
  for (int n = 1; n <= trials; ++n) {
    std::vector<double> next(n + 1, 1.0);
    for (int j = 1; j < n; ++j) next[j] = row[j - 1] + row[j];
    row = std::move(next);
  }
  double cdf = 0;
  for (int j = 0; j <= successes && j <= trials; ++j) {
    cdf += row[j] * std::pow(p, j) * std::pow(1 - p, trials - j);
  }
  return cdf;
}

TEST(BinomialCdfTest, MatchesPmfSummation) {
  for (int trials : {1, 2, 7, 30, 60}) {
    for (double p : {0.05, 0.3, 0.5, 0.63, 0.95}) {
      for (int s = 0; s <= trials; s += 1 + trials / 7) {
        EXPECT_NEAR(BinomialCdf(trials, s, p), PascalCdf(trials, s, p), 1e-12)
            << trials << " " << s << " " << p;
      }
    }
  }
  EXPECT_EQ(BinomialCdf(10, -1, 0.5), 0);
  EXPECT_EQ(BinomialCdf(10, 10, 0.5), 1);
  EXPECT_EQ(BinomialCdf(10, 3, 1.0), 0);
  // Large trial counts stay finite and inside [0, 1].
  const double tail = BinomialCdf(1000, 400, 0.5);
  EXPECT_GT(tail, 0);
  EXPECT_LT(tail, 1e-9);
}

TEST(DeltaCellSuppressionTest, ClosedForm) {
  EXPECT_NEAR(*DeltaCellSuppression(1, 10, 6), 0.995421090278, 1e-12);
  EXPECT_NEAR(*DeltaCellSuppression(0.5, 10, 6), 0.966166179191, 1e-12);
  // Approaches 3/4 as eps (B - k) -> 0.
  EXPECT_NEAR(*DeltaCellSuppression(1e-9, 10, 9), 0.75, 1e-8);
  EXPECT_TRUE(absl::IsInvalidArgument(DeltaCellSuppression(1, 6, 6).status()));
  EXPECT_TRUE(absl::IsInvalidArgument(DeltaCellSuppression(1, 10, 0).status()));
  EXPECT_FALSE(DeltaCellSuppression(0, 10, 6).ok());
}

TEST(DeltaSwappingTest, FrozenValues) {
  EXPECT_NEAR(*DeltaSwapping(0.5, 9), 0.867908375769, 1e-11);
  EXPECT_NEAR(*DeltaSwapping(1, 9), 0.874335245934, 1e-11);
  EXPECT_NEAR(*DeltaSwapping(2, 9), 0.899595447161, 1e-11);
  EXPECT_NEAR(*DeltaSwapping(4, 9), 0.969836558939, 1e-11);
  EXPECT_NEAR(*DeltaSwapping(50, 9), 1.0, 1e-12);
  EXPECT_TRUE(absl::IsInvalidArgument(DeltaSwapping(1, 1).status()));
}

TEST(DeltaKAnonymityTest, FrozenValues) {
  auto beta = [](double eps) { return 1 - std::exp(-eps); };
  EXPECT_NEAR(*DeltaKAnonymity(0.5, beta(0.5), 200), 0.878661737326, 1e-10);
  EXPECT_NEAR(*DeltaKAnonymity(1, beta(1), 200), 0.906099605284, 1e-10);
  EXPECT_NEAR(*DeltaKAnonymity(2, beta(2), 200), 0.981684361111, 1e-10);
  EXPECT_NEAR(*DeltaKAnonymity(4, beta(4), 200), 0.999664537372, 1e-10);
  // Single-record bound: only w = 1 with nu = 0.
  const double b = 0.4;
  EXPECT_NEAR(*DeltaKAnonymity(1, b, 1), 1 - (1 - b) * (1 - b), 1e-15);
  EXPECT_TRUE(DeltaKAnonymity(1, 1.0, 10).ok());
  EXPECT_FALSE(DeltaKAnonymity(1, 0.0, 10).ok());
  EXPECT_FALSE(DeltaKAnonymity(1, 1.5, 10).ok());
  EXPECT_FALSE(DeltaKAnonymity(1, 0.5, 0).ok());
}

TEST(GaussianDpTest, Conversion) {
  EXPECT_NEAR(*GaussianDpParameters(2, 1), 2, 1e-15);
  EXPECT_NEAR(*GaussianDpParameters(1, std::exp(-0.5)), 1.5, 1e-12);
  double last = 0;
  for (double delta : {1.0, 0.1, 1e-3, 1e-6, 1e-12}) {
    const double eps = *GaussianDpParameters(1, delta);
    EXPECT_GT(eps, last);
    last = eps;
  }
  EXPECT_FALSE(GaussianDpParameters(1, 0).ok());
  EXPECT_FALSE(GaussianDpParameters(1, 1.5).ok());
}

TEST(MonotonicityTest, DeltasGrowWithEpsilon) {
  const std::vector<double> grid = {0.1, 0.25, 0.5, 1, 2, 4, 8};
  for (size_t i = 1; i < grid.size(); ++i) {
    EXPECT_GE(*DeltaCellSuppression(grid[i], 20, 6),
              *DeltaCellSuppression(grid[i - 1], 20, 6));
    EXPECT_GE(*DeltaSwapping(grid[i], 9), *DeltaSwapping(grid[i - 1], 9));
    // Small eps plateaus near 1 - e^-2, equal up to rounding.
    EXPECT_GE(*DeltaKAnonymity(grid[i], 1 - std::exp(-grid[i]), 100) + 1e-12,
              *DeltaKAnonymity(grid[i - 1], 1 - std::exp(-grid[i - 1]), 100));
  }
  // Larger B only adds candidate w, so delta cannot shrink.
  for (int64_t bound : {1, 5, 20, 100}) {
    EXPECT_LE(*DeltaKAnonymity(1, 0.5, bound),
              *DeltaKAnonymity(1, 0.5, bound + 1));
  }
}

TEST(MonotonicityTest, ParameterDirections) {
  for (double eps : {0.1, 0.5, 1.0, 2.0, 4.0}) {
    for (int64_t bound = 3; bound < 30; ++bound) {
      // Saturates at 1 in double precision for large eps * B.
      EXPECT_GE(*DeltaCellSuppression(eps, bound + 1, 2),
                *DeltaCellSuppression(eps, bound, 2));
    }
    for (int64_t k = 1; k < 19; ++k) {
      EXPECT_LE(*DeltaCellSuppression(eps, 20, k + 1),
                *DeltaCellSuppression(eps, 20, k));
    }
    for (uint64_t n_q = 2; n_q < 40; ++n_q) {
      EXPECT_GE(*DeltaSwapping(eps, n_q + 1), *DeltaSwapping(eps, n_q));
    }
  }
}

TEST(MonotonicityTest, StrictWhereRepresentable) {
  EXPECT_GT(*DeltaCellSuppression(0.1, 11, 2), *DeltaCellSuppression(0.1, 10, 2));
  EXPECT_LT(*DeltaCellSuppression(0.1, 10, 3), *DeltaCellSuppression(0.1, 10, 2));
  EXPECT_GT(*DeltaSwapping(1, 10), *DeltaSwapping(1, 9));
}

TEST(ReportTest, JsonShape) {
  const DeltaReport swap = *SwappingReport(1, 9);
  const nlohmann::json json = swap.ToJson();
  EXPECT_EQ(json["mechanism"], "dp_swapping");
  EXPECT_EQ(json["parameters"]["n_Q"], 9);
  EXPECT_NEAR(json["delta"].get<double>(), 0.874335245934, 1e-11);
  EXPECT_EQ(LaplaceReport(1).delta, 0);
  const DeltaReport kanon = *KAnonymityReport(1, 0.5, 200, 6);
  EXPECT_EQ(kanon.parameters.at("k"), 6);
  EXPECT_EQ(DeltaReportsToJson({swap, kanon}).size(), 2u);
  EXPECT_FALSE(CellSuppressionReport(1, 5, 6).ok());
}

}  // namespace
}  // namespace da
