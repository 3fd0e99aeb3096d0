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

#ifndef DA_METRICS_H_
#define DA_METRICS_H_

#include <cstdint>
#include <functional>
#include <vector>

#include "absl/status/statusor.h"
#include "da/histogram.h"
#include "da/rng.h"
#include "json.hpp"

namespace da {

enum class BiasMode {
  kEmpirical,
  kAnalytic,
};

// Expected release minus true count, per cell.
struct BiasVector {
  std::vector<double> per_cell;
  double l1 = 0;  // sum of |per_cell|
  BiasMode mode = BiasMode::kAnalytic;
  // Empirical mode only.
  std::vector<double> standard_error;
  int64_t reps = 0;
  uint64_t seed = 0;

  static BiasVector Analytic(std::vector<double> per_cell);
  nlohmann::json ToJson() const;
};

struct FairnessReport {
  double alpha = 0;  // max(per_cell) - min(per_cell)
  size_t argmax_cell = 0;
  size_t argmin_cell = 0;

  nlohmann::json ToJson() const;
};

absl::StatusOr<FairnessReport> FairnessOf(const BiasVector& bias);

// One randomized release of a histogram.
using ReleaseFn =
    std::function<absl::StatusOr<RealHistogram>(const Histogram&, Rng&)>;

struct EmpiricalOptions {
  int64_t reps = 200;
  uint64_t seed = 1;
  // Round to the nearest non-negative integer before measuring.
  bool project_nonnegative = false;
};

struct EmpiricalStudy {
  BiasVector bias;
  // Per-repetition ||M(x) - x||_1, averaged.
  double mean_l1_error = 0;
  double l1_error_se = 0;
};

// Repetition r draws from Rng(DeriveSeed(seed, r)); the result does not
// depend on the thread count.
absl::StatusOr<EmpiricalStudy> RunEmpirical(const ReleaseFn& release,
                                            const Histogram& histogram,
                                            const EmpiricalOptions& options);

absl::StatusOr<BiasVector> EmpiricalBias(const ReleaseFn& release,
                                         const Histogram& histogram,
                                         const EmpiricalOptions& options);

// Pr[x + Lap(2 / epsilon) < k].
double SuppressionProbability(int64_t x, int64_t k, double epsilon);

absl::StatusOr<BiasVector> AnalyticBiasCs(const Histogram& histogram,
                                          int64_t k, double epsilon);

absl::StatusOr<BiasVector> AnalyticBiasSwap(const Histogram& histogram,
                                            const GroupIndex& groups,
                                            double epsilon);

// n_Q / (e^eps + n_Q - 1) * sum over cells of the MAD of the cell's group.
absl::StatusOr<double> SwapMadL1(const Histogram& histogram,
                                 const GroupIndex& groups, double epsilon);

// Pr[Binomial(x, beta) <= k - 1] for x >= k, else 0.
double AnalyticBiasKanonFlag(int64_t x, int64_t k, double beta);

double AlphaBoundCs(const Histogram& histogram, int64_t k, double epsilon);
double AlphaBoundSwap(const Histogram& histogram, uint64_t n_q,
                      double epsilon);
double AlphaBoundLaplace(const Histogram& histogram, double epsilon);

struct DominanceReport {
  bool precondition_met = false;  // 2 <= min count <= k
  bool holds = false;             // meaningful only when precondition_met
  double alpha_laplace = 0;
  double alpha_cs = 0;
  double alpha_swap = 0;

  nlohmann::json ToJson() const;
};

DominanceReport FairnessDominanceCheck(const Histogram& histogram, int64_t k,
                                       uint64_t n_q, double epsilon);

}  // namespace da

#endif  // DA_METRICS_H_
