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

#ifndef DA_MECHANISMS_H_
#define DA_MECHANISMS_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "da/dataset.h"
#include "da/histogram.h"
#include "da/rng.h"

namespace da {

enum class CellSuppressionVariant {
  // One Laplace(2/eps) draw per cell compared against the fixed threshold k.
  kPerCellNoise,
  // One shared noisy threshold k + Laplace(2/eps) for every cell.
  kNoisyThreshold,
};

// Value written into suppressed cells.
enum class SuppressedValue {
  kFloorHalf,  // floor(k / 2), keeps the release integral
  kExactHalf,  // k / 2
};

struct MechanismConfig {
  double epsilon = 1.0;
  int64_t k = 6;
  // Fraction of records left unswapped by traditional swapping.
  double swap_fraction = 1.0;
  CellSuppressionVariant cs_variant = CellSuppressionVariant::kPerCellNoise;
  std::optional<double> beta_override;

  absl::Status Validate() const;
};

absl::Status ValidateEpsilon(double epsilon);

// x + Lap(2/eps) per cell. (eps, 0)-DP under change-one-record adjacency.
absl::StatusOr<RealHistogram> LaplaceMechanism(const Histogram& histogram,
                                               double epsilon, Rng& rng);

// x + N_Z(0, 4/eps^2) per cell, sampled exactly. Integer valued.
absl::StatusOr<RealHistogram> DiscreteGaussianMechanism(
    const Histogram& histogram, double epsilon, Rng& rng);

// Traditional suppression: cells below k are replaced by floor(k/2).
Histogram CellSuppression(const Histogram& histogram, int64_t k);

// Which cells DP cell suppression hides, and the value they get.
struct SuppressionDecision {
  std::vector<bool> suppressed;
  double suppressed_value = 0;
};

absl::StatusOr<SuppressionDecision> DecideDpCellSuppression(
    const Histogram& histogram, int64_t k, double epsilon, Rng& rng,
    CellSuppressionVariant variant, SuppressedValue value);

// Releases x_i when the (noisy) comparison clears the threshold, otherwise
// floor(k/2) (floor(k~/2) for the noisy-threshold variant).
absl::StatusOr<Histogram> DpCellSuppression(
    const Histogram& histogram, int64_t k, double epsilon, Rng& rng,
    CellSuppressionVariant variant = CellSuppressionVariant::kPerCellNoise);

// Same mechanism with a choice of the suppressed value; kExactHalf gives the
// real-valued k/2 release that the closed-form bias describes.
absl::StatusOr<RealHistogram> DpCellSuppressionRelease(
    const Histogram& histogram, int64_t k, double epsilon, Rng& rng,
    CellSuppressionVariant variant, SuppressedValue value);

// Traditional record swapping. Performs floor((1 - swap_fraction) * m / 2)
// swaps; each picks a random unswapped record, finds the nearest other
// unswapped record under d_swap (discrete metric on categorical attributes,
// |a - b| / range on numeric ones; ties to the lowest row index) and
// exchanges their quasi-identifier values.
absl::StatusOr<Dataset> Swapping(const Dataset& dataset, double swap_fraction,
                                 Rng& rng);

// Retention probability exp(eps) / (exp(eps) + n_Q - 1) of DP swapping.
double SwapRetentionProbability(double epsilon, uint64_t qi_universe_size);

// DP swapping: every record keeps its QI tuple with the retention
// probability, otherwise takes a uniformly random different QI tuple. Non-QI
// values never change, so mass moves only inside the groups I_i.
absl::StatusOr<Histogram> DpSwapping(const Histogram& histogram,
                                     double epsilon, Rng& rng);

// Clamp at zero, then round half up.
Histogram NonnegProject(const RealHistogram& release);

}  // namespace da

#endif  // DA_MECHANISMS_H_
