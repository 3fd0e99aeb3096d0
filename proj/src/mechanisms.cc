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

#include "da/mechanisms.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <utility>

#include "absl/strings/str_cat.h"
#include "da/discrete_gaussian.h"
#include "da/status_macros.h"

namespace da {

absl::Status ValidateEpsilon(double epsilon) {
  if (!(epsilon > 0) || std::isnan(epsilon)) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be positive, got ", epsilon));
  }
  return absl::OkStatus();
}

absl::Status MechanismConfig::Validate() const {
  DA_RETURN_IF_ERROR(ValidateEpsilon(epsilon));
  if (k < 1) {
    return absl::InvalidArgumentError(absl::StrCat("k must be >= 1, got ", k));
  }
  if (!(swap_fraction >= 0 && swap_fraction <= 1)) {
    return absl::InvalidArgumentError("swap_fraction must lie in [0, 1]");
  }
  if (beta_override.has_value() &&
      !(*beta_override > 0 && *beta_override < 1)) {
    return absl::InvalidArgumentError("beta must lie in (0, 1)");
  }
  return absl::OkStatus();
}

absl::StatusOr<RealHistogram> LaplaceMechanism(const Histogram& histogram,
                                               double epsilon, Rng& rng) {
  DA_RETURN_IF_ERROR(ValidateEpsilon(epsilon));
  const double scale = 2.0 / epsilon;
  RealHistogram release = ToReal(histogram);
  for (double& v : release.values) v += rng.Laplace(scale);
  return release;
}

namespace {

absl::StatusOr<DiscreteGaussianSampler> MakeDiscreteGaussianSampler(
    double epsilon) {
  // sigma^2 = 4/eps^2 from a rational eps, exact for eps = a/b with small b.
  const Rational eps = Rational::Approximate(epsilon, uint64_t{1} << 16);
  if (eps.num > 0 && eps.num <= (uint64_t{1} << 20)) {
    absl::StatusOr<DiscreteGaussianSampler> sampler =
        DiscreteGaussianSampler::Create(
            Rational{4 * eps.den * eps.den, eps.num * eps.num});
    if (sampler.ok()) return sampler;
  }
  // At sigma^2 = 2^-20 the sampler returns 0 except with probability
  // 2 exp(-2^19).
  return DiscreteGaussianSampler::Create(
      std::max(4.0 / (epsilon * epsilon), 0x1.0p-20));
}

}  // namespace

absl::StatusOr<RealHistogram> DiscreteGaussianMechanism(
    const Histogram& histogram, double epsilon, Rng& rng) {
  DA_RETURN_IF_ERROR(ValidateEpsilon(epsilon));
  DA_ASSIGN_OR_RETURN(DiscreteGaussianSampler sampler,
                      MakeDiscreteGaussianSampler(epsilon));
  RealHistogram release = ToReal(histogram);
  for (double& v : release.values) {
    v += static_cast<double>(sampler.Sample(rng));
  }
  return release;
}

Histogram CellSuppression(const Histogram& histogram, int64_t k) {
  Histogram out = histogram;
  const int64_t half = k / 2;
  for (size_t i = 0; i < histogram.size(); ++i) {
    if (histogram[i] < k) out.Add(i, half - histogram[i]);
  }
  return out;
}

absl::StatusOr<SuppressionDecision> DecideDpCellSuppression(
    const Histogram& histogram, int64_t k, double epsilon, Rng& rng,
    CellSuppressionVariant variant, SuppressedValue value) {
  DA_RETURN_IF_ERROR(ValidateEpsilon(epsilon));
  if (k < 1) return absl::InvalidArgumentError("k must be >= 1");
  const double scale = 2.0 / epsilon;
  SuppressionDecision decision;
  decision.suppressed.resize(histogram.size());
  double threshold = static_cast<double>(k);
  if (variant == CellSuppressionVariant::kNoisyThreshold) {
    threshold += rng.Laplace(scale);
    for (size_t i = 0; i < histogram.size(); ++i) {
      decision.suppressed[i] = static_cast<double>(histogram[i]) < threshold;
    }
  } else {
    for (size_t i = 0; i < histogram.size(); ++i) {
      decision.suppressed[i] =
          static_cast<double>(histogram[i]) + rng.Laplace(scale) < threshold;
    }
  }
  decision.suppressed_value = value == SuppressedValue::kFloorHalf
                                  ? std::floor(threshold / 2)
                                  : threshold / 2;
  return decision;
}

absl::StatusOr<RealHistogram> DpCellSuppressionRelease(
    const Histogram& histogram, int64_t k, double epsilon, Rng& rng,
    CellSuppressionVariant variant, SuppressedValue value) {
  DA_ASSIGN_OR_RETURN(
      SuppressionDecision decision,
      DecideDpCellSuppression(histogram, k, epsilon, rng, variant, value));
  RealHistogram release = ToReal(histogram);
  for (size_t i = 0; i < release.values.size(); ++i) {
    if (decision.suppressed[i]) release.values[i] = decision.suppressed_value;
  }
  return release;
}

absl::StatusOr<Histogram> DpCellSuppression(const Histogram& histogram,
                                            int64_t k, double epsilon,
                                            Rng& rng,
                                            CellSuppressionVariant variant) {
  DA_ASSIGN_OR_RETURN(SuppressionDecision decision,
                      DecideDpCellSuppression(histogram, k, epsilon, rng,
                                              variant,
                                              SuppressedValue::kFloorHalf));
  // A suppressed cell always has a count below the threshold, so the noisy
  // threshold variant never writes a negative value here.
  const int64_t value =
      static_cast<int64_t>(std::max(0.0, decision.suppressed_value));
  Histogram out = histogram;
  for (size_t i = 0; i < histogram.size(); ++i) {
    if (decision.suppressed[i]) out.Add(i, value - histogram[i]);
  }
  return out;
}

namespace {

// Unswapped rows bucketed by their cell, for nearest-record queries.
class SwapCandidates {
 public:
  explicit SwapCandidates(const Dataset& dataset)
      : schema_(dataset.schema()) {
    const size_t m = dataset.num_rows();
    row_cell_.resize(m);
    position_.resize(m);
    for (size_t r = 0; r < m; ++r) {
      const uint64_t cell = schema_.CellIndex(dataset.row(r));
      row_cell_[r] = cell;
      auto [it, inserted] = bucket_of_cell_.try_emplace(cell, buckets_.size());
      if (inserted) {
        buckets_.emplace_back();
        bucket_cells_.push_back(schema_.CellValues(cell));
      }
      buckets_[it->second].insert(r);
      position_[r] = unswapped_.size();
      unswapped_.push_back(r);
    }
    ranges_.resize(schema_.num_attributes(), 0);
    for (size_t a = 0; a < schema_.num_attributes(); ++a) {
      const Attribute& attribute = schema_.attribute(a);
      if (attribute.kind == AttributeKind::kNumeric) {
        ranges_[a] = schema_.NumericValue(a, attribute.domain.size() - 1) -
                     schema_.NumericValue(a, 0);
      }
    }
  }

  size_t RandomUnswapped(Rng& rng) const {
    return unswapped_[rng.UniformInt(unswapped_.size())];
  }

  // Nearest unswapped row other than `row`; ties go to the lowest index.
  std::optional<size_t> Nearest(size_t row) const {
    const std::vector<ValueIndex>& from =
        bucket_cells_[bucket_of_cell_.at(row_cell_[row])];
    double best_distance = std::numeric_limits<double>::infinity();
    std::optional<size_t> best;
    for (size_t b = 0; b < buckets_.size(); ++b) {
      const std::set<size_t>& bucket = buckets_[b];
      auto it = bucket.begin();
      if (it != bucket.end() && *it == row) ++it;
      if (it == bucket.end()) continue;
      const double distance = Distance(from, bucket_cells_[b]);
      if (distance < best_distance ||
          (distance == best_distance && *it < *best)) {
        best_distance = distance;
        best = *it;
      }
    }
    return best;
  }

  void MarkSwapped(size_t row) {
    buckets_[bucket_of_cell_.at(row_cell_[row])].erase(row);
    const size_t pos = position_[row];
    const size_t last = unswapped_.back();
    unswapped_[pos] = last;
    position_[last] = pos;
    unswapped_.pop_back();
  }

 private:
  double Distance(const std::vector<ValueIndex>& a,
                  const std::vector<ValueIndex>& b) const {
    double distance = 0;
    for (size_t i = 0; i < a.size(); ++i) {
      if (a[i] == b[i]) continue;
      if (schema_.attribute(i).kind == AttributeKind::kNumeric) {
        if (ranges_[i] > 0) {
          distance += std::abs(schema_.NumericValue(i, a[i]) -
                               schema_.NumericValue(i, b[i])) /
                      ranges_[i];
        }
      } else {
        distance += 1;
      }
    }
    return distance;
  }

  const Schema& schema_;
  std::vector<uint64_t> row_cell_;
  std::map<uint64_t, size_t> bucket_of_cell_;
  std::vector<std::set<size_t>> buckets_;
  std::vector<std::vector<ValueIndex>> bucket_cells_;
  std::vector<double> ranges_;
  std::vector<size_t> unswapped_;
  std::vector<size_t> position_;
};

}  // namespace

absl::StatusOr<Dataset> Swapping(const Dataset& dataset, double swap_fraction,
                                 Rng& rng) {
  if (!(swap_fraction >= 0 && swap_fraction <= 1)) {
    return absl::InvalidArgumentError("swap_fraction must lie in [0, 1]");
  }
  const std::vector<size_t>& qi = dataset.schema().quasi_identifiers();
  if (qi.empty()) {
    return absl::FailedPreconditionError(
        "swapping needs at least one quasi-identifier");
  }
  const size_t m = dataset.num_rows();
  if (swap_fraction < 1 && m < 2) {
    return absl::InvalidArgumentError("swapping needs at least two records");
  }
  const auto swaps = static_cast<size_t>(
      std::floor((1.0 - swap_fraction) * static_cast<double>(m) / 2.0));
  Dataset out = dataset;
  SwapCandidates candidates(dataset);
  for (size_t s = 0; s < swaps; ++s) {
    const size_t i = candidates.RandomUnswapped(rng);
    const std::optional<size_t> j = candidates.Nearest(i);
    if (!j.has_value()) break;
    std::span<ValueIndex> a = out.mutable_row(i);
    std::span<ValueIndex> b = out.mutable_row(*j);
    for (size_t attribute : qi) std::swap(a[attribute], b[attribute]);
    candidates.MarkSwapped(i);
    candidates.MarkSwapped(*j);
  }
  return out;
}

double SwapRetentionProbability(double epsilon, uint64_t qi_universe_size) {
  // exp(eps) / (exp(eps) + n_Q - 1), written to stay finite for large eps.
  return 1.0 / (1.0 + static_cast<double>(qi_universe_size - 1) *
                          std::exp(-epsilon));
}

absl::StatusOr<Histogram> DpSwapping(const Histogram& histogram,
                                     double epsilon, Rng& rng) {
  DA_RETURN_IF_ERROR(ValidateEpsilon(epsilon));
  const Schema& schema = histogram.schema();
  const uint64_t n_q = schema.qi_universe_size();
  if (n_q < 2) return histogram;
  const double retain = SwapRetentionProbability(epsilon, n_q);
  Histogram out(histogram.schema_ptr());
  for (size_t cell = 0; cell < histogram.size(); ++cell) {
    const uint64_t qi = schema.QiIndex(cell);
    for (int64_t c = 0; c < histogram[cell]; ++c) {
      if (rng.Bernoulli(retain)) {
        out.Add(cell, 1);
        continue;
      }
      // Uniform over X_Q minus the current tuple, by rejection.
      uint64_t target;
      do {
        target = rng.UniformInt(n_q);
      } while (target == qi);
      out.Add(schema.WithQiIndex(cell, target), 1);
    }
  }
  return out;
}

Histogram NonnegProject(const RealHistogram& release) {
  Histogram out(release.schema);
  for (size_t i = 0; i < release.values.size(); ++i) {
    const double v = std::max(0.0, release.values[i]);
    out.Add(i, static_cast<int64_t>(std::floor(v + 0.5)));
  }
  return out;
}

}  // namespace da
