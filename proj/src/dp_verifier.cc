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

#include "da/dp_verifier.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "da/mechanisms.h"
#include "da/parallel.h"
#include "da/status_macros.h"

namespace da {
namespace {

// Ties within this relative margin are not counted as violations.
constexpr double kRatioSlack = 1e-9;

Outcome CountsOf(const Histogram& histogram) {
  return Outcome(histogram.counts().begin(), histogram.counts().end());
}

class IdentityMechanism : public DiscreteMechanism {
 public:
  std::string name() const override { return "identity"; }
  absl::StatusOr<OutcomeDistribution> Distribution(
      const Histogram& histogram) const override {
    return OutcomeDistribution{{CountsOf(histogram), 1.0}};
  }
  absl::StatusOr<Outcome> Sample(const Histogram& histogram,
                                 Rng&) const override {
    return CountsOf(histogram);
  }
};

class ConstantMechanism : public DiscreteMechanism {
 public:
  std::string name() const override { return "constant"; }
  absl::StatusOr<OutcomeDistribution> Distribution(
      const Histogram& histogram) const override {
    return OutcomeDistribution{{Outcome(histogram.size(), 0), 1.0}};
  }
  absl::StatusOr<Outcome> Sample(const Histogram& histogram,
                                 Rng&) const override {
    return Outcome(histogram.size(), 0);
  }
};

class CellSuppressionMechanism : public DiscreteMechanism {
 public:
  CellSuppressionMechanism(int64_t k, double epsilon, bool flag)
      : k_(k), epsilon_(epsilon), flag_(flag) {}

  std::string name() const override {
    return flag_ ? "dp_cell_suppression" : "dp_cell_suppression_unflagged";
  }

  absl::StatusOr<OutcomeDistribution> Distribution(
      const Histogram& histogram) const override {
    DA_RETURN_IF_ERROR(ValidateEpsilon(epsilon_));
    const double scale = 2.0 / epsilon_;
    OutcomeDistribution law{{Outcome{}, 1.0}};
    for (size_t i = 0; i < histogram.size(); ++i) {
      // Pr[x + Lap(scale) < k].
      const double gap = static_cast<double>(k_ - histogram[i]);
      const double p = gap > 0 ? 1 - 0.5 * std::exp(-gap / scale)
                               : 0.5 * std::exp(gap / scale);
      OutcomeDistribution next;
      for (const auto& [prefix, mass] : law) {
        Outcome kept = prefix;
        kept.push_back(histogram[i]);
        next[std::move(kept)] += mass * (1 - p);
        Outcome suppressed = prefix;
        suppressed.push_back(SuppressedSymbol());
        next[std::move(suppressed)] += mass * p;
      }
      law = std::move(next);
    }
    return law;
  }

  absl::StatusOr<Outcome> Sample(const Histogram& histogram,
                                 Rng& rng) const override {
    DA_ASSIGN_OR_RETURN(
        SuppressionDecision decision,
        DecideDpCellSuppression(histogram, k_, epsilon_, rng,
                                CellSuppressionVariant::kPerCellNoise,
                                SuppressedValue::kFloorHalf));
    Outcome out = CountsOf(histogram);
    for (size_t i = 0; i < out.size(); ++i) {
      if (decision.suppressed[i]) out[i] = SuppressedSymbol();
    }
    return out;
  }

 private:
  int64_t SuppressedSymbol() const { return flag_ ? kSuppressed : k_ / 2; }

  int64_t k_;
  double epsilon_;
  bool flag_;
};

class SwappingMechanism : public DiscreteMechanism {
 public:
  explicit SwappingMechanism(double epsilon) : epsilon_(epsilon) {}

  std::string name() const override { return "dp_swapping"; }

  absl::StatusOr<OutcomeDistribution> Distribution(
      const Histogram& histogram) const override {
    DA_RETURN_IF_ERROR(ValidateEpsilon(epsilon_));
    const Schema& schema = histogram.schema();
    const uint64_t n_q = schema.qi_universe_size();
    if (n_q < 2) return OutcomeDistribution{{CountsOf(histogram), 1.0}};
    const double retain = SwapRetentionProbability(epsilon_, n_q);
    const double move = (1 - retain) / static_cast<double>(n_q - 1);
    // Records move independently; convolve one record at a time.
    OutcomeDistribution law{{Outcome(histogram.size(), 0), 1.0}};
    for (size_t cell = 0; cell < histogram.size(); ++cell) {
      const uint64_t qi = schema.QiIndex(cell);
      for (int64_t c = 0; c < histogram[cell]; ++c) {
        OutcomeDistribution next;
        for (const auto& [counts, mass] : law) {
          for (uint64_t target = 0; target < n_q; ++target) {
            Outcome moved = counts;
            ++moved[schema.WithQiIndex(cell, target)];
            next[std::move(moved)] += mass * (target == qi ? retain : move);
          }
        }
        law = std::move(next);
      }
    }
    return law;
  }

  absl::StatusOr<Outcome> Sample(const Histogram& histogram,
                                 Rng& rng) const override {
    DA_ASSIGN_OR_RETURN(Histogram out, DpSwapping(histogram, epsilon_, rng));
    return CountsOf(out);
  }

 private:
  double epsilon_;
};

class ContinuousLaplace : public DiscreteMechanism {
 public:
  std::string name() const override { return "laplace"; }
  bool continuous_output() const override { return true; }

  absl::StatusOr<OutcomeDistribution> Distribution(
      const Histogram&) const override {
    return absl::UnimplementedError("Laplace output is continuous");
  }
  absl::StatusOr<Outcome> Sample(const Histogram&, Rng&) const override {
    return absl::UnimplementedError("Laplace output is continuous");
  }
};

// All histograms over the schema's cells with counts in [0, max_count],
// indexed in base max_count + 1 with the first cell most significant.
struct Grid {
  std::vector<Histogram> inputs;
  std::vector<std::vector<size_t>> neighbors;
};

absl::StatusOr<Grid> BuildGrid(std::shared_ptr<const Schema> schema,
                               int64_t max_count) {
  const uint64_t n = schema->universe_size();
  if (max_count < 1) {
    return absl::InvalidArgumentError("max_count must be >= 1");
  }
  const uint64_t base = static_cast<uint64_t>(max_count) + 1;
  uint64_t total = 1;
  for (uint64_t i = 0; i < n; ++i) {
    total *= base;
    if (total > 4096) {
      return absl::InvalidArgumentError(absl::StrCat(
          "brute-force grid too large: universe ", n, ", max count ",
          max_count));
    }
  }
  Grid grid;
  for (uint64_t index = 0; index < total; ++index) {
    std::vector<int64_t> counts(n);
    uint64_t rest = index;
    for (uint64_t i = n; i-- > 0;) {
      counts[i] = static_cast<int64_t>(rest % base);
      rest /= base;
    }
    DA_ASSIGN_OR_RETURN(Histogram h, Histogram::FromCounts(schema, counts));
    grid.inputs.push_back(std::move(h));
  }
  auto index_of = [base](const Histogram& h) {
    uint64_t index = 0;
    for (int64_t c : h.counts()) index = index * base + c;
    return static_cast<size_t>(index);
  };
  grid.neighbors.resize(total);
  for (size_t i = 0; i < total; ++i) {
    ForEachAdjacentHistogram(grid.inputs[i], [&](const Histogram& h) {
      if (h.Bound() <= max_count) grid.neighbors[i].push_back(index_of(h));
    });
  }
  return grid;
}

absl::StatusOr<std::vector<OutcomeDistribution>> ExactLaws(
    const DiscreteMechanism& mechanism, const Grid& grid) {
  std::vector<OutcomeDistribution> laws;
  laws.reserve(grid.inputs.size());
  for (const Histogram& h : grid.inputs) {
    DA_ASSIGN_OR_RETURN(OutcomeDistribution law, mechanism.Distribution(h));
    laws.push_back(std::move(law));
  }
  return laws;
}

double MassAt(const OutcomeDistribution& law, const Outcome& outcome) {
  const auto it = law.find(outcome);
  return it == law.end() ? 0.0 : it->second;
}

// Pr_p[S^c] where S^c is decided by the pair of laws (p_ref, q_ref).
double ViolationMass(const OutcomeDistribution& p,
                     const OutcomeDistribution& p_ref,
                     const OutcomeDistribution& q_ref, double epsilon) {
  const double factor = std::exp(epsilon) * (1 + kRatioSlack);
  double mass = 0;
  for (const auto& [outcome, weight] : p) {
    if (MassAt(p_ref, outcome) > factor * MassAt(q_ref, outcome)) {
      mass += weight;
    }
  }
  return mass;
}

absl::Status CheckDiscrete(const DiscreteMechanism& mechanism,
                           double epsilon) {
  if (mechanism.continuous_output()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "mechanism '", mechanism.name(),
        "' has continuous output; the brute-force verifier covers discrete "
        "outputs only"));
  }
  return ValidateEpsilon(epsilon);
}

}  // namespace

std::unique_ptr<DiscreteMechanism> MakeIdentityMechanism() {
  return std::make_unique<IdentityMechanism>();
}
std::unique_ptr<DiscreteMechanism> MakeConstantMechanism() {
  return std::make_unique<ConstantMechanism>();
}
std::unique_ptr<DiscreteMechanism> MakeDpCellSuppressionMechanism(
    int64_t k, double epsilon, bool flag_suppressed) {
  return std::make_unique<CellSuppressionMechanism>(k, epsilon,
                                                    flag_suppressed);
}
std::unique_ptr<DiscreteMechanism> MakeDpSwappingMechanism(double epsilon) {
  return std::make_unique<SwappingMechanism>(epsilon);
}
std::unique_ptr<DiscreteMechanism> MakeLaplaceMechanism() {
  return std::make_unique<ContinuousLaplace>();
}

absl::StatusOr<VerifierResult> VerifyDpBruteForce(
    const DiscreteMechanism& mechanism, std::shared_ptr<const Schema> schema,
    double epsilon, const VerifierOptions& options) {
  DA_RETURN_IF_ERROR(CheckDiscrete(mechanism, epsilon));
  DA_ASSIGN_OR_RETURN(Grid grid, BuildGrid(schema, options.max_count));
  const size_t total = grid.inputs.size();

  std::vector<OutcomeDistribution> exact;
  bool have_exact = false;
  if (auto laws = ExactLaws(mechanism, grid); laws.ok()) {
    exact = *std::move(laws);
    have_exact = true;
  } else if (options.mode == VerifierMode::kExact ||
             !absl::IsUnimplemented(laws.status())) {
    return laws.status();
  }

  // Law used for probabilities; differs from `exact` in sampled mode.
  std::vector<OutcomeDistribution> measured;
  if (options.mode == VerifierMode::kExact) {
    measured = exact;
  } else {
    if (options.samples < 1) {
      return absl::InvalidArgumentError("samples must be >= 1");
    }
    measured.resize(total);
    std::vector<absl::Status> errors(total);
    const double weight = 1.0 / static_cast<double>(options.samples);
    ParallelFor(total, [&](size_t i) {
      Rng rng(DeriveSeed(options.seed, i));
      for (int64_t s = 0; s < options.samples; ++s) {
        absl::StatusOr<Outcome> outcome = mechanism.Sample(grid.inputs[i], rng);
        if (!outcome.ok()) {
          errors[i] = outcome.status();
          return;
        }
        measured[i][*std::move(outcome)] += weight;
      }
    });
    for (const absl::Status& status : errors) DA_RETURN_IF_ERROR(status);
  }
  const std::vector<OutcomeDistribution>& reference =
      have_exact ? exact : measured;

  VerifierResult result;
  result.delta_hat = -1;
  for (size_t i = 0; i < total; ++i) {
    for (size_t j : grid.neighbors[i]) {
      ++result.pairs;
      const double mass =
          ViolationMass(measured[i], reference[i], reference[j], epsilon);
      if (mass > result.delta_hat) {
        result.delta_hat = mass;
        result.worst_input = CountsOf(grid.inputs[i]);
        result.worst_neighbor = CountsOf(grid.inputs[j]);
      }
    }
  }
  if (result.pairs == 0) {
    return absl::InvalidArgumentError("grid has no adjacent pairs");
  }
  if (options.mode == VerifierMode::kSampled) {
    const double n = static_cast<double>(options.samples);
    const double p = result.delta_hat;
    result.standard_error = std::max(std::sqrt(p * (1 - p) / n), 1 / n);
  }
  return result;
}

absl::StatusOr<double> HockeyStickDelta(const DiscreteMechanism& mechanism,
                                        std::shared_ptr<const Schema> schema,
                                        double epsilon, int64_t max_count) {
  DA_RETURN_IF_ERROR(CheckDiscrete(mechanism, epsilon));
  DA_ASSIGN_OR_RETURN(Grid grid, BuildGrid(schema, max_count));
  DA_ASSIGN_OR_RETURN(std::vector<OutcomeDistribution> laws,
                      ExactLaws(mechanism, grid));
  const double factor = std::exp(epsilon);
  double worst = 0;
  for (size_t i = 0; i < laws.size(); ++i) {
    for (size_t j : grid.neighbors[i]) {
      double gap = 0;
      for (const auto& [outcome, mass] : laws[i]) {
        gap += std::max(0.0, mass - factor * MassAt(laws[j], outcome));
      }
      worst = std::max(worst, gap);
    }
  }
  return worst;
}

}  // namespace da
