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

#include "da/metrics.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "da/accounting.h"
#include "da/mechanisms.h"
#include "da/parallel.h"
#include "da/status_macros.h"

namespace da {
namespace {

double SumAbs(const std::vector<double>& values) {
  double total = 0;
  for (double v : values) total += std::abs(v);
  return total;
}

// Repetitions are summed in fixed-size chunks merged in chunk order.
constexpr int64_t kChunk = 256;

struct Accumulator {
  std::vector<double> sum;
  std::vector<double> sum_squares;
  double error_sum = 0;
  double error_sum_squares = 0;
  absl::Status status;
};

double SampleSe(double sum, double sum_squares, double reps) {
  if (reps < 2) return 0;
  const double variance =
      std::max(0.0, (sum_squares - sum * sum / reps) / (reps - 1));
  return std::sqrt(variance / reps);
}

}  // namespace

BiasVector BiasVector::Analytic(std::vector<double> per_cell) {
  BiasVector bias;
  bias.l1 = SumAbs(per_cell);
  bias.per_cell = std::move(per_cell);
  bias.mode = BiasMode::kAnalytic;
  return bias;
}

nlohmann::json BiasVector::ToJson() const {
  nlohmann::json json = {{"per_cell", per_cell}, {"l1", l1}};
  if (mode == BiasMode::kEmpirical) {
    json["mode"] = "empirical";
    json["reps"] = reps;
    json["seed"] = seed;
    json["standard_error"] = standard_error;
  } else {
    json["mode"] = "analytic";
  }
  return json;
}

nlohmann::json FairnessReport::ToJson() const {
  return {{"alpha", alpha},
          {"argmax_cell", argmax_cell},
          {"argmin_cell", argmin_cell}};
}

absl::StatusOr<FairnessReport> FairnessOf(const BiasVector& bias) {
  if (bias.per_cell.empty()) {
    return absl::InvalidArgumentError("fairness of an empty bias vector");
  }
  const auto [lo, hi] =
      std::minmax_element(bias.per_cell.begin(), bias.per_cell.end());
  FairnessReport report;
  report.alpha = *hi - *lo;
  report.argmax_cell = static_cast<size_t>(hi - bias.per_cell.begin());
  report.argmin_cell = static_cast<size_t>(lo - bias.per_cell.begin());
  return report;
}

absl::StatusOr<EmpiricalStudy> RunEmpirical(const ReleaseFn& release,
                                            const Histogram& histogram,
                                            const EmpiricalOptions& options) {
  if (options.reps < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("reps must be >= 1, got ", options.reps));
  }
  const size_t n = histogram.size();
  const size_t chunks = static_cast<size_t>((options.reps + kChunk - 1) / kChunk);
  std::vector<Accumulator> partial(chunks);
  ParallelFor(chunks, [&](size_t c) {
    Accumulator& acc = partial[c];
    acc.sum.assign(n, 0);
    acc.sum_squares.assign(n, 0);
    const int64_t begin = static_cast<int64_t>(c) * kChunk;
    const int64_t end = std::min(options.reps, begin + kChunk);
    for (int64_t r = begin; r < end; ++r) {
      Rng rng(DeriveSeed(options.seed, static_cast<uint64_t>(r)));
      absl::StatusOr<RealHistogram> out = release(histogram, rng);
      if (!out.ok()) {
        acc.status = out.status();
        return;
      }
      if (out->values.size() != n) {
        acc.status = absl::InternalError("release changed the universe size");
        return;
      }
      if (options.project_nonnegative) {
        out->values = ToReal(NonnegProject(*out)).values;
      }
      double error = 0;
      for (size_t i = 0; i < n; ++i) {
        const double d = out->values[i] - static_cast<double>(histogram[i]);
        acc.sum[i] += d;
        acc.sum_squares[i] += d * d;
        error += std::abs(d);
      }
      acc.error_sum += error;
      acc.error_sum_squares += error * error;
    }
  });
  std::vector<double> sum(n, 0), sum_squares(n, 0);
  double error_sum = 0, error_sum_squares = 0;
  for (const Accumulator& acc : partial) {
    DA_RETURN_IF_ERROR(acc.status);
    for (size_t i = 0; i < n; ++i) {
      sum[i] += acc.sum[i];
      sum_squares[i] += acc.sum_squares[i];
    }
    error_sum += acc.error_sum;
    error_sum_squares += acc.error_sum_squares;
  }
  const double reps = static_cast<double>(options.reps);
  EmpiricalStudy study;
  BiasVector& bias = study.bias;
  bias.mode = BiasMode::kEmpirical;
  bias.reps = options.reps;
  bias.seed = options.seed;
  bias.per_cell.resize(n);
  bias.standard_error.resize(n);
  for (size_t i = 0; i < n; ++i) {
    bias.per_cell[i] = sum[i] / reps;
    bias.standard_error[i] = SampleSe(sum[i], sum_squares[i], reps);
  }
  bias.l1 = SumAbs(bias.per_cell);
  study.mean_l1_error = error_sum / reps;
  study.l1_error_se = SampleSe(error_sum, error_sum_squares, reps);
  return study;
}

absl::StatusOr<BiasVector> EmpiricalBias(const ReleaseFn& release,
                                         const Histogram& histogram,
                                         const EmpiricalOptions& options) {
  DA_ASSIGN_OR_RETURN(EmpiricalStudy study,
                      RunEmpirical(release, histogram, options));
  return std::move(study.bias);
}

double SuppressionProbability(int64_t x, int64_t k, double epsilon) {
  if (x < k) return 1 - 0.5 * std::exp(-epsilon * (k - x) / 2);
  return 0.5 * std::exp(-epsilon * (x - k) / 2);
}

absl::StatusOr<BiasVector> AnalyticBiasCs(const Histogram& histogram,
                                          int64_t k, double epsilon) {
  DA_RETURN_IF_ERROR(ValidateEpsilon(epsilon));
  if (k < 1) return absl::InvalidArgumentError("k must be >= 1");
  std::vector<double> per_cell(histogram.size());
  const double half = static_cast<double>(k) / 2;
  for (size_t i = 0; i < histogram.size(); ++i) {
    per_cell[i] = (half - static_cast<double>(histogram[i])) *
                  SuppressionProbability(histogram[i], k, epsilon);
  }
  return BiasVector::Analytic(std::move(per_cell));
}

namespace {

absl::Status CheckGroups(const Histogram& histogram,
                         const GroupIndex& groups) {
  const Schema& schema = histogram.schema();
  if (groups.group_size() != schema.qi_universe_size() ||
      groups.num_groups() * groups.group_size() != histogram.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "group structure does not match the histogram: ", groups.num_groups(),
        " groups of ", groups.group_size(), " for ", histogram.size(),
        " cells with n_Q = ", schema.qi_universe_size()));
  }
  return absl::OkStatus();
}

double SwapDenominator(double epsilon, size_t n_q) {
  return std::exp(epsilon) + static_cast<double>(n_q) - 1;
}

}  // namespace

absl::StatusOr<double> SwapMadL1(const Histogram& histogram,
                                 const GroupIndex& groups, double epsilon) {
  DA_RETURN_IF_ERROR(CheckGroups(histogram, groups));
  const size_t n_q = groups.group_size();
  double mad_sum = 0;
  for (size_t g = 0; g < groups.num_groups(); ++g) {
    const std::vector<uint64_t>& cells = groups.group(g);
    double mean = 0;
    for (uint64_t c : cells) mean += static_cast<double>(histogram[c]);
    mean /= static_cast<double>(n_q);
    double mad = 0;
    for (uint64_t c : cells) mad += std::abs(histogram[c] - mean);
    mad /= static_cast<double>(n_q);
    // Every cell of the group contributes its group's MAD.
    mad_sum += static_cast<double>(n_q) * mad;
  }
  return static_cast<double>(n_q) / SwapDenominator(epsilon, n_q) * mad_sum;
}

absl::StatusOr<BiasVector> AnalyticBiasSwap(const Histogram& histogram,
                                            const GroupIndex& groups,
                                            double epsilon) {
  // eps = 0 is meaningful here: uniform reassignment.
  if (!(epsilon >= 0) || std::isinf(epsilon)) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be finite and >= 0, got ", epsilon));
  }
  DA_RETURN_IF_ERROR(CheckGroups(histogram, groups));
  const size_t n_q = groups.group_size();
  const double denominator = SwapDenominator(epsilon, n_q);
  std::vector<double> per_cell(histogram.size());
  for (size_t g = 0; g < groups.num_groups(); ++g) {
    const std::vector<uint64_t>& cells = groups.group(g);
    double total = 0;
    for (uint64_t c : cells) total += static_cast<double>(histogram[c]);
    for (uint64_t c : cells) {
      per_cell[c] =
          (total - static_cast<double>(n_q) * static_cast<double>(histogram[c])) /
          denominator;
    }
  }
  BiasVector bias = BiasVector::Analytic(std::move(per_cell));
  DA_ASSIGN_OR_RETURN(double mad_l1, SwapMadL1(histogram, groups, epsilon));
  if (std::abs(bias.l1 - mad_l1) > 1e-9 * std::max(1.0, mad_l1)) {
    return absl::InternalError(absl::StrCat(
        "swapping bias l1 ", bias.l1, " disagrees with the MAD form ", mad_l1));
  }
  return bias;
}

double AnalyticBiasKanonFlag(int64_t x, int64_t k, double beta) {
  if (x < k) return 0;
  return BinomialCdf(x, k - 1, beta);
}

namespace {

std::pair<int64_t, int64_t> MinMax(const Histogram& histogram) {
  const auto [lo, hi] = std::minmax_element(histogram.counts().begin(),
                                            histogram.counts().end());
  return {*lo, *hi};
}

}  // namespace

double AlphaBoundCs(const Histogram& histogram, int64_t k, double epsilon) {
  const auto [x1, xn] = MinMax(histogram);
  const double p1 = SuppressionProbability(x1, k, epsilon);
  const double pn = SuppressionProbability(xn, k, epsilon);
  const double half = static_cast<double>(k) / 2;
  return static_cast<double>(xn - x1) * p1 +
         std::max(std::abs(half - x1), std::abs(half - xn)) * (p1 - pn);
}

double AlphaBoundSwap(const Histogram& histogram, uint64_t n_q,
                      double epsilon) {
  const auto [x1, xn] = MinMax(histogram);
  return 2 * static_cast<double>(n_q) / SwapDenominator(epsilon, n_q) *
         static_cast<double>(xn - x1);
}

double AlphaBoundLaplace(const Histogram& histogram, double epsilon) {
  const auto [x1, xn] = MinMax(histogram);
  return std::exp(-epsilon * static_cast<double>(x1) / 2) / 2 *
         static_cast<double>(xn - x1);
}

nlohmann::json DominanceReport::ToJson() const {
  nlohmann::json json = {{"precondition_met", precondition_met},
                         {"alpha_laplace", alpha_laplace},
                         {"alpha_cs", alpha_cs},
                         {"alpha_swap", alpha_swap}};
  if (precondition_met) json["holds"] = holds;
  return json;
}

DominanceReport FairnessDominanceCheck(const Histogram& histogram, int64_t k,
                                       uint64_t n_q, double epsilon) {
  DominanceReport report;
  report.alpha_laplace = AlphaBoundLaplace(histogram, epsilon);
  report.alpha_cs = AlphaBoundCs(histogram, k, epsilon);
  report.alpha_swap = AlphaBoundSwap(histogram, n_q, epsilon);
  const int64_t x1 = MinMax(histogram).first;
  report.precondition_met = x1 >= 2 && x1 <= k;
  if (report.precondition_met) {
    report.holds = report.alpha_laplace <= report.alpha_cs &&
                   report.alpha_laplace <= report.alpha_swap;
  }
  return report;
}

}  // namespace da
