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

#include "da/accounting.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "da/mechanisms.h"
#include "da/status_macros.h"

namespace da {

nlohmann::json DeltaReport::ToJson() const {
  nlohmann::json json = {
      {"mechanism", mechanism}, {"epsilon", epsilon}, {"delta", delta}};
  json["parameters"] = nlohmann::json::object();
  for (const auto& [name, value] : parameters) json["parameters"][name] = value;
  return json;
}

nlohmann::json DeltaReportsToJson(const std::vector<DeltaReport>& reports) {
  nlohmann::json rows = nlohmann::json::array();
  for (const DeltaReport& report : reports) rows.push_back(report.ToJson());
  return rows;
}

double BinomialCdf(int64_t trials, int64_t successes, double p) {
  if (successes < 0) return 0;
  if (successes >= trials) return 1;
  if (p <= 0) return 1;
  if (p >= 1) return 0;
  // log pmf by the ratio recurrence f(j) / f(j-1) = (w-j+1)/j * p/(1-p).
  const long double log_odds =
      std::log(static_cast<long double>(p)) -
      std::log1p(-static_cast<long double>(p));
  std::vector<long double> log_terms;
  log_terms.reserve(successes + 1);
  long double log_term = trials * std::log1p(-static_cast<long double>(p));
  log_terms.push_back(log_term);
  for (int64_t j = 1; j <= successes; ++j) {
    log_term += std::log(static_cast<long double>(trials - j + 1)) -
                std::log(static_cast<long double>(j)) + log_odds;
    log_terms.push_back(log_term);
  }
  const long double peak = *std::max_element(log_terms.begin(), log_terms.end());
  long double sum = 0;
  for (long double t : log_terms) sum += std::exp(t - peak);
  const long double cdf = std::exp(peak + std::log(sum));
  return static_cast<double>(std::min<long double>(cdf, 1));
}

absl::StatusOr<double> DeltaCellSuppression(double epsilon, int64_t bound,
                                            int64_t k) {
  DA_RETURN_IF_ERROR(ValidateEpsilon(epsilon));
  if (k < 1 || k >= bound) {
    return absl::InvalidArgumentError(absl::StrCat(
        "cell suppression accounting requires 1 <= k < B, got k=", k,
        " B=", bound));
  }
  return 1.0 - 0.25 * std::exp(-epsilon * static_cast<double>(bound - k));
}

absl::StatusOr<double> DeltaSwapping(double epsilon, uint64_t n_q) {
  DA_RETURN_IF_ERROR(ValidateEpsilon(epsilon));
  if (n_q < 2) {
    return absl::InvalidArgumentError(
        absl::StrCat("swapping accounting requires n_Q >= 2, got ", n_q));
  }
  const double gamma = SwapRetentionProbability(epsilon, n_q);
  const double others = static_cast<double>(n_q - 1);
  const double tail = (1 - gamma) / others;
  return 1.0 - (1 - gamma * gamma) / others - tail * tail;
}

absl::StatusOr<double> DeltaKAnonymity(double epsilon, double beta,
                                       int64_t bound) {
  DA_RETURN_IF_ERROR(ValidateEpsilon(epsilon));
  if (!(beta > 0 && beta <= 1)) {
    return absl::InvalidArgumentError(
        absl::StrCat("beta must lie in (0, 1], got ", beta));
  }
  if (bound < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("bound must be >= 1, got ", bound));
  }
  const double keep = -std::expm1(-epsilon);
  double min_cdf = 1;
  for (int64_t w = 1; w <= bound; ++w) {
    const auto nu = static_cast<int64_t>(std::floor(keep * w));
    min_cdf = std::min(min_cdf, BinomialCdf(w, nu, beta));
  }
  return 1.0 - min_cdf * min_cdf;
}

absl::StatusOr<double> GaussianDpParameters(double epsilon_param,
                                            double delta) {
  DA_RETURN_IF_ERROR(ValidateEpsilon(epsilon_param));
  if (!(delta > 0 && delta <= 1)) {
    return absl::InvalidArgumentError(
        absl::StrCat("delta must lie in (0, 1], got ", delta));
  }
  return 0.5 * epsilon_param * epsilon_param +
         epsilon_param * std::sqrt(2 * std::log(1 / delta));
}

absl::StatusOr<DeltaReport> CellSuppressionReport(double epsilon,
                                                  int64_t bound, int64_t k) {
  DA_ASSIGN_OR_RETURN(double delta, DeltaCellSuppression(epsilon, bound, k));
  return DeltaReport{"dp_cell_suppression",
                     epsilon,
                     delta,
                     {{"B", static_cast<double>(bound)},
                      {"k", static_cast<double>(k)}}};
}

absl::StatusOr<DeltaReport> SwappingReport(double epsilon, uint64_t n_q) {
  DA_ASSIGN_OR_RETURN(double delta, DeltaSwapping(epsilon, n_q));
  return DeltaReport{
      "dp_swapping", epsilon, delta, {{"n_Q", static_cast<double>(n_q)}}};
}

absl::StatusOr<DeltaReport> KAnonymityReport(double epsilon, double beta,
                                             int64_t bound, int64_t k) {
  DA_ASSIGN_OR_RETURN(double delta, DeltaKAnonymity(epsilon, beta, bound));
  return DeltaReport{"dp_k_anonymity",
                     epsilon,
                     delta,
                     {{"B", static_cast<double>(bound)},
                      {"beta", beta},
                      {"k", static_cast<double>(k)}}};
}

DeltaReport LaplaceReport(double epsilon) {
  return DeltaReport{"laplace", epsilon, 0.0, {}};
}

}  // namespace da
