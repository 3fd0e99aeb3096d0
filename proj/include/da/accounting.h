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

#ifndef DA_ACCOUNTING_H_
#define DA_ACCOUNTING_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"

namespace da {

// Analytic (epsilon, delta) of one mechanism at one parameter setting.
struct DeltaReport {
  std::string mechanism;
  double epsilon = 0;
  double delta = 0;
  std::map<std::string, double> parameters;

  nlohmann::json ToJson() const;
};

nlohmann::json DeltaReportsToJson(const std::vector<DeltaReport>& reports);

// Pr[Binomial(trials, p) <= successes].
double BinomialCdf(int64_t trials, int64_t successes, double p);

// Requires 1 <= k < bound.
absl::StatusOr<double> DeltaCellSuppression(double epsilon, int64_t bound,
                                            int64_t k);

// Requires n_q >= 2.
absl::StatusOr<double> DeltaSwapping(double epsilon, uint64_t n_q);

// Subsample-then-anonymize. The guarantee does not depend on k. Requires
// beta in (0, 1] and bound >= 1.
absl::StatusOr<double> DeltaKAnonymity(double epsilon, double beta,
                                       int64_t bound);

// Effective epsilon of the discrete Gaussian with sigma = 2 / epsilon_param
// at the given delta in (0, 1].
absl::StatusOr<double> GaussianDpParameters(double epsilon_param, double delta);

absl::StatusOr<DeltaReport> CellSuppressionReport(double epsilon,
                                                  int64_t bound, int64_t k);
absl::StatusOr<DeltaReport> SwappingReport(double epsilon, uint64_t n_q);
absl::StatusOr<DeltaReport> KAnonymityReport(double epsilon, double beta,
                                             int64_t bound, int64_t k);
DeltaReport LaplaceReport(double epsilon);

}  // namespace da

#endif  // DA_ACCOUNTING_H_
