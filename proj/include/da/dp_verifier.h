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

#ifndef DA_DP_VERIFIER_H_
#define DA_DP_VERIFIER_H_

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "da/histogram.h"
#include "da/rng.h"

namespace da {

// A released histogram with an optional marker per cell; kSuppressed marks a
// suppressed cell independently of the value written in its place.
using Outcome = std::vector<int64_t>;
inline constexpr int64_t kSuppressed = -1;

using OutcomeDistribution = std::map<Outcome, double>;

// A mechanism with finitely many outcomes on a small histogram.
class DiscreteMechanism {
 public:
  virtual ~DiscreteMechanism() = default;

  virtual std::string name() const = 0;
  virtual bool continuous_output() const { return false; }

  // Exact output law; Unimplemented when not tractable.
  virtual absl::StatusOr<OutcomeDistribution> Distribution(
      const Histogram& histogram) const = 0;
  virtual absl::StatusOr<Outcome> Sample(const Histogram& histogram,
                                         Rng& rng) const = 0;
};

std::unique_ptr<DiscreteMechanism> MakeIdentityMechanism();
std::unique_ptr<DiscreteMechanism> MakeConstantMechanism();
// Suppressed cells are reported as kSuppressed when `flag_suppressed`, else
// as the released floor(k / 2).
std::unique_ptr<DiscreteMechanism> MakeDpCellSuppressionMechanism(
    int64_t k, double epsilon, bool flag_suppressed = true);
std::unique_ptr<DiscreteMechanism> MakeDpSwappingMechanism(double epsilon);
// Continuous output; the verifier rejects it.
std::unique_ptr<DiscreteMechanism> MakeLaplaceMechanism();

enum class VerifierMode {
  kExact,
  kSampled,
};

struct VerifierOptions {
  VerifierMode mode = VerifierMode::kExact;
  int64_t max_count = 3;
  int64_t samples = 1'000'000;
  uint64_t seed = 1;
};

struct VerifierResult {
  double delta_hat = 0;
  // Monte-Carlo standard error of delta_hat; 0 in exact mode.
  double standard_error = 0;
  std::vector<int64_t> worst_input;
  std::vector<int64_t> worst_neighbor;
  int64_t pairs = 0;
};

// Max over adjacent pairs (D, D') with all counts <= max_count of
// Pr[M(D) in S^c], S^c = {o : Pr[M(D) = o] > e^epsilon Pr[M(D') = o]}.
absl::StatusOr<VerifierResult> VerifyDpBruteForce(
    const DiscreteMechanism& mechanism, std::shared_ptr<const Schema> schema,
    double epsilon, const VerifierOptions& options = {});

// Exact sup over events of Pr[M(D) in E] - e^epsilon Pr[M(D') in E].
absl::StatusOr<double> HockeyStickDelta(const DiscreteMechanism& mechanism,
                                        std::shared_ptr<const Schema> schema,
                                        double epsilon, int64_t max_count);

}  // namespace da

#endif  // DA_DP_VERIFIER_H_
