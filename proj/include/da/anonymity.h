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

#ifndef DA_ANONYMITY_H_
#define DA_ANONYMITY_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <vector>

#include "absl/status/statusor.h"
#include "da/dataset.h"
#include "da/rng.h"
#include "da/schema.h"

namespace da {

// One attribute of a generalized record. Categorical attributes carry the
// merged label set; numeric ones the domain interval [lo, hi]. Non-QI
// attributes keep a single original value (a one-element set, or lo == hi).
struct GeneralizedValue {
  std::vector<ValueIndex> categories;
  ValueIndex lo = 0;
  ValueIndex hi = 0;

  friend auto operator<=>(const GeneralizedValue&,
                          const GeneralizedValue&) = default;
};

struct GeneralizedRow {
  std::vector<GeneralizedValue> values;
  int64_t count = 0;
};

// Output of k-anonymization: generalized records in the space X_H induced by
// the Mondrian partition. Rows of one Mondrian region share their QI
// generalization and differ in their non-QI values.
struct AnonymizedPartition {
  std::shared_ptr<const Schema> schema;
  std::vector<GeneralizedRow> rows;

  int64_t TotalCount() const;
};

// Strict top-down Mondrian. A region is cut on the QI with the widest
// normalized span ((distinct - 1) / (|dom| - 1) for categorical attributes,
// observed range / domain range for numeric ones; ties go to schema order) at
// the median, and only when both halves keep at least k records. When the
// widest attribute cannot be cut the next one is tried. Fewer than k records
// yield a single region generalized to the observed values.
absl::StatusOr<AnonymizedPartition> MondrianKAnonymize(const Dataset& dataset,
                                                        int64_t k);

// Projected onto the QIs, does every generalized tuple cover >= k records?
bool SatisfiesKAnonymity(const AnonymizedPartition& partition, int64_t k);

// Back to the original space: count records per generalized row, categorical
// values drawn uniformly from the merged set, numeric values from
// N((a+b)/2, ((b-a)/4)^2) rounded to the nearest non-negative integer (then
// snapped to the closest domain label).
Dataset Reconstruct(const AnonymizedPartition& partition, Rng& rng);

// Keeps each record independently with probability beta.
Dataset Subsample(const Dataset& dataset, double beta, Rng& rng);

// 1 - exp(-eps).
double SamplingProbability(double epsilon);

// Subsample with beta = 1 - exp(-eps) (or the override), k-anonymize with
// Mondrian, reconstruct.
absl::StatusOr<Dataset> DpKAnonymity(
    const Dataset& dataset, int64_t k, double epsilon, Rng& rng,
    std::optional<double> beta_override = std::nullopt);

// Traditional k-anonymity followed by reconstruction.
absl::StatusOr<Dataset> KAnonymity(const Dataset& dataset, int64_t k,
                                   Rng& rng);

// Header = attribute names + "count"; merged sets as "a|b|c", numeric QI
// intervals as a quoted "[a,b]".
void WritePartitionCsv(const AnonymizedPartition& partition,
                       std::ostream& out);

}  // namespace da

#endif  // DA_ANONYMITY_H_
