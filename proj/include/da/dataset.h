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

#ifndef DA_DATASET_H_
#define DA_DATASET_H_

#include <cstddef>
#include <map>
#include <memory>
#include <ostream>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"
#include "da/schema.h"

namespace da {

// m records over a schema, stored row-major as domain indices.
class Dataset {
 public:
  explicit Dataset(std::shared_ptr<const Schema> schema);

  // Fails if a row has the wrong arity or an out-of-domain index.
  static absl::StatusOr<Dataset> FromRows(
      std::shared_ptr<const Schema> schema,
      const std::vector<std::vector<ValueIndex>>& rows);

  const Schema& schema() const { return *schema_; }
  const std::shared_ptr<const Schema>& schema_ptr() const { return schema_; }

  size_t num_rows() const { return num_rows_; }
  std::span<const ValueIndex> row(size_t i) const {
    return {values_.data() + i * width_, width_};
  }
  std::span<ValueIndex> mutable_row(size_t i) {
    return {values_.data() + i * width_, width_};
  }
  ValueIndex value(size_t row, size_t attribute) const {
    return values_[row * width_ + attribute];
  }

  // The caller guarantees the values are in-domain.
  void AppendRow(std::span<const ValueIndex> values);
  void Reserve(size_t rows) { values_.reserve(rows * width_); }

  // Same rows, reinterpreted under a schema with identical domains (for
  // example one with different quasi-identifier flags).
  absl::StatusOr<Dataset> WithSchema(
      std::shared_ptr<const Schema> schema) const;

  friend bool operator==(const Dataset& a, const Dataset& b);

 private:
  std::shared_ptr<const Schema> schema_;
  size_t width_;
  size_t num_rows_ = 0;
  std::vector<ValueIndex> values_;
};

// Numeric-to-label discretization applied while loading a CSV.
struct ThresholdBin {
  // Values strictly above the threshold map to "1", the rest to "0".
  double threshold = 0;
};
struct EqualWidthBins {
  // Brackets "0".."bins-1" of equal width over the observed [min, max];
  // right-open except the last.
  int bins = 1;
};
using BinRule = std::variant<ThresholdBin, EqualWidthBins>;

struct Binning {
  std::map<std::string, BinRule> rules;

  // INCTOT binarized at 50000 and AGE split into 5 equal-width brackets.
  static Binning AcsDefault();
};

// Comma-separated, header in the first row, no quoting. Columns not named by
// the schema are ignored.
absl::StatusOr<Dataset> LoadCsv(const std::string& path,
                                std::shared_ptr<const Schema> schema,
                                const Binning* binning = nullptr);
absl::StatusOr<Dataset> ParseCsv(std::istream& in,
                                 std::shared_ptr<const Schema> schema,
                                 const Binning* binning = nullptr);

void WriteCsv(const Dataset& dataset, std::ostream& out);

}  // namespace da

#endif  // DA_DATASET_H_
