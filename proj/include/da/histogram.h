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

#ifndef DA_HISTOGRAM_H_
#define DA_HISTOGRAM_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "da/dataset.h"
#include "da/schema.h"

namespace da {

// Non-negative integer counts x(D) over the cells of a schema's universe.
class Histogram {
 public:
  // All-zero histogram.
  explicit Histogram(std::shared_ptr<const Schema> schema);

  static absl::StatusOr<Histogram> FromCounts(
      std::shared_ptr<const Schema> schema, std::vector<int64_t> counts);

  const Schema& schema() const { return *schema_; }
  const std::shared_ptr<const Schema>& schema_ptr() const { return schema_; }

  size_t size() const { return counts_.size(); }
  int64_t operator[](size_t i) const { return counts_[i]; }
  std::span<const int64_t> counts() const { return counts_; }

  // Callers keep entries non-negative.
  void Add(size_t cell, int64_t delta) { counts_[cell] += delta; }

  // B, the largest entry. Zero for an empty histogram.
  int64_t Bound() const;
  int64_t Total() const;

  friend bool operator==(const Histogram& a, const Histogram& b) {
    return a.counts_ == b.counts_ && *a.schema_ == *b.schema_;
  }

 private:
  std::shared_ptr<const Schema> schema_;
  std::vector<int64_t> counts_;
};

// Release of a mechanism whose values may be negative or fractional.
struct RealHistogram {
  std::shared_ptr<const Schema> schema;
  std::vector<double> values;
};

RealHistogram ToReal(const Histogram& histogram);

Histogram BuildHistogram(const Dataset& dataset);

// count_i copies of the tuple a_i, cells visited in index order.
Dataset HistogramToDataset(const Histogram& histogram);

// Every histogram reachable by changing one record: a positive cell loses one
// count and a different cell gains one. Visits (#positive cells) * (n - 1)
// neighbors.
void ForEachAdjacentHistogram(const Histogram& histogram,
                              const std::function<void(const Histogram&)>& fn);
std::vector<Histogram> AdjacentHistograms(const Histogram& histogram);

// Partition of the universe into index sets I_i = {j : a_j[N] = a_i[N]}.
// Members of each group are ordered by their QI index, so group(g)[q] is the
// cell with non-QI projection g and QI projection q.
class GroupIndex {
 public:
  explicit GroupIndex(const Schema& schema);

  size_t num_groups() const { return groups_.size(); }
  size_t group_size() const { return group_size_; }
  const std::vector<uint64_t>& group(size_t g) const { return groups_[g]; }
  size_t group_of(uint64_t cell) const { return group_of_[cell]; }
  // The index set I_i containing `cell`.
  const std::vector<uint64_t>& members(uint64_t cell) const {
    return groups_[group_of_[cell]];
  }

 private:
  size_t group_size_;
  std::vector<std::vector<uint64_t>> groups_;
  std::vector<size_t> group_of_;
};

}  // namespace da

#endif  // DA_HISTOGRAM_H_
