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

#include "da/histogram.h"

#include <algorithm>
#include <numeric>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace da {

Histogram::Histogram(std::shared_ptr<const Schema> schema)
    : schema_(std::move(schema)), counts_(schema_->universe_size(), 0) {}

absl::StatusOr<Histogram> Histogram::FromCounts(
    std::shared_ptr<const Schema> schema, std::vector<int64_t> counts) {
  if (counts.size() != schema->universe_size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("histogram has ", counts.size(), " cells, universe has ",
                     schema->universe_size()));
  }
  for (size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] < 0) {
      return absl::InvalidArgumentError(
          absl::StrCat("cell ", i, " has negative count ", counts[i]));
    }
  }
  Histogram histogram(std::move(schema));
  histogram.counts_ = std::move(counts);
  return histogram;
}

int64_t Histogram::Bound() const {
  if (counts_.empty()) return 0;
  return *std::max_element(counts_.begin(), counts_.end());
}

int64_t Histogram::Total() const {
  return std::accumulate(counts_.begin(), counts_.end(), int64_t{0});
}

RealHistogram ToReal(const Histogram& histogram) {
  RealHistogram real{histogram.schema_ptr(), {}};
  real.values.assign(histogram.counts().begin(), histogram.counts().end());
  return real;
}

Histogram BuildHistogram(const Dataset& dataset) {
  Histogram histogram(dataset.schema_ptr());
  for (size_t r = 0; r < dataset.num_rows(); ++r) {
    histogram.Add(dataset.schema().CellIndex(dataset.row(r)), 1);
  }
  return histogram;
}

Dataset HistogramToDataset(const Histogram& histogram) {
  Dataset dataset(histogram.schema_ptr());
  dataset.Reserve(static_cast<size_t>(histogram.Total()));
  std::vector<ValueIndex> values(histogram.schema().num_attributes());
  for (size_t cell = 0; cell < histogram.size(); ++cell) {
    if (histogram[cell] == 0) continue;
    histogram.schema().CellValues(cell, values);
    for (int64_t c = 0; c < histogram[cell]; ++c) dataset.AppendRow(values);
  }
  return dataset;
}

void ForEachAdjacentHistogram(
    const Histogram& histogram,
    const std::function<void(const Histogram&)>& fn) {
  Histogram neighbor = histogram;
  for (size_t from = 0; from < histogram.size(); ++from) {
    if (histogram[from] == 0) continue;
    neighbor.Add(from, -1);
    for (size_t to = 0; to < histogram.size(); ++to) {
      if (to == from) continue;
      neighbor.Add(to, 1);
      fn(neighbor);
      neighbor.Add(to, -1);
    }
    neighbor.Add(from, 1);
  }
}

std::vector<Histogram> AdjacentHistograms(const Histogram& histogram) {
  std::vector<Histogram> neighbors;
  ForEachAdjacentHistogram(histogram, [&neighbors](const Histogram& h) {
    neighbors.push_back(h);
  });
  return neighbors;
}

GroupIndex::GroupIndex(const Schema& schema)
    : group_size_(schema.qi_universe_size()),
      groups_(schema.universe_size() / schema.qi_universe_size()),
      group_of_(schema.universe_size()) {
  for (auto& group : groups_) group.assign(group_size_, 0);
  for (uint64_t cell = 0; cell < schema.universe_size(); ++cell) {
    const uint64_t g = schema.NonQiIndex(cell);
    groups_[g][schema.QiIndex(cell)] = cell;
    group_of_[cell] = g;
  }
}

}  // namespace da
