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

#ifndef DA_TESTS_TEST_UTIL_H_
#define DA_TESTS_TEST_UTIL_H_

#include <memory>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "da/dataset.h"
#include "da/histogram.h"
#include "da/rng.h"
#include "da/schema.h"
#include "gtest/gtest.h"

namespace da::testing {

// Categorical attribute with labels "0".."size-1".
inline Attribute Cat(const std::string& name, int size, bool qi = false) {
  Attribute a;
  a.name = name;
  for (int v = 0; v < size; ++v) a.domain.push_back(std::to_string(v));
  a.quasi_identifier = qi;
  return a;
}

// Numeric attribute with labels "0".."size-1".
inline Attribute Num(const std::string& name, int size, bool qi = false) {
  Attribute a = Cat(name, size, qi);
  a.kind = AttributeKind::kNumeric;
  return a;
}

template <typename T>
std::vector<std::remove_const_t<T>> Vec(std::span<T> values) {
  return {values.begin(), values.end()};
}

inline std::shared_ptr<const Schema> MakeSchema(
    std::vector<Attribute> attributes) {
  absl::StatusOr<Schema> schema = Schema::Create(std::move(attributes));
  EXPECT_TRUE(schema.ok()) << schema.status();
  return std::make_shared<const Schema>(*std::move(schema));
}

// A single quasi-identifier with `n` values: n cells, one group.
inline std::shared_ptr<const Schema> OneGroupSchema(int n) {
  return MakeSchema({Cat("Q", n, true)});
}

inline Histogram MakeHistogram(std::shared_ptr<const Schema> schema,
                               std::vector<int64_t> counts) {
  absl::StatusOr<Histogram> h =
      Histogram::FromCounts(std::move(schema), std::move(counts));
  EXPECT_TRUE(h.ok()) << h.status();
  return *std::move(h);
}

// `rows` records with independent uniform values.
inline Dataset RandomDataset(std::shared_ptr<const Schema> schema, size_t rows,
                             Rng& rng) {
  Dataset data(schema);
  std::vector<ValueIndex> row(schema->num_attributes());
  for (size_t r = 0; r < rows; ++r) {
    for (size_t a = 0; a < row.size(); ++a) {
      row[a] = static_cast<ValueIndex>(
          rng.UniformInt(schema->attribute(a).domain.size()));
    }
    data.AppendRow(row);
  }
  return data;
}

}  // namespace da::testing

#endif  // DA_TESTS_TEST_UTIL_H_
