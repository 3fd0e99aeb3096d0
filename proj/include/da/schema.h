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

#ifndef DA_SCHEMA_H_
#define DA_SCHEMA_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"

namespace da {

// Index of a category inside an attribute's domain.
using ValueIndex = uint32_t;

enum class AttributeKind {
  kCategorical,
  // Ordered integer-valued labels. Mondrian generalizes these to intervals
  // and reconstruction samples them from a Gaussian.
  kNumeric,
};

struct Attribute {
  std::string name;
  std::vector<std::string> domain;
  bool quasi_identifier = false;
  AttributeKind kind = AttributeKind::kCategorical;
};

// Attribute universe X = dom(A_1) x ... x dom(A_d), split into
// quasi-identifiers Q and the remaining attributes N.
//
// Cells of X are enumerated lexicographically in attribute order, the first
// attribute being the most significant digit. Every module refers to cells by
// this index.
class Schema {
 public:
  static absl::StatusOr<Schema> Create(std::vector<Attribute> attributes);

  // {"attributes": [{"name": .., "domain": [..], "quasi_identifier": bool,
  //                  "kind": "categorical"|"numeric"}, ...]}
  static absl::StatusOr<Schema> FromJson(const nlohmann::json& json);
  nlohmann::json ToJson() const;

  // Same attributes with the quasi-identifier flags replaced by `names`.
  absl::StatusOr<Schema> WithQuasiIdentifiers(
      const std::vector<std::string>& names) const;

  size_t num_attributes() const { return attributes_.size(); }
  const Attribute& attribute(size_t i) const { return attributes_[i]; }
  const std::vector<Attribute>& attributes() const { return attributes_; }

  std::optional<size_t> AttributeIndex(std::string_view name) const;
  std::optional<ValueIndex> FindValue(size_t attribute,
                                      std::string_view label) const;

  // n = |X|.
  uint64_t universe_size() const { return universe_size_; }
  // n_Q = |X_Q|.
  uint64_t qi_universe_size() const { return qi_universe_size_; }
  const std::vector<size_t>& quasi_identifiers() const { return qi_; }
  const std::vector<size_t>& non_quasi_identifiers() const { return non_qi_; }

  uint64_t CellIndex(std::span<const ValueIndex> values) const;
  void CellValues(uint64_t cell, std::span<ValueIndex> values) const;
  std::vector<ValueIndex> CellValues(uint64_t cell) const;

  // Position of the cell's QI projection in X_Q (lexicographic over Q).
  uint64_t QiIndex(uint64_t cell) const;
  // Position of the cell's non-QI projection (its swapping group).
  uint64_t NonQiIndex(uint64_t cell) const;
  // The cell sharing `cell`'s non-QI values whose QI projection is `qi`.
  uint64_t WithQiIndex(uint64_t cell, uint64_t qi) const;

  // Numeric value of a label of a kNumeric attribute.
  double NumericValue(size_t attribute, ValueIndex value) const;

  friend bool operator==(const Schema& a, const Schema& b);

 private:
  explicit Schema(std::vector<Attribute> attributes);

  std::vector<Attribute> attributes_;
  std::vector<uint64_t> strides_;
  std::vector<size_t> qi_;
  std::vector<size_t> non_qi_;
  std::vector<uint64_t> qi_strides_;      // per attribute, 0 if not a QI
  std::vector<uint64_t> non_qi_strides_;  // per attribute, 0 if a QI
  std::vector<std::vector<double>> numeric_values_;
  uint64_t universe_size_ = 1;
  uint64_t qi_universe_size_ = 1;
};

bool operator==(const Attribute& a, const Attribute& b);

}  // namespace da

#endif  // DA_SCHEMA_H_
