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

#include "da/schema.h"

#include <algorithm>
#include <charconv>
#include <set>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"

namespace da {
namespace {

// Histograms are dense, so the universe has to fit in memory.
constexpr uint64_t kMaxUniverseSize = uint64_t{1} << 32;

std::optional<double> ParseNumber(std::string_view s) {
  double value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

}  // namespace

bool operator==(const Attribute& a, const Attribute& b) {
  return a.name == b.name && a.domain == b.domain &&
         a.quasi_identifier == b.quasi_identifier && a.kind == b.kind;
}

bool operator==(const Schema& a, const Schema& b) {
  return a.attributes_ == b.attributes_;
}

Schema::Schema(std::vector<Attribute> attributes)
    : attributes_(std::move(attributes)) {
  const size_t d = attributes_.size();
  strides_.assign(d, 1);
  qi_strides_.assign(d, 0);
  non_qi_strides_.assign(d, 0);
  numeric_values_.resize(d);
  uint64_t stride = 1, qi_stride = 1, non_qi_stride = 1;
  for (size_t i = d; i-- > 0;) {
    const uint64_t size = attributes_[i].domain.size();
    strides_[i] = stride;
    stride *= size;
    if (attributes_[i].quasi_identifier) {
      qi_strides_[i] = qi_stride;
      qi_stride *= size;
    } else {
      non_qi_strides_[i] = non_qi_stride;
      non_qi_stride *= size;
    }
  }
  universe_size_ = stride;
  qi_universe_size_ = qi_stride;
  for (size_t i = 0; i < d; ++i) {
    (attributes_[i].quasi_identifier ? qi_ : non_qi_).push_back(i);
    if (attributes_[i].kind == AttributeKind::kNumeric) {
      for (const std::string& label : attributes_[i].domain) {
        numeric_values_[i].push_back(*ParseNumber(label));
      }
    }
  }
}

absl::StatusOr<Schema> Schema::Create(std::vector<Attribute> attributes) {
  if (attributes.empty()) {
    return absl::InvalidArgumentError("schema has no attributes");
  }
  std::set<std::string> names;
  uint64_t n = 1;
  for (const Attribute& attribute : attributes) {
    if (attribute.name.empty()) {
      return absl::InvalidArgumentError("attribute with empty name");
    }
    if (!names.insert(attribute.name).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate attribute ", attribute.name));
    }
    if (attribute.domain.empty()) {
      return absl::InvalidArgumentError(
          absl::StrCat("attribute ", attribute.name, " has an empty domain"));
    }
    std::set<std::string> labels(attribute.domain.begin(),
                                 attribute.domain.end());
    if (labels.size() != attribute.domain.size()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "attribute ", attribute.name, " has duplicate domain labels"));
    }
    if (attribute.kind == AttributeKind::kNumeric) {
      std::optional<double> previous;
      for (const std::string& label : attribute.domain) {
        std::optional<double> value = ParseNumber(label);
        if (!value.has_value()) {
          return absl::InvalidArgumentError(
              absl::StrCat("numeric attribute ", attribute.name,
                           " has non-numeric label '", label, "'"));
        }
        if (previous.has_value() && *value <= *previous) {
          return absl::InvalidArgumentError(
              absl::StrCat("numeric attribute ", attribute.name,
                           " must list its domain in increasing order"));
        }
        previous = value;
      }
    }
    n *= attribute.domain.size();
    if (n > kMaxUniverseSize) {
      return absl::InvalidArgumentError("attribute universe is too large");
    }
  }
  return Schema(std::move(attributes));
}

absl::StatusOr<Schema> Schema::FromJson(const nlohmann::json& json) {
  if (!json.is_object() || !json.contains("attributes") ||
      !json["attributes"].is_array()) {
    return absl::InvalidArgumentError(
        "schema must be an object with an 'attributes' array");
  }
  std::vector<Attribute> attributes;
  for (const nlohmann::json& entry : json["attributes"]) {
    if (!entry.is_object() || !entry.contains("name") ||
        !entry.contains("domain") || !entry["name"].is_string() ||
        !entry["domain"].is_array()) {
      return absl::InvalidArgumentError(
          "each attribute needs a string 'name' and a 'domain' array");
    }
    Attribute attribute;
    attribute.name = entry["name"].get<std::string>();
    for (const nlohmann::json& label : entry["domain"]) {
      if (label.is_string()) {
        attribute.domain.push_back(label.get<std::string>());
      } else if (label.is_number_integer()) {
        attribute.domain.push_back(std::to_string(label.get<int64_t>()));
      } else {
        return absl::InvalidArgumentError(absl::StrCat(
            "domain labels of ", attribute.name, " must be strings"));
      }
    }
    attribute.quasi_identifier = entry.value("quasi_identifier", false);
    const std::string kind = entry.value("kind", std::string("categorical"));
    if (kind == "numeric") {
      attribute.kind = AttributeKind::kNumeric;
    } else if (kind != "categorical") {
      return absl::InvalidArgumentError(
          absl::StrCat("unknown attribute kind '", kind, "'"));
    }
    attributes.push_back(std::move(attribute));
  }
  return Create(std::move(attributes));
}

nlohmann::json Schema::ToJson() const {
  nlohmann::json attributes = nlohmann::json::array();
  for (const Attribute& attribute : attributes_) {
    attributes.push_back(
        {{"name", attribute.name},
         {"domain", attribute.domain},
         {"quasi_identifier", attribute.quasi_identifier},
         {"kind", attribute.kind == AttributeKind::kNumeric ? "numeric"
                                                            : "categorical"}});
  }
  return {{"attributes", attributes}};
}

absl::StatusOr<Schema> Schema::WithQuasiIdentifiers(
    const std::vector<std::string>& names) const {
  std::vector<Attribute> attributes = attributes_;
  for (Attribute& attribute : attributes) attribute.quasi_identifier = false;
  for (const std::string& name : names) {
    std::optional<size_t> index = AttributeIndex(name);
    if (!index.has_value()) {
      return absl::InvalidArgumentError(
          absl::StrCat("unknown quasi-identifier ", name));
    }
    attributes[*index].quasi_identifier = true;
  }
  return Create(std::move(attributes));
}

std::optional<size_t> Schema::AttributeIndex(std::string_view name) const {
  for (size_t i = 0; i < attributes_.size(); ++i) {
    if (attributes_[i].name == name) return i;
  }
  return std::nullopt;
}

std::optional<ValueIndex> Schema::FindValue(size_t attribute,
                                            std::string_view label) const {
  const std::vector<std::string>& domain = attributes_[attribute].domain;
  auto it = std::find(domain.begin(), domain.end(), label);
  if (it == domain.end()) return std::nullopt;
  return static_cast<ValueIndex>(it - domain.begin());
}

uint64_t Schema::CellIndex(std::span<const ValueIndex> values) const {
  uint64_t cell = 0;
  for (size_t i = 0; i < values.size(); ++i) cell += values[i] * strides_[i];
  return cell;
}

void Schema::CellValues(uint64_t cell, std::span<ValueIndex> values) const {
  for (size_t i = 0; i < attributes_.size(); ++i) {
    values[i] = static_cast<ValueIndex>(cell / strides_[i]);
    cell %= strides_[i];
  }
}

std::vector<ValueIndex> Schema::CellValues(uint64_t cell) const {
  std::vector<ValueIndex> values(attributes_.size());
  CellValues(cell, values);
  return values;
}

uint64_t Schema::QiIndex(uint64_t cell) const {
  uint64_t qi = 0;
  for (size_t i : qi_) {
    qi += (cell / strides_[i]) % attributes_[i].domain.size() * qi_strides_[i];
  }
  return qi;
}

uint64_t Schema::NonQiIndex(uint64_t cell) const {
  uint64_t group = 0;
  for (size_t i : non_qi_) {
    group += (cell / strides_[i]) % attributes_[i].domain.size() *
             non_qi_strides_[i];
  }
  return group;
}

uint64_t Schema::WithQiIndex(uint64_t cell, uint64_t qi) const {
  for (size_t i : qi_) {
    const uint64_t size = attributes_[i].domain.size();
    const uint64_t current = (cell / strides_[i]) % size;
    const uint64_t target = (qi / qi_strides_[i]) % size;
    cell = cell - current * strides_[i] + target * strides_[i];
  }
  return cell;
}

double Schema::NumericValue(size_t attribute, ValueIndex value) const {
  if (attributes_[attribute].kind == AttributeKind::kNumeric) {
    return numeric_values_[attribute][value];
  }
  return static_cast<double>(value);
}

}  // namespace da
