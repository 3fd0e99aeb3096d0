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

#include "da/dataset.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <sstream>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "da/status_macros.h"

namespace da {

Dataset::Dataset(std::shared_ptr<const Schema> schema)
    : schema_(std::move(schema)), width_(schema_->num_attributes()) {}

absl::StatusOr<Dataset> Dataset::FromRows(
    std::shared_ptr<const Schema> schema,
    const std::vector<std::vector<ValueIndex>>& rows) {
  Dataset dataset(std::move(schema));
  dataset.Reserve(rows.size());
  for (size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != dataset.width_) {
      return absl::InvalidArgumentError(
          absl::StrCat("row ", r, " has ", rows[r].size(), " values, expected ",
                       dataset.width_));
    }
    for (size_t a = 0; a < dataset.width_; ++a) {
      if (rows[r][a] >= dataset.schema_->attribute(a).domain.size()) {
        return absl::InvalidArgumentError(
            absl::StrCat("row ", r, ": value index ", rows[r][a],
                         " out of domain of ",
                         dataset.schema_->attribute(a).name));
      }
    }
    dataset.AppendRow(rows[r]);
  }
  return dataset;
}

void Dataset::AppendRow(std::span<const ValueIndex> values) {
  values_.insert(values_.end(), values.begin(), values.end());
  ++num_rows_;
}

absl::StatusOr<Dataset> Dataset::WithSchema(
    std::shared_ptr<const Schema> schema) const {
  if (schema->num_attributes() != width_) {
    return absl::InvalidArgumentError("schema arity mismatch");
  }
  for (size_t a = 0; a < width_; ++a) {
    if (schema->attribute(a).domain != schema_->attribute(a).domain) {
      return absl::InvalidArgumentError(absl::StrCat(
          "domain of ", schema->attribute(a).name, " differs"));
    }
  }
  Dataset out(std::move(schema));
  out.num_rows_ = num_rows_;
  out.values_ = values_;
  return out;
}

bool operator==(const Dataset& a, const Dataset& b) {
  return *a.schema_ == *b.schema_ && a.values_ == b.values_;
}

Binning Binning::AcsDefault() {
  Binning binning;
  binning.rules["INCTOT"] = ThresholdBin{50000};
  binning.rules["AGE"] = EqualWidthBins{5};
  return binning;
}

namespace {

std::optional<double> ParseDouble(std::string_view s) {
  double value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

std::vector<std::string> SplitLine(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string> fields =
      absl::StrSplit(absl::string_view(line.data(), line.size()), ',');
  for (std::string& field : fields) {
    field = std::string(absl::StripAsciiWhitespace(field));
  }
  return fields;
}

// Maps raw numeric strings of one column to bin labels.
absl::StatusOr<std::vector<std::string>> ApplyBinRule(
    const BinRule& rule, const std::string& column,
    const std::vector<std::string>& raw) {
  std::vector<double> values(raw.size());
  for (size_t r = 0; r < raw.size(); ++r) {
    std::optional<double> v = ParseDouble(raw[r]);
    if (!v.has_value()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "row ", r, ": column ", column, " value '", raw[r],
          "' is not numeric"));
    }
    values[r] = *v;
  }
  std::vector<std::string> labels(raw.size());
  if (const auto* threshold = std::get_if<ThresholdBin>(&rule)) {
    for (size_t r = 0; r < values.size(); ++r) {
      labels[r] = values[r] > threshold->threshold ? "1" : "0";
    }
    return labels;
  }
  const int bins = std::get<EqualWidthBins>(rule).bins;
  if (bins < 1) return absl::InvalidArgumentError("bins must be >= 1");
  if (values.empty()) return labels;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double min = *lo;
  const double width = (*hi - min) / bins;
  for (size_t r = 0; r < values.size(); ++r) {
    int bin = 0;
    if (width > 0) {
      bin = static_cast<int>(std::floor((values[r] - min) / width));
      bin = std::clamp(bin, 0, bins - 1);
    }
    labels[r] = std::to_string(bin);
  }
  return labels;
}

}  // namespace

absl::StatusOr<Dataset> ParseCsv(std::istream& in,
                                 std::shared_ptr<const Schema> schema,
                                 const Binning* binning) {
  std::string line;
  if (!std::getline(in, line)) {
    return absl::InvalidArgumentError("CSV input is empty");
  }
  const std::vector<std::string> header = SplitLine(line);
  const size_t d = schema->num_attributes();
  std::vector<size_t> column_of(d);
  for (size_t a = 0; a < d; ++a) {
    const std::string& name = schema->attribute(a).name;
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
      return absl::InvalidArgumentError(
          absl::StrCat("schema error: missing column ", name));
    }
    column_of[a] = it - header.begin();
  }

  // Column-major raw strings so that binning can see whole columns.
  std::vector<std::vector<std::string>> raw(d);
  size_t row = 0;
  while (std::getline(in, line)) {
    if (absl::StripAsciiWhitespace(line).empty()) continue;
    std::vector<std::string> fields = SplitLine(line);
    if (fields.size() != header.size()) {
      return absl::InvalidArgumentError(
          absl::StrCat("row ", row, ": expected ", header.size(),
                       " fields, found ", fields.size()));
    }
    for (size_t a = 0; a < d; ++a) raw[a].push_back(fields[column_of[a]]);
    ++row;
  }

  if (binning != nullptr) {
    for (size_t a = 0; a < d; ++a) {
      auto it = binning->rules.find(schema->attribute(a).name);
      if (it == binning->rules.end()) continue;
      DA_ASSIGN_OR_RETURN(raw[a],
                          ApplyBinRule(it->second, it->first, raw[a]));
    }
  }

  Dataset dataset(schema);
  dataset.Reserve(row);
  std::vector<ValueIndex> values(d);
  for (size_t r = 0; r < row; ++r) {
    for (size_t a = 0; a < d; ++a) {
      std::optional<ValueIndex> v = schema->FindValue(a, raw[a][r]);
      if (!v.has_value()) {
        return absl::InvalidArgumentError(absl::StrCat(
            "row ", r, ": value '", raw[a][r], "' is not in the domain of ",
            schema->attribute(a).name));
      }
      values[a] = *v;
    }
    dataset.AppendRow(values);
  }
  return dataset;
}

absl::StatusOr<Dataset> LoadCsv(const std::string& path,
                                std::shared_ptr<const Schema> schema,
                                const Binning* binning) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  return ParseCsv(in, std::move(schema), binning);
}

void WriteCsv(const Dataset& dataset, std::ostream& out) {
  const Schema& schema = dataset.schema();
  for (size_t a = 0; a < schema.num_attributes(); ++a) {
    out << (a ? "," : "") << schema.attribute(a).name;
  }
  out << '\n';
  for (size_t r = 0; r < dataset.num_rows(); ++r) {
    std::span<const ValueIndex> row = dataset.row(r);
    for (size_t a = 0; a < row.size(); ++a) {
      out << (a ? "," : "") << schema.attribute(a).domain[row[a]];
    }
    out << '\n';
  }
}

}  // namespace da
