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

#include "da/anonymity.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "da/mechanisms.h"
#include "da/status_macros.h"

namespace da {

int64_t AnonymizedPartition::TotalCount() const {
  int64_t total = 0;
  for (const GeneralizedRow& row : rows) total += row.count;
  return total;
}

namespace {

class Mondrian {
 public:
  Mondrian(const Dataset& dataset, int64_t k)
      : dataset_(dataset), schema_(dataset.schema()), k_(k) {}

  AnonymizedPartition Run() {
    std::vector<size_t> rows(dataset_.num_rows());
    std::iota(rows.begin(), rows.end(), size_t{0});
    partition_.schema = dataset_.schema_ptr();
    Split(std::move(rows));
    return std::move(partition_);
  }

 private:
  double Span(const std::vector<size_t>& rows, size_t attribute) const {
    const Attribute& a = schema_.attribute(attribute);
    if (a.domain.size() < 2) return 0;
    ValueIndex lo = a.domain.size(), hi = 0;
    std::vector<bool> seen(a.domain.size(), false);
    size_t distinct = 0;
    for (size_t r : rows) {
      const ValueIndex v = dataset_.value(r, attribute);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      if (!seen[v]) {
        seen[v] = true;
        ++distinct;
      }
    }
    if (a.kind == AttributeKind::kNumeric) {
      const double range = schema_.NumericValue(attribute, a.domain.size() - 1) -
                           schema_.NumericValue(attribute, 0);
      return (schema_.NumericValue(attribute, hi) -
              schema_.NumericValue(attribute, lo)) /
             range;
    }
    return static_cast<double>(distinct - 1) /
           static_cast<double>(a.domain.size() - 1);
  }

  // Median cut on `attribute`; empty when a side would hold fewer than k.
  std::optional<std::pair<std::vector<size_t>, std::vector<size_t>>> Cut(
      const std::vector<size_t>& rows, size_t attribute) const {
    std::vector<ValueIndex> values;
    values.reserve(rows.size());
    for (size_t r : rows) values.push_back(dataset_.value(r, attribute));
    std::vector<ValueIndex> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    const ValueIndex median = sorted[(sorted.size() - 1) / 2];
    // Left takes values <= median unless that leaves nothing on the right.
    const bool inclusive = sorted.back() > median;
    std::vector<size_t> left, right;
    for (size_t i = 0; i < rows.size(); ++i) {
      const bool goes_left =
          inclusive ? values[i] <= median : values[i] < median;
      (goes_left ? left : right).push_back(rows[i]);
    }
    if (static_cast<int64_t>(left.size()) < k_ ||
        static_cast<int64_t>(right.size()) < k_) {
      return std::nullopt;
    }
    return std::make_pair(std::move(left), std::move(right));
  }

  void Split(std::vector<size_t> rows) {
    if (static_cast<int64_t>(rows.size()) >= 2 * k_) {
      const std::vector<size_t>& qi = schema_.quasi_identifiers();
      std::vector<std::pair<double, size_t>> spans;
      for (size_t attribute : qi) {
        const double span = Span(rows, attribute);
        if (span > 0) spans.emplace_back(span, attribute);
      }
      std::stable_sort(spans.begin(), spans.end(),
                       [](const auto& a, const auto& b) {
                         return a.first > b.first;
                       });
      for (const auto& [span, attribute] : spans) {
        auto halves = Cut(rows, attribute);
        if (!halves.has_value()) continue;
        rows.clear();
        rows.shrink_to_fit();
        Split(std::move(halves->first));
        Split(std::move(halves->second));
        return;
      }
    }
    EmitLeaf(rows);
  }

  void EmitLeaf(const std::vector<size_t>& rows) {
    if (rows.empty()) return;
    const size_t d = schema_.num_attributes();
    std::vector<GeneralizedValue> qi_values(d);
    for (size_t attribute : schema_.quasi_identifiers()) {
      GeneralizedValue& g = qi_values[attribute];
      std::vector<bool> seen(schema_.attribute(attribute).domain.size());
      for (size_t r : rows) seen[dataset_.value(r, attribute)] = true;
      for (ValueIndex v = 0; v < seen.size(); ++v) {
        if (seen[v]) g.categories.push_back(v);
      }
      if (schema_.attribute(attribute).kind == AttributeKind::kNumeric) {
        g.lo = g.categories.front();
        g.hi = g.categories.back();
        g.categories.clear();
      }
    }
    // One generalized row per distinct non-QI tuple, in lexicographic order.
    std::map<std::vector<ValueIndex>, int64_t> by_non_qi;
    const std::vector<size_t>& non_qi = schema_.non_quasi_identifiers();
    std::vector<ValueIndex> key(non_qi.size());
    for (size_t r : rows) {
      for (size_t i = 0; i < non_qi.size(); ++i) {
        key[i] = dataset_.value(r, non_qi[i]);
      }
      ++by_non_qi[key];
    }
    for (const auto& [tuple, count] : by_non_qi) {
      GeneralizedRow row;
      row.values = qi_values;
      for (size_t i = 0; i < non_qi.size(); ++i) {
        GeneralizedValue& g = row.values[non_qi[i]];
        if (schema_.attribute(non_qi[i]).kind == AttributeKind::kNumeric) {
          g.lo = g.hi = tuple[i];
        } else {
          g.categories = {tuple[i]};
        }
      }
      row.count = count;
      partition_.rows.push_back(std::move(row));
    }
  }

  const Dataset& dataset_;
  const Schema& schema_;
  const int64_t k_;
  AnonymizedPartition partition_;
};

ValueIndex SnapToDomain(const Schema& schema, size_t attribute, double x) {
  const size_t size = schema.attribute(attribute).domain.size();
  ValueIndex best = 0;
  double best_gap = std::abs(schema.NumericValue(attribute, 0) - x);
  for (ValueIndex v = 1; v < size; ++v) {
    const double gap = std::abs(schema.NumericValue(attribute, v) - x);
    if (gap < best_gap) {
      best = v;
      best_gap = gap;
    }
  }
  return best;
}

}  // namespace

absl::StatusOr<AnonymizedPartition> MondrianKAnonymize(const Dataset& dataset,
                                                        int64_t k) {
  if (k < 1) return absl::InvalidArgumentError("k must be >= 1");
  if (dataset.num_rows() == 0) {
    return absl::InvalidArgumentError("cannot anonymize an empty dataset");
  }
  return Mondrian(dataset, k).Run();
}

bool SatisfiesKAnonymity(const AnonymizedPartition& partition, int64_t k) {
  const std::vector<size_t>& qi = partition.schema->quasi_identifiers();
  std::map<std::vector<GeneralizedValue>, int64_t> multiplicity;
  for (const GeneralizedRow& row : partition.rows) {
    std::vector<GeneralizedValue> key;
    for (size_t attribute : qi) key.push_back(row.values[attribute]);
    multiplicity[key] += row.count;
  }
  for (const auto& [key, count] : multiplicity) {
    if (count < k) return false;
  }
  return true;
}

Dataset Reconstruct(const AnonymizedPartition& partition, Rng& rng) {
  const Schema& schema = *partition.schema;
  Dataset out(partition.schema);
  out.Reserve(static_cast<size_t>(partition.TotalCount()));
  std::vector<ValueIndex> values(schema.num_attributes());
  for (const GeneralizedRow& row : partition.rows) {
    for (int64_t c = 0; c < row.count; ++c) {
      for (size_t a = 0; a < values.size(); ++a) {
        const GeneralizedValue& g = row.values[a];
        if (schema.attribute(a).kind == AttributeKind::kCategorical) {
          values[a] = g.categories.size() == 1
                          ? g.categories[0]
                          : g.categories[rng.UniformInt(g.categories.size())];
          continue;
        }
        if (g.lo == g.hi) {
          values[a] = g.lo;
          continue;
        }
        const double lo = schema.NumericValue(a, g.lo);
        const double hi = schema.NumericValue(a, g.hi);
        const double x = (lo + hi) / 2 + (hi - lo) / 4 * rng.Gaussian();
        values[a] = SnapToDomain(schema, a, std::max(0.0, std::round(x)));
      }
      out.AppendRow(values);
    }
  }
  return out;
}

Dataset Subsample(const Dataset& dataset, double beta, Rng& rng) {
  Dataset out(dataset.schema_ptr());
  for (size_t r = 0; r < dataset.num_rows(); ++r) {
    if (rng.Bernoulli(beta)) out.AppendRow(dataset.row(r));
  }
  return out;
}

double SamplingProbability(double epsilon) { return -std::expm1(-epsilon); }

absl::StatusOr<Dataset> KAnonymity(const Dataset& dataset, int64_t k,
                                   Rng& rng) {
  if (k < 1) return absl::InvalidArgumentError("k must be >= 1");
  if (dataset.num_rows() == 0) return Dataset(dataset.schema_ptr());
  DA_ASSIGN_OR_RETURN(AnonymizedPartition partition,
                      MondrianKAnonymize(dataset, k));
  return Reconstruct(partition, rng);
}

absl::StatusOr<Dataset> DpKAnonymity(const Dataset& dataset, int64_t k,
                                     double epsilon, Rng& rng,
                                     std::optional<double> beta_override) {
  double beta;
  if (beta_override.has_value()) {
    beta = *beta_override;
    if (!(beta > 0 && beta < 1)) {
      return absl::InvalidArgumentError(
          absl::StrCat("beta must lie in (0, 1), got ", beta));
    }
  } else {
    DA_RETURN_IF_ERROR(ValidateEpsilon(epsilon));
    // Saturates to exactly 1 in double precision for eps above ~37.
    beta = SamplingProbability(epsilon);
  }
  return KAnonymity(Subsample(dataset, beta, rng), k, rng);
}

void WritePartitionCsv(const AnonymizedPartition& partition,
                       std::ostream& out) {
  const Schema& schema = *partition.schema;
  for (size_t a = 0; a < schema.num_attributes(); ++a) {
    out << schema.attribute(a).name << ',';
  }
  out << "count\n";
  for (const GeneralizedRow& row : partition.rows) {
    for (size_t a = 0; a < schema.num_attributes(); ++a) {
      const Attribute& attribute = schema.attribute(a);
      const GeneralizedValue& g = row.values[a];
      if (attribute.kind == AttributeKind::kNumeric) {
        if (g.lo == g.hi) {
          out << attribute.domain[g.lo];
        } else {
          // Quoted: the interval itself contains a comma.
          out << "\"[" << attribute.domain[g.lo] << ','
              << attribute.domain[g.hi] << "]\"";
        }
      } else {
        out << absl::StrJoin(g.categories, "|",
                             [&attribute](std::string* s, ValueIndex v) {
                               s->append(attribute.domain[v]);
                             });
      }
      out << ',';
    }
    out << row.count << '\n';
  }
}

}  // namespace da
