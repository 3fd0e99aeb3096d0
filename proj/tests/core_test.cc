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

#include <sstream>
#include <string>
#include <vector>

#include "da/dataset.h"
#include "da/histogram.h"
#include "da/rng.h"
#include "da/schema.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace da {
namespace {

using ::da::testing::Cat;
using ::da::testing::MakeHistogram;
using ::da::testing::MakeSchema;
using ::da::testing::Vec;
using ::testing::ElementsAre;
using ::testing::HasSubstr;

TEST(SchemaTest, CellIndexIsLexicographicWithFirstAttributeMostSignificant) {
  auto schema = MakeSchema({Cat("A", 3, true), Cat("B", 2)});
  EXPECT_EQ(schema->universe_size(), 6u);
  const std::vector<ValueIndex> values = {2, 1};
  EXPECT_EQ(schema->CellIndex(values), 5u);
  EXPECT_THAT(schema->CellValues(3), ElementsAre(1, 1));
  for (uint64_t cell = 0; cell < 6; ++cell) {
    EXPECT_EQ(schema->CellIndex(schema->CellValues(cell)), cell);
  }
}

TEST(SchemaTest, QuasiIdentifierDecomposition) {
  auto schema = MakeSchema({Cat("N", 2), Cat("Q", 3, true), Cat("R", 2, true)});
  EXPECT_EQ(schema->qi_universe_size(), 6u);
  EXPECT_THAT(schema->quasi_identifiers(), ElementsAre(1, 2));
  EXPECT_THAT(schema->non_quasi_identifiers(), ElementsAre(0));
  for (uint64_t cell = 0; cell < schema->universe_size(); ++cell) {
    const uint64_t qi = schema->QiIndex(cell);
    EXPECT_LT(qi, 6u);
    EXPECT_EQ(schema->WithQiIndex(cell, qi), cell);
    for (uint64_t target = 0; target < 6; ++target) {
      const uint64_t moved = schema->WithQiIndex(cell, target);
      EXPECT_EQ(schema->QiIndex(moved), target);
      EXPECT_EQ(schema->NonQiIndex(moved), schema->NonQiIndex(cell));
    }
  }
}

TEST(SchemaTest, RejectsMalformedSchemas) {
  EXPECT_FALSE(Schema::Create({}).ok());
  Attribute empty = Cat("A", 0);
  EXPECT_FALSE(Schema::Create({empty}).ok());
  EXPECT_FALSE(Schema::Create({Cat("A", 2), Cat("A", 3)}).ok());
  Attribute duplicate_label = Cat("A", 2);
  duplicate_label.domain[1] = "0";
  EXPECT_FALSE(Schema::Create({duplicate_label}).ok());
  Attribute numeric = Cat("A", 3);
  numeric.kind = AttributeKind::kNumeric;
  numeric.domain = {"1", "5", "3"};
  EXPECT_FALSE(Schema::Create({numeric}).ok());
  numeric.domain = {"1", "x"};
  EXPECT_FALSE(Schema::Create({numeric}).ok());
}

TEST(SchemaTest, JsonRoundTrip) {
  const nlohmann::json json = nlohmann::json::parse(R"({
    "attributes": [
      {"name": "RACE", "domain": ["1", "2", "3"], "quasi_identifier": true},
      {"name": "AGE", "domain": [0, 1, 2], "kind": "numeric"}
    ]})");
  absl::StatusOr<Schema> schema = Schema::FromJson(json);
  ASSERT_TRUE(schema.ok()) << schema.status();
  EXPECT_EQ(schema->attribute(1).kind, AttributeKind::kNumeric);
  EXPECT_DOUBLE_EQ(schema->NumericValue(1, 2), 2.0);
  absl::StatusOr<Schema> again = Schema::FromJson(schema->ToJson());
  ASSERT_TRUE(again.ok());
  EXPECT_TRUE(*again == *schema);
  EXPECT_FALSE(Schema::FromJson(nlohmann::json::parse(R"({"attributes": 3})"))
                   .ok());
}

TEST(SchemaTest, WithQuasiIdentifiersKeepsDomains) {
  auto schema = MakeSchema({Cat("A", 2, true), Cat("B", 3), Cat("C", 2)});
  absl::StatusOr<Schema> moved = schema->WithQuasiIdentifiers({"B", "C"});
  ASSERT_TRUE(moved.ok());
  EXPECT_THAT(moved->quasi_identifiers(), ElementsAre(1, 2));
  EXPECT_EQ(moved->universe_size(), schema->universe_size());
  EXPECT_FALSE(schema->WithQuasiIdentifiers({"Z"}).ok());
}

TEST(DatasetTest, ParsesCsvWithBinning) {
  auto schema = MakeSchema({Cat("RACE", 3, true), Cat("AGE", 2),
                            Cat("INCTOT", 2)});
  std::istringstream csv(
      "INCTOT,AGE,RACE,EXTRA\n"
      "60000,20,1,x\n"
      "50000,80,2,y\n"
      "10,50,0,z\n");
  Binning binning;
  binning.rules["INCTOT"] = ThresholdBin{50000};
  binning.rules["AGE"] = EqualWidthBins{2};
  absl::StatusOr<Dataset> data = ParseCsv(csv, schema, &binning);
  ASSERT_TRUE(data.ok()) << data.status();
  ASSERT_EQ(data->num_rows(), 3u);
  EXPECT_THAT(Vec(data->row(0)), ElementsAre(1, 0, 1));
  // Exactly 50000 is not above the cutoff; the maximum lands in the last bin.
  EXPECT_THAT(Vec(data->row(1)), ElementsAre(2, 1, 0));
  // 50 sits on the bin edge and goes up.
  EXPECT_THAT(Vec(data->row(2)), ElementsAre(0, 1, 0));
}

TEST(DatasetTest, ReportsMissingColumnsAndUnknownValues) {
  auto schema = MakeSchema({Cat("A", 2), Cat("B", 2)});
  std::istringstream missing("A\n0\n");
  absl::StatusOr<Dataset> a = ParseCsv(missing, schema);
  ASSERT_FALSE(a.ok());
  EXPECT_THAT(a.status().message(), HasSubstr("missing column B"));
  std::istringstream unknown("A,B\n0,1\n0,7\n");
  absl::StatusOr<Dataset> b = ParseCsv(unknown, schema);
  ASSERT_FALSE(b.ok());
  EXPECT_THAT(b.status().message(), HasSubstr("not in the domain of B"));
  EXPECT_TRUE(absl::IsNotFound(LoadCsv("/nonexistent.csv", schema).status()));
}

TEST(DatasetTest, CsvRoundTrip) {
  auto schema = MakeSchema({Cat("A", 3), Cat("B", 2)});
  absl::StatusOr<Dataset> data =
      Dataset::FromRows(schema, {{0, 1}, {2, 0}, {1, 1}});
  ASSERT_TRUE(data.ok());
  std::stringstream csv;
  WriteCsv(*data, csv);
  absl::StatusOr<Dataset> again = ParseCsv(csv, schema);
  ASSERT_TRUE(again.ok());
  EXPECT_TRUE(*again == *data);
  EXPECT_FALSE(Dataset::FromRows(schema, {{3, 0}}).ok());
}

TEST(HistogramTest, BuildsCountsAndRoundTrips) {
  auto schema = MakeSchema({Cat("A", 2, true), Cat("B", 2)});
  absl::StatusOr<Dataset> data =
      Dataset::FromRows(schema, {{0, 1}, {1, 0}, {0, 1}, {1, 1}});
  ASSERT_TRUE(data.ok());
  const Histogram h = BuildHistogram(*data);
  EXPECT_THAT(Vec(h.counts()), ElementsAre(0, 2, 1, 1));
  EXPECT_EQ(h.Bound(), 2);
  EXPECT_EQ(h.Total(), 4);
  EXPECT_TRUE(BuildHistogram(HistogramToDataset(h)) == h);
  EXPECT_FALSE(Histogram::FromCounts(schema, {1, 2}).ok());
  EXPECT_FALSE(Histogram::FromCounts(schema, {1, -2, 0, 0}).ok());
}

TEST(HistogramTest, AdjacentHistogramsMoveOneRecord) {
  auto schema = MakeSchema({Cat("A", 3)});
  const Histogram h = MakeHistogram(schema, {1, 0, 2});
  const std::vector<Histogram> neighbors = AdjacentHistograms(h);
  // Two non-empty source cells, two destinations each.
  ASSERT_EQ(neighbors.size(), 4u);
  for (const Histogram& n : neighbors) {
    EXPECT_EQ(n.Total(), h.Total());
    int64_t moved = 0;
    for (size_t i = 0; i < 3; ++i) {
      EXPECT_GE(n[i], 0);
      moved += std::abs(n[i] - h[i]);
    }
    EXPECT_EQ(moved, 2);
  }
}

TEST(HistogramTest, GroupIndexPartitionsByNonQuasiIdentifiers) {
  auto schema = MakeSchema({Cat("Q", 3, true), Cat("N", 2)});
  const GroupIndex groups(*schema);
  EXPECT_EQ(groups.num_groups(), 2u);
  EXPECT_EQ(groups.group_size(), 3u);
  for (size_t g = 0; g < 2; ++g) {
    for (size_t q = 0; q < 3; ++q) {
      const uint64_t cell = groups.group(g)[q];
      EXPECT_EQ(schema->QiIndex(cell), q);
      EXPECT_EQ(groups.group_of(cell), g);
    }
  }
}

TEST(RngTest, DeterministicUnderSeed) {
  Rng a(42), b(42), c(43);
  for (int i = 0; i < 100; ++i) {
    const uint64_t x = a.NextU64();
    EXPECT_EQ(x, b.NextU64());
    (void)c.NextU64();
  }
  EXPECT_NE(Rng(1).NextU64(), Rng(2).NextU64());
  EXPECT_EQ(DeriveSeed(10, 3), 13u);
}

TEST(RngTest, UniformIntIsInRangeAndCoversIt) {
  Rng rng(7);
  std::vector<int> seen(5, 0);
  for (int i = 0; i < 10000; ++i) {
    const uint64_t v = rng.UniformInt(5);
    ASSERT_LT(v, 5u);
    ++seen[v];
  }
  for (int count : seen) EXPECT_NEAR(count, 2000, 200);
}

TEST(RngTest, LaplaceMomentsMatch) {
  Rng rng(3);
  const int n = 200000;
  double sum = 0, squares = 0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.Laplace(2.0);
    sum += x;
    squares += x * x;
  }
  // Var = 2 b^2 = 8; SE of the mean = sqrt(8 / n).
  EXPECT_NEAR(sum / n, 0, 3 * std::sqrt(8.0 / n));
  EXPECT_NEAR(squares / n, 8, 0.4);
}

}  // namespace
}  // namespace da
