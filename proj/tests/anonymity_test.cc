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

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "da/anonymity.h"
#include "da/dataset.h"
#include "da/histogram.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace da {
namespace {

using ::da::testing::Cat;
using ::da::testing::MakeSchema;
using ::da::testing::Num;
using ::da::testing::RandomDataset;

std::shared_ptr<const Schema> MixedSchema() {
  return MakeSchema(
      {Cat("A", 4, true), Num("B", 10, true), Cat("C", 3), Cat("D", 2, true)});
}

// Does reconstructed value v fit the generalized value g?
bool Covers(const Schema& schema, size_t attribute, const GeneralizedValue& g,
            ValueIndex v) {
  if (schema.attribute(attribute).kind == AttributeKind::kCategorical) {
    return std::find(g.categories.begin(), g.categories.end(), v) !=
           g.categories.end();
  }
  return v >= g.lo && v <= g.hi;
}

TEST(MondrianTest, OutputIsKAnonymousAndKeepsMass) {
  auto schema = MixedSchema();
  for (int64_t k : {2, 5, 10}) {
    for (uint64_t seed = 0; seed < 30; ++seed) {
      Rng rng(seed);
      const Dataset data = RandomDataset(schema, 20 + rng.UniformInt(180), rng);
      absl::StatusOr<AnonymizedPartition> partition =
          MondrianKAnonymize(data, k);
      ASSERT_TRUE(partition.ok());
      EXPECT_TRUE(SatisfiesKAnonymity(*partition, k));
      EXPECT_EQ(partition->TotalCount(),
                static_cast<int64_t>(data.num_rows()));
    }
  }
}

TEST(MondrianTest, SplitsWhenPossible) {
  auto schema = MakeSchema({Cat("A", 2, true), Cat("N", 2)});
  std::vector<std::vector<ValueIndex>> rows;
  for (int i = 0; i < 4; ++i) rows.push_back({0, 0});
  for (int i = 0; i < 4; ++i) rows.push_back({1, 1});
  absl::StatusOr<AnonymizedPartition> partition =
      MondrianKAnonymize(*Dataset::FromRows(schema, rows), 4);
  ASSERT_TRUE(partition.ok());
  ASSERT_EQ(partition->rows.size(), 2u);
  for (const GeneralizedRow& row : partition->rows) {
    EXPECT_EQ(row.count, 4);
    EXPECT_EQ(row.values[0].categories.size(), 1u);
  }
  EXPECT_FALSE(SatisfiesKAnonymity(*partition, 5));
}

TEST(MondrianTest, FewerThanKRecordsFormOneRegion) {
  auto schema = MixedSchema();
  Rng rng(1);
  const Dataset data = RandomDataset(schema, 4, rng);
  absl::StatusOr<AnonymizedPartition> partition = MondrianKAnonymize(data, 5);
  ASSERT_TRUE(partition.ok());
  std::set<std::vector<GeneralizedValue>> regions;
  for (const GeneralizedRow& row : partition->rows) {
    regions.insert({row.values[0], row.values[1], row.values[3]});
  }
  EXPECT_EQ(regions.size(), 1u);
  EXPECT_EQ(partition->TotalCount(), 4);
}

TEST(MondrianTest, RejectsBadArguments) {
  auto schema = MixedSchema();
  Rng rng(2);
  const Dataset data = RandomDataset(schema, 10, rng);
  EXPECT_FALSE(MondrianKAnonymize(data, 0).ok());
}

TEST(ReconstructTest, StaysInsideGeneralizationAndKeepsRowMass) {
  auto schema = MixedSchema();
  Rng rng(3);
  const Dataset data = RandomDataset(schema, 150, rng);
  const AnonymizedPartition partition = *MondrianKAnonymize(data, 5);
  // One generalized row at a time, so each output maps back to its row.
  int outside_numeric = 0, numeric_total = 0;
  for (const GeneralizedRow& row : partition.rows) {
    AnonymizedPartition single{partition.schema, {row}};
    const Dataset out = Reconstruct(single, rng);
    ASSERT_EQ(out.num_rows(), static_cast<size_t>(row.count));
    for (size_t r = 0; r < out.num_rows(); ++r) {
      for (size_t a = 0; a < schema->num_attributes(); ++a) {
        if (schema->attribute(a).kind == AttributeKind::kCategorical) {
          EXPECT_TRUE(Covers(*schema, a, row.values[a], out.value(r, a)));
        } else {
          ++numeric_total;
          outside_numeric += !Covers(*schema, a, row.values[a], out.value(r, a));
        }
      }
    }
  }
  // Gaussian tails can leave a numeric interval, but rarely.
  EXPECT_LT(outside_numeric, numeric_total / 4);
}

TEST(SubsampleTest, KeepsFractionBeta) {
  auto schema = MixedSchema();
  Rng rng(4);
  const Dataset data = RandomDataset(schema, 20000, rng);
  const Dataset kept = Subsample(data, 0.3, rng);
  const double n = 20000;
  EXPECT_NEAR(kept.num_rows() / n, 0.3, 3 * std::sqrt(0.3 * 0.7 / n));
  EXPECT_EQ(Subsample(data, 1.0, rng).num_rows(), data.num_rows());
  EXPECT_NEAR(SamplingProbability(std::log(2.0)), 0.5, 1e-15);
}

TEST(DpKAnonymityTest, OutputSizeAndBetaChecks) {
  auto schema = MixedSchema();
  Rng rng(5);
  const Dataset data = RandomDataset(schema, 400, rng);
  absl::StatusOr<Dataset> out = DpKAnonymity(data, 5, 1.0, rng);
  ASSERT_TRUE(out.ok());
  EXPECT_LT(out->num_rows(), data.num_rows());
  EXPECT_GT(out->num_rows(), 0u);
  EXPECT_FALSE(DpKAnonymity(data, 5, 1.0, rng, 1.0).ok());
  EXPECT_FALSE(DpKAnonymity(data, 5, 1.0, rng, 0.0).ok());
  EXPECT_FALSE(DpKAnonymity(data, 5, 0.0, rng).ok());
  // Huge epsilon keeps every record, as traditional k-anonymity does.
  EXPECT_EQ(DpKAnonymity(data, 5, 100, rng)->num_rows(), data.num_rows());
  EXPECT_EQ(KAnonymity(data, 5, rng)->num_rows(), data.num_rows());
}

TEST(WritePartitionCsvTest, Format) {
  auto schema = MakeSchema({Cat("A", 3, true), Num("B", 5, true), Cat("C", 2)});
  GeneralizedRow row;
  row.values = {GeneralizedValue{{0, 2}, 0, 0}, GeneralizedValue{{}, 1, 3},
                GeneralizedValue{{1}, 0, 0}};
  row.count = 7;
  std::ostringstream out;
  WritePartitionCsv(AnonymizedPartition{schema, {row}}, out);
  EXPECT_EQ(out.str(), "A,B,C,count\n0|2,\"[1,3]\",1,7\n");
}

}  // namespace
}  // namespace da
