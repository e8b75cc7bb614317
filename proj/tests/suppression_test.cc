// Copyright 2026 The drisk Authors
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

#include "drisk/suppression.h"

#include <random>
#include <sstream>
#include <string>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "json.hpp"
#include "testing/fixtures.h"
#include "testing/instances.h"

namespace drisk {
namespace {

using ::testing::ElementsAre;
using ::testing::Pair;

const AttributeSubset kA = AttributeSubset::Single(0);

std::string Csv(const Dataset& ds) {
  std::ostringstream out;
  WriteCsv(ds, out);
  return out.str();
}

TEST(IdentifyHighRiskTest, StrictThreshold) {
  RiskReport report;
  for (double total : {1.0, 3.0, 3.5}) {
    report.records.push_back(testing::TotalOnly(report.records.size(), total));
  }
  EXPECT_THAT(IdentifyHighRisk(report, 3.0), ElementsAre(2u));
  EXPECT_THAT(IdentifyHighRisk(report, 0.0), ElementsAre(0u, 1u, 2u));
}

TEST(AnonymizeTest, F1) {
  auto result = Anonymize(testing::F1Dataset(), testing::F1Config());
  ASSERT_TRUE(result.ok()) << result.status();
  EXPECT_THAT(result->plan.entries, ElementsAre(Pair(0u, kA), Pair(2u, kA)));
  EXPECT_EQ(result->plan.CellCount(), 2u);
  EXPECT_EQ(Csv(result->anonymized), "A,B\n*,y\na1,n\n*,y\n");
  EXPECT_NEAR(result->risk.records[2].total, 25.0 / 3.0, 1e-9);

  auto after = DatasetRisk(result->anonymized, testing::F1Config());
  ASSERT_TRUE(after.ok());
  EXPECT_NEAR(after->records[0].total, 35.0 / 6.0, 1e-9);
  EXPECT_NEAR(after->records[1].total, 0.0, 1e-9);
  EXPECT_NEAR(after->records[2].total, 35.0 / 6.0, 1e-9);
}

TEST(AnonymizeTest, HugeDeltaChangesNothing) {
  SchemaConfig config = testing::F1Config();
  config.params.delta = 100.0;
  Dataset ds = testing::F1Dataset();
  auto result = Anonymize(ds, config);
  ASSERT_TRUE(result.ok());
  EXPECT_TRUE(result->plan.entries.empty());
  EXPECT_EQ(Csv(result->anonymized), Csv(ds));
}

TEST(PlanToJsonTest, F1) {
  auto result = Anonymize(testing::F1Dataset(), testing::F1Config());
  ASSERT_TRUE(result.ok());
  auto json = nlohmann::json::parse(PlanToJson(result->plan, {"A", "B"}));
  EXPECT_EQ(json["delta"], 3.0);
  EXPECT_EQ(json["alpha"], 10.0);
  EXPECT_EQ(json["epsilon"], 0.0);
  ASSERT_EQ(json["entries"].size(), 2u);
  EXPECT_EQ(json["entries"][0]["record"], 0);
  EXPECT_EQ(json["entries"][0]["attributes"], nlohmann::json::array({"A"}));
  EXPECT_EQ(json["entries"][1]["record"], 2);
}

TEST(ApplyPlanTest, RejectsOutOfRangeRecord) {
  SuppressionPlan plan;
  plan.entries.emplace(9, kA);
  EXPECT_EQ(ApplyPlan(testing::F1Dataset(), plan).status().code(),
            absl::StatusCode::kOutOfRange);
}

TEST(ApplyPlanTest, RejectsMissingAttribute) {
  SuppressionPlan plan;
  plan.entries.emplace(0, AttributeSubset::Single(5));
  EXPECT_EQ(ApplyPlan(testing::F1Dataset(), plan).status().code(),
            absl::StatusCode::kOutOfRange);
}

TEST(AnonymizePropertyTest, TouchesOnlyHighRiskRecords) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    testing::OracleProblem p = testing::RandomProblem(rng, {.max_n = 60, .max_m = 7});
    SchemaConfig config = testing::ToConfig(p);
    Dataset ds = testing::ToDataset(p);
    auto before = DatasetRisk(ds, config);
    ASSERT_TRUE(before.ok());
    config.params.delta = before->MeanTotal();
    auto result = Anonymize(ds, config);
    ASSERT_TRUE(result.ok());
    for (std::size_t r = 0; r < ds.num_records(); ++r) {
      const bool high = before->records[r].total > config.params.delta;
      std::size_t changed = 0;
      for (std::size_t j = 0; j < ds.num_attributes(); ++j) {
        if (result->anonymized.cell(r, j) != ds.cell(r, j)) {
          EXPECT_TRUE(result->anonymized.IsSuppressed(r, j));
          ++changed;
        }
      }
      if (high) {
        EXPECT_EQ(changed,
                  static_cast<std::size_t>(before->records[r].max_split.size()));
      } else {
        EXPECT_EQ(changed, 0u);
      }
    }
  }
}

}  // namespace
}  // namespace drisk
