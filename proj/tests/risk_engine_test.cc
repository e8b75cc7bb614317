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

#include "drisk/risk_engine.h"

#include <cmath>
#include <cstring>
#include <random>
#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "testing/fixtures.h"
#include "testing/instances.h"
#include "testing/oracle.h"

namespace drisk {
namespace {

using ::testing::ElementsAre;
using ::testing::HasSubstr;

constexpr double kTol = 1e-9;

const AttributeSubset kA = AttributeSubset::Single(0);
const AttributeSubset kB = AttributeSubset::Single(1);
const AttributeSubset kAB = AttributeSubset::Full(2);

FrequencyIndex IndexFor(const Dataset& ds, const SchemaConfig& config) {
  auto masks = EnumerateKnownSets(config);
  EXPECT_TRUE(masks.ok()) << masks.status();
  auto index = FrequencyIndex::Build(ds, *masks);
  EXPECT_TRUE(index.ok()) << index.status();
  return *std::move(index);
}

bool SameBits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

TEST(LikelihoodTest, F1Examples) {
  SchemaConfig config = testing::F1Config();
  Dataset ds = testing::F1Dataset();
  FrequencyIndex index = IndexFor(ds, config);
  EXPECT_NEAR(*Likelihood(ds, index, 0, kA, config), 0.25, kTol);
  EXPECT_NEAR(*Likelihood(ds, index, 2, kA, config), 0.5, kTol);
  EXPECT_NEAR(*Likelihood(ds, index, 0, AttributeSubset::Empty(), config),
              1.0 / 3.0, kTol);
  EXPECT_NEAR(*Likelihood(ds, index, 0, kAB, config), 0.05, kTol);
}

TEST(ConsequenceTest, F1Examples) {
  SchemaConfig config = testing::F1Config();
  Dataset ds = testing::F1Dataset();
  EXPECT_DOUBLE_EQ(Consequence(ds, 0, kB, config), 1.0);
  EXPECT_DOUBLE_EQ(Consequence(ds, 1, kB, config), 0.0);
  EXPECT_DOUBLE_EQ(Consequence(ds, 0, kA, config), 0.0);
  EXPECT_DOUBLE_EQ(Consequence(ds, 0, AttributeSubset::Empty(), config), 0.0);
}

TEST(ConsequenceTest, SentinelCarriesNoWeight) {
  SchemaConfig config = testing::F1Config();
  Dataset ds = testing::F1Dataset();
  std::vector<std::pair<std::size_t, std::size_t>> cells = {{0, 1}};
  Dataset anonymized = ds.WithSuppressed(cells);
  EXPECT_DOUBLE_EQ(Consequence(anonymized, 0, kB, config), 0.0);
}

TEST(EnumerateKnownSetsTest, PruningThresholds) {
  SchemaConfig config = testing::F1Config();
  EXPECT_THAT(*EnumerateKnownSets(config),
              ElementsAre(AttributeSubset::Empty(), kA, kB, kAB));
  config.params.prune_epsilon = 0.2;
  EXPECT_THAT(*EnumerateKnownSets(config),
              ElementsAre(AttributeSubset::Empty(), kA));
  config.params.prune_epsilon = 0.6;
  EXPECT_THAT(*EnumerateKnownSets(config), ElementsAre(AttributeSubset::Empty()));
  EXPECT_EQ(*CountKnownSets(config), 1u);
}

TEST(EnumerateKnownSetsTest, ClosedUnderSubsets) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    testing::OracleProblem p = testing::RandomProblem(rng, {.max_n = 1, .max_m = 10});
    SchemaConfig config = testing::ToConfig(p, std::pow(testing::Unit(rng), 3));
    auto masks = *EnumerateKnownSets(config);
    for (AttributeSubset s : masks) {
      EXPECT_GE(PkProduct(config, s), config.params.prune_epsilon);
      for (std::size_t j : s.Members()) {
        EXPECT_TRUE(std::binary_search(masks.begin(), masks.end(), s.Without(j)));
      }
    }
  }
}

TEST(RecordRiskTest, F1) {
  SchemaConfig config = testing::F1Config();
  Dataset ds = testing::F1Dataset();
  FrequencyIndex index = IndexFor(ds, config);
  const double expected[] = {35.0 / 6.0, 0.0, 25.0 / 3.0};
  for (std::size_t r = 0; r < 3; ++r) {
    auto risk = RecordRisk(ds, index, r, config);
    ASSERT_TRUE(risk.ok()) << risk.status();
    EXPECT_NEAR(risk->total, expected[r], kTol) << r;
    EXPECT_EQ(risk->pruned_mask_count, 0u);
  }
  EXPECT_EQ(RecordRisk(ds, index, 0, config)->max_split, kA);
  EXPECT_EQ(RecordRisk(ds, index, 2, config)->max_split, kA);
  EXPECT_NEAR(RecordRisk(ds, index, 2, config)->max_term, 5.0, kTol);
}

TEST(RecordRiskTest, SplitTermsSumToTotal) {
  SchemaConfig config = testing::F1Config();
  Dataset ds = testing::F1Dataset();
  FrequencyIndex index = IndexFor(ds, config);
  auto terms = SplitTerms(ds, index, 2, config);
  ASSERT_TRUE(terms.ok());
  ASSERT_EQ(terms->size(), 4u);
  double sum = 0.0;
  for (const auto& t : *terms) {
    sum += t.term;
    EXPECT_NEAR(t.term, t.likelihood * config.params.alpha * t.consequence, kTol);
  }
  EXPECT_NEAR(sum, 25.0 / 3.0, kTol);
}

TEST(RecordRiskTest, SingleRecordDataset) {
  SchemaConfig config = testing::F1Config();
  auto ds = Dataset::Create({"A", "B"}, {"a1", "y"}, "*");
  ASSERT_TRUE(ds.ok());
  FrequencyIndex index = IndexFor(*ds, config);
  // (1 + 0.5) * 10 * 1 from the two sets leaving B unknown.
  EXPECT_NEAR(RecordRisk(*ds, index, 0, config)->total, 15.0, kTol);
  auto report = DatasetRisk(*ds, config);
  ASSERT_TRUE(report.ok());
  EXPECT_NEAR(report->records[0].total, 15.0, kTol);
}

TEST(RecordRiskTest, ZeroWeightsGiveZeroRisk) {
  std::mt19937_64 rng(3);
  testing::OracleProblem p = testing::RandomProblem(rng);
  for (auto& a : p.attributes) a.weight = 0.0;
  SchemaConfig config = testing::ToConfig(p);
  auto report = DatasetRisk(testing::ToDataset(p), config);
  ASSERT_TRUE(report.ok());
  for (const auto& r : report->records) EXPECT_EQ(r.total, 0.0);
}

TEST(RecordRiskTest, DegeneratePruningIsAnError) {
  SchemaConfig config = testing::F1Config();
  config.params.prune_epsilon = 0.6;
  Dataset ds = testing::F1Dataset();
  FrequencyIndex index = IndexFor(ds, config);
  auto risk = RecordRisk(ds, index, 0, config);
  ASSERT_FALSE(risk.ok());
  EXPECT_EQ(risk.status().code(), absl::StatusCode::kFailedPrecondition);
  EXPECT_THAT(risk.status().message(), HasSubstr("lower prune_epsilon"));
  auto report = DatasetRisk(ds, config);
  ASSERT_FALSE(report.ok());
  EXPECT_EQ(report.status().code(), absl::StatusCode::kFailedPrecondition);
}

TEST(RecordRiskTest, RejectsMismatchedColumns) {
  SchemaConfig config = testing::F1Config();
  auto ds = Dataset::Create({"B", "A"}, {"y", "a1"}, "*");
  ASSERT_TRUE(ds.ok());
  EXPECT_EQ(DatasetRisk(*ds, config).status().code(),
            absl::StatusCode::kInvalidArgument);
}

TEST(DatasetRiskTest, F1) {
  auto report = DatasetRisk(testing::F1Dataset(), testing::F1Config());
  ASSERT_TRUE(report.ok());
  EXPECT_NEAR(report->records[0].total, 35.0 / 6.0, kTol);
  EXPECT_NEAR(report->records[1].total, 0.0, kTol);
  EXPECT_NEAR(report->records[2].total, 25.0 / 3.0, kTol);
  EXPECT_EQ(report->records[0].max_split, kA);
  EXPECT_EQ(report->records[2].max_split, kA);
  EXPECT_EQ(report->retained_mask_count, 4u);
  EXPECT_EQ(report->pruned_mask_count, 0u);
  EXPECT_NEAR(report->MaxTotal(), 25.0 / 3.0, kTol);
}

class RiskPropertyTest : public ::testing::Test {
 protected:
  std::mt19937_64 rng_{424242};
};

TEST_F(RiskPropertyTest, MatchesOracle) {
  for (int trial = 0; trial < 150; ++trial) {
    testing::OracleProblem p = testing::RandomProblem(rng_, {.max_n = 80, .max_m = 8});
    auto expected = testing::OracleRisk(p);
    auto report = DatasetRisk(testing::ToDataset(p), testing::ToConfig(p));
    ASSERT_TRUE(report.ok()) << report.status();
    for (std::size_t i = 0; i < p.rows.size(); ++i) {
      const RiskBreakdown& got = report->records[i];
      EXPECT_LE(std::abs(got.total - expected[i].total),
                kTol * std::max(1.0, std::abs(expected[i].total)));
      const double at_split = testing::OracleTerm(p, i, got.max_split.bits());
      EXPECT_LE(std::abs(at_split - expected[i].max_term),
                kTol * std::max(1.0, expected[i].max_term));
    }
  }
}

TEST_F(RiskPropertyTest, DatasetRiskMatchesRecordRiskBitwise) {
  for (int trial = 0; trial < 100; ++trial) {
    testing::OracleProblem p = testing::RandomProblem(rng_, {.max_n = 60, .max_m = 8});
    SchemaConfig config =
        testing::ToConfig(p, trial % 2 ? 0.0 : std::pow(testing::Unit(rng_), 4));
    Dataset ds = testing::ToDataset(p);
    auto report = DatasetRisk(ds, config);
    if (!report.ok()) {
      EXPECT_EQ(report.status().code(), absl::StatusCode::kFailedPrecondition);
      continue;
    }
    FrequencyIndex index = IndexFor(ds, config);
    for (std::size_t i = 0; i < ds.num_records(); ++i) {
      auto one = RecordRisk(ds, index, i, config);
      ASSERT_TRUE(one.ok());
      EXPECT_TRUE(SameBits(one->total, report->records[i].total));
      EXPECT_TRUE(SameBits(one->max_term, report->records[i].max_term));
      EXPECT_EQ(one->max_split, report->records[i].max_split);
    }
  }
}

TEST_F(RiskPropertyTest, ThreadCountDoesNotChangeResults) {
  for (int trial = 0; trial < 30; ++trial) {
    testing::OracleProblem p =
        testing::RandomProblem(rng_, {.min_n = 50, .max_n = 300, .max_m = 9});
    Dataset ds = testing::ToDataset(p);
    SchemaConfig config = testing::ToConfig(p);
    auto one = DatasetRisk(ds, config, {.threads = 1});
    auto many = DatasetRisk(ds, config, {.threads = 4});
    ASSERT_TRUE(one.ok() && many.ok());
    for (std::size_t i = 0; i < ds.num_records(); ++i) {
      EXPECT_TRUE(SameBits(one->records[i].total, many->records[i].total));
      EXPECT_EQ(one->records[i].max_split, many->records[i].max_split);
    }
  }
}

TEST_F(RiskPropertyTest, LikelihoodIsAProbability) {
  for (int trial = 0; trial < 100; ++trial) {
    testing::OracleProblem p = testing::RandomProblem(rng_, {.max_n = 30, .max_m = 6});
    SchemaConfig config = testing::ToConfig(p);
    Dataset ds = testing::ToDataset(p);
    FrequencyIndex index = IndexFor(ds, config);
    auto masks = EnumerateKnownSets(config);
    ASSERT_TRUE(masks.ok());
    for (AttributeSubset s : *masks) {
      for (std::size_t i = 0; i < ds.num_records(); ++i) {
        const double l = *Likelihood(ds, index, i, s, config);
        EXPECT_GE(l, 0.0);
        EXPECT_LE(l, 1.0);
      }
    }
  }
}

TEST_F(RiskPropertyTest, RiskIsNonnegativeAndBoundedByAlpha) {
  for (int trial = 0; trial < 100; ++trial) {
    testing::OracleProblem p = testing::RandomProblem(rng_, {.max_n = 50, .max_m = 7});
    SchemaConfig config = testing::ToConfig(p);
    auto report = DatasetRisk(testing::ToDataset(p), config);
    ASSERT_TRUE(report.ok());
    for (const auto& r : report->records) {
      EXPECT_GE(r.total, 0.0);
      EXPECT_GE(r.max_term, 0.0);
      EXPECT_LE(r.max_term, r.total * (1 + kTol));
      EXPECT_FALSE(r.max_split.empty());
    }
  }
}

}  // namespace
}  // namespace drisk
