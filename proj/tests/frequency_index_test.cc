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

#include "drisk/frequency_index.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "testing/fixtures.h"
#include "testing/instances.h"

namespace drisk {
namespace {

using Group = FrequencyIndex::Group;

const AttributeSubset kNone = AttributeSubset::Empty();
const AttributeSubset kA = AttributeSubset::Single(0);
const AttributeSubset kB = AttributeSubset::Single(1);
const AttributeSubset kAB = AttributeSubset::Full(2);

std::vector<AttributeSubset> AllMasks(std::size_t m) {
  std::vector<AttributeSubset> out;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << m); ++s) {
    out.emplace_back(s);
  }
  return out;
}

FrequencyIndex BuildAll(const Dataset& ds) {
  auto masks = AllMasks(ds.num_attributes());
  auto index = FrequencyIndex::Build(ds, masks);
  EXPECT_TRUE(index.ok()) << index.status();
  return *std::move(index);
}

std::map<std::vector<std::string>, std::uint32_t> AsMap(
    const std::vector<Group>& groups) {
  std::map<std::vector<std::string>, std::uint32_t> out;
  for (const auto& g : groups) out[g.values] = g.count;
  return out;
}

TEST(FrequencyIndexTest, F1Groups) {
  Dataset ds = testing::F1Dataset();
  FrequencyIndex index = BuildAll(ds);
  EXPECT_EQ(index.num_masks(), 4u);

  auto a = index.Groups(ds, kA);
  ASSERT_TRUE(a.ok());
  using Values = std::vector<std::string>;
  EXPECT_EQ(AsMap(*a), (std::map<Values, std::uint32_t>{{{"a1"}, 2}, {{"a2"}, 1}}));

  auto none = index.Groups(ds, kNone);
  ASSERT_TRUE(none.ok());
  ASSERT_EQ(none->size(), 1u);
  EXPECT_TRUE((*none)[0].values.empty());
  EXPECT_EQ((*none)[0].count, 3u);

  auto ab = index.Groups(ds, kAB);
  ASSERT_TRUE(ab.ok());
  EXPECT_EQ(AsMap(*ab), (std::map<Values, std::uint32_t>{
                            {{"a1", "y"}, 1}, {{"a1", "n"}, 1}, {{"a2", "y"}, 1}}));
}

TEST(FrequencyIndexTest, F1Frequencies) {
  Dataset ds = testing::F1Dataset();
  FrequencyIndex index = BuildAll(ds);
  EXPECT_EQ(*index.Frequency(ds, 0, kA), 2u);
  EXPECT_EQ(*index.Frequency(ds, 2, kA), 1u);
  EXPECT_EQ(*index.Frequency(ds, 0, kB), 2u);
  EXPECT_EQ(*index.Frequency(ds, 1, kB), 1u);
  EXPECT_EQ(*index.Frequency(ds, 1, kNone), 3u);
  EXPECT_EQ(*index.Frequency(ds, 0, kAB), 1u);
}

TEST(FrequencyIndexTest, SentinelIsAnOrdinaryValue) {
  Dataset ds = testing::F1Dataset();
  std::vector<std::pair<std::size_t, std::size_t>> cells = {{0, 0}, {2, 0}};
  Dataset anonymized = ds.WithSuppressed(cells);
  FrequencyIndex index = BuildAll(anonymized);
  EXPECT_EQ(*index.Frequency(anonymized, 0, kA), 2u);
  EXPECT_EQ(*index.Frequency(anonymized, 2, kAB), 2u);
  EXPECT_EQ(*index.Frequency(anonymized, 1, kA), 1u);
}

TEST(FrequencyIndexTest, RejectsUnindexedMask) {
  Dataset ds = testing::F1Dataset();
  std::vector<AttributeSubset> masks = {kNone, kA};
  auto index = FrequencyIndex::Build(ds, masks);
  ASSERT_TRUE(index.ok());
  EXPECT_TRUE(index->Contains(kA));
  EXPECT_FALSE(index->Contains(kAB));
  auto f = index->Frequency(ds, 0, kAB);
  ASSERT_FALSE(f.ok());
  EXPECT_EQ(f.status().code(), absl::StatusCode::kFailedPrecondition);
  EXPECT_EQ(index->Frequency(ds, 7, kA).status().code(),
            absl::StatusCode::kOutOfRange);
}

TEST(FrequencyIndexTest, RejectsMaskWiderThanDataset) {
  Dataset ds = testing::F1Dataset();
  std::vector<AttributeSubset> masks = {AttributeSubset::Single(2)};
  EXPECT_FALSE(FrequencyIndex::Build(ds, masks).ok());
}

TEST(FrequencyIndexTest, ChildGroupWalk) {
  Dataset ds = testing::F1Dataset();
  FrequencyIndex index = BuildAll(ds);
  EXPECT_EQ(index.GroupSize(kNone, 0), 3u);
  auto ga = index.ChildGroup(kA, 0, ds.code(0, 0));
  ASSERT_TRUE(ga.has_value());
  EXPECT_EQ(index.GroupSize(kA, *ga), 2u);
  auto gab = index.ChildGroup(kAB, *ga, ds.code(1, 1));
  ASSERT_TRUE(gab.has_value());
  EXPECT_EQ(index.GroupSize(kAB, *gab), 1u);
  auto ga2 = index.ChildGroup(kA, 0, ds.code(2, 0));
  ASSERT_TRUE(ga2.has_value());
  EXPECT_FALSE(index.ChildGroup(kAB, *ga2, ds.code(1, 1)).has_value());
}

class FrequencyIndexPropertyTest : public ::testing::Test {
 protected:
  std::mt19937_64 rng_{20261016};
};

TEST_F(FrequencyIndexPropertyTest, CountsSumToRecordCount) {
  for (int trial = 0; trial < 100; ++trial) {
    Dataset ds = testing::ToDataset(
        testing::RandomProblem(rng_, {.max_n = 60, .max_m = 6}));
    FrequencyIndex index = BuildAll(ds);
    for (AttributeSubset mask : AllMasks(ds.num_attributes())) {
      auto groups = index.Groups(ds, mask);
      ASSERT_TRUE(groups.ok());
      std::size_t sum = 0;
      for (const auto& g : *groups) sum += g.count;
      EXPECT_EQ(sum, ds.num_records());
    }
  }
}

TEST_F(FrequencyIndexPropertyTest, MatchesRowScan) {
  for (int trial = 0; trial < 100; ++trial) {
    testing::OracleProblem p =
        testing::RandomProblem(rng_, {.max_n = 40, .max_m = 5});
    Dataset ds = testing::ToDataset(p);
    FrequencyIndex index = BuildAll(ds);
    for (AttributeSubset mask : AllMasks(ds.num_attributes())) {
      for (std::size_t i = 0; i < ds.num_records(); ++i) {
        std::uint32_t expected = 0;
        for (const auto& other : p.rows) {
          bool match = true;
          for (std::size_t j : mask.Members()) match &= other[j] == p.rows[i][j];
          expected += match;
        }
        EXPECT_EQ(*index.Frequency(ds, i, mask), expected);
      }
    }
  }
}

TEST_F(FrequencyIndexPropertyTest, InvariantUnderRowPermutation) {
  for (int trial = 0; trial < 100; ++trial) {
    testing::OracleProblem p =
        testing::RandomProblem(rng_, {.max_n = 60, .max_m = 5});
    std::vector<std::size_t> order(p.rows.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng_);
    testing::OracleProblem q = p;
    for (std::size_t i = 0; i < order.size(); ++i) q.rows[i] = p.rows[order[i]];
    Dataset dp = testing::ToDataset(p);
    Dataset dq = testing::ToDataset(q);
    FrequencyIndex ip = BuildAll(dp);
    FrequencyIndex iq = BuildAll(dq);
    for (AttributeSubset mask : AllMasks(dp.num_attributes())) {
      EXPECT_EQ(AsMap(*ip.Groups(dp, mask)), AsMap(*iq.Groups(dq, mask)));
      for (std::size_t i = 0; i < order.size(); ++i) {
        EXPECT_EQ(*iq.Frequency(dq, i, mask), *ip.Frequency(dp, order[i], mask));
      }
    }
  }
}

TEST_F(FrequencyIndexPropertyTest, SupersetsNeverIncreaseFrequency) {
  for (int trial = 0; trial < 100; ++trial) {
    Dataset ds = testing::ToDataset(
        testing::RandomProblem(rng_, {.max_n = 60, .max_m = 6}));
    FrequencyIndex index = BuildAll(ds);
    const std::size_t m = ds.num_attributes();
    for (AttributeSubset mask : AllMasks(m)) {
      for (std::size_t j = 0; j < m; ++j) {
        if (mask.contains(j)) continue;
        for (std::size_t i = 0; i < ds.num_records(); ++i) {
          EXPECT_LE(*index.Frequency(ds, i, mask.With(j)),
                    *index.Frequency(ds, i, mask));
        }
      }
    }
  }
}

}  // namespace
}  // namespace drisk
