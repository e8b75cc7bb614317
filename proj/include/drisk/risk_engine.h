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

// Record-level disclosure risk.
//
// For a record r and a known set KS (unknown set UKS = complement):
//
//   likelihood  L_KS(r)  = prod_{j in KS} PK(j) / F(r(KS))
//   consequence C_UKS(r) = sum_{j in UKS} W(j) * W(r(j))
//   term                 = (L_KS(r) * alpha) * C_UKS(r)
//   D(r)                 = sum of term over every retained known set
//
// where F(r(KS)) counts records sharing r's values on KS and a suppressed cell
// has value weight 0. Known sets are retained when their PK product is at
// least prune_epsilon; the walk over the subset lattice stops descending as
// soon as the product drops below it, which is exact because PK <= 1 makes
// the product non-increasing along supersets.
//
// Summation order is fixed so that every entry point produces bit-identical
// totals: the empty set's term first, then for each attribute j in ascending
// order the sum of the subtree rooted at {j}, itself accumulated in
// depth-first preorder (children in ascending order of the added attribute).
// Accumulation uses long double.

#ifndef DRISK_RISK_ENGINE_H_
#define DRISK_RISK_ENGINE_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "drisk/attribute_subset.h"
#include "drisk/dataset.h"
#include "drisk/frequency_index.h"
#include "drisk/schema_config.h"

namespace drisk {

// Upper bound on the number of retained known sets a computation may visit.
inline constexpr std::uint64_t kMaxKnownSets = std::uint64_t{1} << 28;

struct SplitTerm {
  AttributeSubset known;
  double likelihood = 0.0;
  double consequence = 0.0;
  double term = 0.0;  // (likelihood * alpha) * consequence
};

struct RiskBreakdown {
  std::size_t record_index = 0;
  double total = 0.0;
  // Nonempty known set with the largest term. Ties go to fewer attributes,
  // then the smaller mask value. The empty set never qualifies: suppressing
  // nothing cannot lower the risk.
  AttributeSubset max_split;
  double max_term = 0.0;
  std::uint64_t pruned_mask_count = 0;
};

struct RiskReport {
  std::vector<RiskBreakdown> records;
  std::uint64_t retained_mask_count = 0;
  std::uint64_t pruned_mask_count = 0;

  std::size_t num_records() const { return records.size(); }
  std::vector<double> Totals() const;
  double MaxTotal() const;
  double MeanTotal() const;
};

struct RiskOptions {
  // Worker threads for DatasetRisk. Zero means the hardware concurrency.
  unsigned threads = 0;
};

// Product of PK over the members of `mask`, multiplied in ascending order.
double PkProduct(const SchemaConfig& config, AttributeSubset mask);

absl::StatusOr<double> Likelihood(const Dataset& dataset,
                                  const FrequencyIndex& index,
                                  std::size_t record, AttributeSubset known,
                                  const SchemaConfig& config);

double Consequence(const Dataset& dataset, std::size_t record,
                   AttributeSubset unknown, const SchemaConfig& config);

// Every known set with PK product >= prune_epsilon, sorted by mask value.
// Fails with ResourceExhausted above kMaxKnownSets.
absl::StatusOr<std::vector<AttributeSubset>> EnumerateKnownSets(
    const SchemaConfig& config);

// Number of sets EnumerateKnownSets() would return, without materializing
// them.
absl::StatusOr<std::uint64_t> CountKnownSets(const SchemaConfig& config);

// Terms of every retained known set for one record, sorted by mask value.
absl::StatusOr<std::vector<SplitTerm>> SplitTerms(const Dataset& dataset,
                                                  const FrequencyIndex& index,
                                                  std::size_t record,
                                                  const SchemaConfig& config);

// Risk of one record. `index` must cover every retained known set. Fails with
// FailedPrecondition when pruning leaves no nonempty known set.
absl::StatusOr<RiskBreakdown> RecordRisk(const Dataset& dataset,
                                         const FrequencyIndex& index,
                                         std::size_t record,
                                         const SchemaConfig& config);

// Risk of every record. Streams over the lattice one mask at a time instead
// of materializing a FrequencyIndex, so memory stays O(m * n) regardless of
// the number of retained masks. Results equal RecordRisk() bit for bit.
absl::StatusOr<RiskReport> DatasetRisk(const Dataset& dataset,
                                       const SchemaConfig& config,
                                       RiskOptions options = {});

}  // namespace drisk

#endif  // DRISK_RISK_ENGINE_H_
