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

// Risk-targeted value suppression.
//
// A record is high risk when its total risk strictly exceeds delta. For each
// high-risk record the cells of its maximum-contribution known set are
// replaced by the sentinel. Every decision is taken against the original
// dataset's risk report and the plan is then applied in one batch, so the
// output does not depend on the order records are processed in. There is a
// single pass: records that are still above delta afterwards are left as is.

#ifndef DRISK_SUPPRESSION_H_
#define DRISK_SUPPRESSION_H_

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "drisk/attribute_subset.h"
#include "drisk/dataset.h"
#include "drisk/risk_engine.h"
#include "drisk/schema_config.h"

namespace drisk {

struct SuppressionPlan {
  double delta = 0.0;
  // Echoed parameters of the risk computation the plan came from.
  double alpha = 0.0;
  double prune_epsilon = 0.0;
  // record index -> attributes to suppress (never empty)
  std::map<std::size_t, AttributeSubset> entries;

  std::size_t CellCount() const;
};

// Records with total > delta, ascending.
std::vector<std::size_t> IdentifyHighRisk(const RiskReport& report,
                                          double delta);

SuppressionPlan BuildSuppressionPlan(const RiskReport& report, double delta);

// Returns a new dataset with exactly the planned cells set to the sentinel.
// Cells that already hold the sentinel stay suppressed.
absl::StatusOr<Dataset> ApplyPlan(const Dataset& dataset,
                                  const SuppressionPlan& plan);

struct AnonymizationResult {
  Dataset anonymized;
  SuppressionPlan plan;
  RiskReport risk;  // Of the input, before suppression.
};

// DatasetRisk -> BuildSuppressionPlan(config delta) -> ApplyPlan.
absl::StatusOr<AnonymizationResult> Anonymize(const Dataset& dataset,
                                              const SchemaConfig& config,
                                              RiskOptions options = {});

// {"delta": d, "alpha": a, "epsilon": e,
//  "entries": [{"record": i, "attributes": [names...]}, ...]}
std::string PlanToJson(const SuppressionPlan& plan,
                       const std::vector<std::string>& attribute_names);

}  // namespace drisk

#endif  // DRISK_SUPPRESSION_H_
