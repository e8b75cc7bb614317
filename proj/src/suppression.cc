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

#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "json.hpp"

namespace drisk {

std::size_t SuppressionPlan::CellCount() const {
  std::size_t cells = 0;
  for (const auto& [record, mask] : entries) cells += mask.size();
  return cells;
}

std::vector<std::size_t> IdentifyHighRisk(const RiskReport& report,
                                          double delta) {
  std::vector<std::size_t> out;
  for (const RiskBreakdown& r : report.records) {
    if (r.total > delta) out.push_back(r.record_index);
  }
  return out;
}

SuppressionPlan BuildSuppressionPlan(const RiskReport& report, double delta) {
  SuppressionPlan plan;
  plan.delta = delta;
  for (std::size_t record : IdentifyHighRisk(report, delta)) {
    plan.entries.emplace(record, report.records[record].max_split);
  }
  return plan;
}

absl::StatusOr<Dataset> ApplyPlan(const Dataset& dataset,
                                  const SuppressionPlan& plan) {
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  cells.reserve(plan.CellCount());
  for (const auto& [record, mask] : plan.entries) {
    if (record >= dataset.num_records()) {
      return absl::OutOfRangeError(absl::StrCat(
          "plan names record ", record, " but the dataset has ",
          dataset.num_records()));
    }
    if (!mask.FitsWithin(dataset.num_attributes())) {
      return absl::OutOfRangeError(absl::StrCat(
          "plan entry for record ", record, " names a missing attribute"));
    }
    for (std::size_t j : mask.Members()) cells.emplace_back(record, j);
  }
  return dataset.WithSuppressed(cells);
}

absl::StatusOr<AnonymizationResult> Anonymize(const Dataset& dataset,
                                              const SchemaConfig& config,
                                              RiskOptions options) {
  absl::StatusOr<RiskReport> risk = DatasetRisk(dataset, config, options);
  if (!risk.ok()) return risk.status();
  SuppressionPlan plan = BuildSuppressionPlan(*risk, config.params.delta);
  plan.alpha = config.params.alpha;
  plan.prune_epsilon = config.params.prune_epsilon;
  absl::StatusOr<Dataset> anonymized = ApplyPlan(dataset, plan);
  if (!anonymized.ok()) return anonymized.status();
  return AnonymizationResult{*std::move(anonymized), std::move(plan),
                             *std::move(risk)};
}

std::string PlanToJson(const SuppressionPlan& plan,
                       const std::vector<std::string>& attribute_names) {
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (const auto& [record, mask] : plan.entries) {
    nlohmann::ordered_json names = nlohmann::ordered_json::array();
    for (std::size_t j : mask.Members()) names.push_back(attribute_names.at(j));
    entries.push_back({{"record", record}, {"attributes", std::move(names)}});
  }
  nlohmann::ordered_json root;
  root["delta"] = plan.delta;
  root["alpha"] = plan.alpha;
  root["epsilon"] = plan.prune_epsilon;
  root["entries"] = std::move(entries);
  return root.dump(2) + "\n";
}

}  // namespace drisk
