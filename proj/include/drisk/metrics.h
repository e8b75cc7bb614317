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

// Outcome metrics for an anonymization run: information loss (normalized
// certainty penalty), risk histograms, high-risk counts and a k-anonymity
// audit, plus their CSV/JSON renderings.

#ifndef DRISK_METRICS_H_
#define DRISK_METRICS_H_

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "drisk/dataset.h"
#include "drisk/risk_engine.h"
#include "drisk/schema_config.h"

namespace drisk {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct UtilityConfig {
  std::vector<std::string> qids;
  std::vector<double> weights;  // Parallel to qids; must sum to 1.

  // Weight 1/q on each of the q quasi-identifiers.
  static UtilityConfig Uniform(std::vector<std::string> qids);
};

struct UtilityReport {
  double ncp = 0.0;
  std::size_t suppressed_qid_cells = 0;
  std::size_t suppressed_total_cells = 0;
};

// A suppressed cell costs 1, any other cell 0; ncp is the weighted mean cost
// over the quasi-identifier columns.
absl::StatusOr<UtilityReport> Ncp(const Dataset& dataset,
                                  const UtilityConfig& utility);

// Bins are [edges[i], edges[i+1]); the last edge is always +inf.
struct Histogram {
  std::vector<double> edges;
  std::vector<std::size_t> counts;

  std::size_t Total() const;
};

// Edges need not end at infinity: a final [last, inf) bin is
// added when they do not. Edges must be strictly ascending, at least two,
// and start at a value >= 0; if the first edge is above 0 a leading
// [0, first) bin is added so the counts always cover every record.
absl::StatusOr<Histogram> RiskHistogram(const RiskReport& report,
                                        std::vector<double> edges);

std::vector<double> DefaultHistogramEdges();

struct HighRiskCount {
  std::size_t count = 0;
  double fraction = 0.0;
};

HighRiskCount CountHighRisk(const RiskReport& report, double delta);

// Size of the smallest group of records sharing all quasi-identifier values.
absl::StatusOr<std::size_t> KAnonymityAudit(const Dataset& dataset,
                                            const std::vector<std::string>& qids);

struct EvaluationReport {
  std::size_t n = 0;
  std::size_t m = 0;
  double delta = 0.0;
  double alpha = 0.0;
  double epsilon = 0.0;
  HighRiskCount high_risk_before;
  HighRiskCount high_risk_after;
  double reduction_pct = 0.0;
  // Unset when there are no quasi-identifiers.
  std::optional<double> ncp;
  std::size_t suppressed_qid_cells = 0;
  std::size_t suppressed_total_cells = 0;
  std::optional<std::size_t> k_before;
  std::optional<std::size_t> k_after;
  Histogram histogram_before;
  Histogram histogram_after;
  RiskReport risk_before;
  RiskReport risk_after;
};

// Recomputes risk on both datasets, each with its own frequencies. An empty
// `utility.qids` leaves ncp and the k audits unset.
absl::StatusOr<EvaluationReport> Evaluate(const Dataset& original,
                                          const Dataset& anonymized,
                                          const SchemaConfig& config,
                                          const UtilityConfig& utility,
                                          std::vector<double> edges,
                                          RiskOptions options = {});

std::string EvaluationToJson(const EvaluationReport& report);

// "bin_low,bin_high,count" with "inf" for the open edge.
void WriteHistogramCsv(const Histogram& histogram, std::ostream& out);

// "record_index,total,max_split_attributes". Totals use six decimals;
// multi-attribute splits are joined with ';' and a zero-risk record shows "-".
void WriteRiskCsv(const RiskReport& report,
                  const std::vector<std::string>& attribute_names,
                  std::ostream& out);

}  // namespace drisk

#endif  // DRISK_METRICS_H_
