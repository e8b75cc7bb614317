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

#include "drisk/metrics.h"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "drisk/frequency_index.h"
#include "json.hpp"

namespace drisk {
namespace {

using OrderedJson = nlohmann::ordered_json;

absl::StatusOr<std::vector<std::size_t>> QidColumns(
    const Dataset& dataset, const std::vector<std::string>& qids) {
  std::vector<std::size_t> out;
  const auto& cols = dataset.columns();
  for (const std::string& q : qids) {
    auto it = std::find(cols.begin(), cols.end(), q);
    if (it == cols.end()) {
      return absl::InvalidArgumentError(
          absl::StrCat("quasi-identifier ", q, " is not a dataset column"));
    }
    out.push_back(static_cast<std::size_t>(it - cols.begin()));
  }
  return out;
}

std::string FormatEdge(double v) {
  return std::isinf(v) ? "inf" : absl::StrFormat("%.6f", v);
}

OrderedJson HistogramJson(const Histogram& h) {
  OrderedJson bins = OrderedJson::array();
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    OrderedJson bin;
    bin["low"] = h.edges[i];
    // JSON has no infinity; the open upper edge is null.
    bin["high"] = std::isinf(h.edges[i + 1]) ? OrderedJson(nullptr)
                                             : OrderedJson(h.edges[i + 1]);
    bin["count"] = h.counts[i];
    bins.push_back(std::move(bin));
  }
  return bins;
}

OrderedJson HighRiskJson(const HighRiskCount& c) {
  return {{"count", c.count}, {"fraction", c.fraction}};
}

template <typename T>
OrderedJson OptionalJson(const std::optional<T>& v) {
  return v ? OrderedJson(*v) : OrderedJson(nullptr);
}

}  // namespace

UtilityConfig UtilityConfig::Uniform(std::vector<std::string> qids) {
  UtilityConfig u;
  const double w = qids.empty() ? 0.0 : 1.0 / static_cast<double>(qids.size());
  u.weights.assign(qids.size(), w);
  u.qids = std::move(qids);
  return u;
}

absl::StatusOr<UtilityReport> Ncp(const Dataset& dataset,
                                  const UtilityConfig& utility) {
  if (utility.qids.empty()) {
    return absl::FailedPreconditionError(
        "NCP is undefined without quasi-identifiers");
  }
  if (utility.weights.size() != utility.qids.size()) {
    return absl::InvalidArgumentError("one NCP weight is needed per qid");
  }
  double weight_sum = 0.0;
  for (double w : utility.weights) {
    if (!(w >= 0.0)) return absl::InvalidArgumentError("NCP weights must be >= 0");
    weight_sum += w;
  }
  if (std::abs(weight_sum - 1.0) > 1e-12) {
    return absl::InvalidArgumentError(
        absl::StrCat("NCP weights sum to ", weight_sum, ", not 1"));
  }
  absl::StatusOr<std::vector<std::size_t>> columns =
      QidColumns(dataset, utility.qids);
  if (!columns.ok()) return columns.status();

  const std::size_t n = dataset.num_records();
  UtilityReport report;
  report.suppressed_total_cells = dataset.CountSuppressed();
  double weighted = 0.0;
  for (std::size_t q = 0; q < utility.qids.size(); ++q) {
    const std::size_t j = (*columns)[q];
    std::size_t suppressed = 0;
    for (std::size_t r = 0; r < n; ++r) suppressed += dataset.IsSuppressed(r, j);
    report.suppressed_qid_cells += suppressed;
    weighted += utility.weights[q] * static_cast<double>(suppressed);
  }
  report.ncp = n == 0 ? 0.0 : weighted / static_cast<double>(n);
  return report;
}

std::size_t Histogram::Total() const {
  std::size_t total = 0;
  for (std::size_t c : counts) total += c;
  return total;
}

std::vector<double> DefaultHistogramEdges() {
  return {0.0, 0.01, 0.1, 0.5, 1.0, 10.0, 50.0, kInf};
}

absl::StatusOr<Histogram> RiskHistogram(const RiskReport& report,
                                        std::vector<double> edges) {
  if (edges.size() < 2) {
    return absl::InvalidArgumentError("a histogram needs at least two edges");
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (std::isnan(edges[i])) {
      return absl::InvalidArgumentError("histogram edges must not be NaN");
    }
    if (i > 0 && !(edges[i] > edges[i - 1])) {
      return absl::InvalidArgumentError("histogram edges must be ascending");
    }
  }
  if (edges.front() < 0.0) {
    return absl::InvalidArgumentError("the first histogram edge must be >= 0");
  }
  if (edges.front() > 0.0) edges.insert(edges.begin(), 0.0);
  if (!std::isinf(edges.back())) edges.push_back(kInf);

  Histogram h;
  h.counts.assign(edges.size() - 1, 0);
  for (const RiskBreakdown& r : report.records) {
    // Index of the last edge <= total.
    auto it = std::upper_bound(edges.begin(), edges.end(), r.total);
    const auto bin = static_cast<std::size_t>(it - edges.begin()) - 1;
    ++h.counts[std::min(bin, h.counts.size() - 1)];
  }
  h.edges = std::move(edges);
  return h;
}

HighRiskCount CountHighRisk(const RiskReport& report, double delta) {
  HighRiskCount c;
  for (const RiskBreakdown& r : report.records) c.count += r.total > delta;
  c.fraction = report.records.empty()
                   ? 0.0
                   : static_cast<double>(c.count) /
                         static_cast<double>(report.records.size());
  return c;
}

absl::StatusOr<std::size_t> KAnonymityAudit(
    const Dataset& dataset, const std::vector<std::string>& qids) {
  if (qids.empty()) {
    return absl::FailedPreconditionError(
        "k-anonymity audit needs at least one quasi-identifier");
  }
  absl::StatusOr<std::vector<std::size_t>> columns = QidColumns(dataset, qids);
  if (!columns.ok()) return columns.status();
  AttributeSubset mask;
  for (std::size_t j : *columns) mask = mask.With(j);
  const AttributeSubset masks[] = {mask};
  absl::StatusOr<FrequencyIndex> index = FrequencyIndex::Build(dataset, masks);
  if (!index.ok()) return index.status();
  absl::StatusOr<std::vector<FrequencyIndex::Group>> groups =
      index->Groups(dataset, mask);
  if (!groups.ok()) return groups.status();
  std::size_t k = dataset.num_records();
  for (const auto& g : *groups) k = std::min<std::size_t>(k, g.count);
  return k;
}

absl::StatusOr<EvaluationReport> Evaluate(const Dataset& original,
                                          const Dataset& anonymized,
                                          const SchemaConfig& config,
                                          const UtilityConfig& utility,
                                          std::vector<double> edges,
                                          RiskOptions options) {
  if (original.num_records() != anonymized.num_records() ||
      original.columns() != anonymized.columns()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "original (", original.num_records(), " x ", original.num_attributes(),
        ") and anonymized (", anonymized.num_records(), " x ",
        anonymized.num_attributes(), ") datasets differ in shape"));
  }
  EvaluationReport report;
  report.n = original.num_records();
  report.m = original.num_attributes();
  report.delta = config.params.delta;
  report.alpha = config.params.alpha;
  report.epsilon = config.params.prune_epsilon;

  absl::StatusOr<RiskReport> before = DatasetRisk(original, config, options);
  if (!before.ok()) return before.status();
  absl::StatusOr<RiskReport> after = DatasetRisk(anonymized, config, options);
  if (!after.ok()) return after.status();

  absl::StatusOr<Histogram> hb = RiskHistogram(*before, edges);
  if (!hb.ok()) return hb.status();
  absl::StatusOr<Histogram> ha = RiskHistogram(*after, edges);
  if (!ha.ok()) return ha.status();

  report.high_risk_before = CountHighRisk(*before, report.delta);
  report.high_risk_after = CountHighRisk(*after, report.delta);
  report.reduction_pct =
      report.high_risk_before.count == 0
          ? 0.0
          : 100.0 * (1.0 - static_cast<double>(report.high_risk_after.count) /
                               static_cast<double>(report.high_risk_before.count));
  report.suppressed_total_cells = anonymized.CountSuppressed();

  if (!utility.qids.empty()) {
    absl::StatusOr<UtilityReport> u = Ncp(anonymized, utility);
    if (!u.ok()) return u.status();
    report.ncp = u->ncp;
    report.suppressed_qid_cells = u->suppressed_qid_cells;
    absl::StatusOr<std::size_t> kb = KAnonymityAudit(original, utility.qids);
    if (!kb.ok()) return kb.status();
    absl::StatusOr<std::size_t> ka = KAnonymityAudit(anonymized, utility.qids);
    if (!ka.ok()) return ka.status();
    report.k_before = *kb;
    report.k_after = *ka;
  }
  report.histogram_before = *std::move(hb);
  report.histogram_after = *std::move(ha);
  report.risk_before = *std::move(before);
  report.risk_after = *std::move(after);
  return report;
}

std::string EvaluationToJson(const EvaluationReport& report) {
  OrderedJson root;
  root["n"] = report.n;
  root["m"] = report.m;
  root["delta"] = report.delta;
  root["alpha"] = report.alpha;
  root["epsilon"] = report.epsilon;
  root["high_risk_before"] = HighRiskJson(report.high_risk_before);
  root["high_risk_after"] = HighRiskJson(report.high_risk_after);
  root["reduction_pct"] = report.reduction_pct;
  root["ncp"] = OptionalJson(report.ncp);
  root["suppressed_qid_cells"] = report.suppressed_qid_cells;
  root["suppressed_total_cells"] = report.suppressed_total_cells;
  root["k_before"] = OptionalJson(report.k_before);
  root["k_after"] = OptionalJson(report.k_after);
  root["histogram_before"] = HistogramJson(report.histogram_before);
  root["histogram_after"] = HistogramJson(report.histogram_after);
  return root.dump(2) + "\n";
}

void WriteHistogramCsv(const Histogram& histogram, std::ostream& out) {
  out << "bin_low,bin_high,count\n";
  for (std::size_t i = 0; i < histogram.counts.size(); ++i) {
    out << FormatEdge(histogram.edges[i]) << ','
        << FormatEdge(histogram.edges[i + 1]) << ',' << histogram.counts[i]
        << '\n';
  }
}

void WriteRiskCsv(const RiskReport& report,
                  const std::vector<std::string>& attribute_names,
                  std::ostream& out) {
  out << "record_index,total,max_split_attributes\n";
  for (const RiskBreakdown& r : report.records) {
    std::string split = "-";
    if (r.total != 0.0) {
      std::vector<std::string> names;
      for (std::size_t j : r.max_split.Members()) {
        names.push_back(attribute_names.at(j));
      }
      split = absl::StrJoin(names, ";");
    }
    out << r.record_index << ',' << absl::StrFormat("%.6f", r.total) << ','
        << split << '\n';
  }
}

}  // namespace drisk
