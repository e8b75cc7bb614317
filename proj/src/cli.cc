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

#include "drisk/cli.h"

#include <cstdlib>
#include <fstream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>
#include <utility>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "drisk/dataset.h"
#include "drisk/metrics.h"
#include "drisk/risk_engine.h"
#include "drisk/schema_config.h"
#include "drisk/suppression.h"

namespace drisk::cli {
namespace {

struct Overrides {
  std::optional<double> delta;
  std::optional<double> alpha;
  std::optional<double> epsilon;
};

struct Invocation {
  std::string config;
  std::string input;
  std::string output;
  std::string plan;
  std::string risk_out;
  std::string histogram;
  std::string original;
  std::string anonymized;
  std::string report;
  std::string histogram_before;
  std::string histogram_after;
  std::string edges;
  Overrides overrides;
};

int ExitCodeFor(const absl::Status& status) {
  switch (status.code()) {
    case absl::StatusCode::kOk:
      return kExitOk;
    case absl::StatusCode::kNotFound:
    case absl::StatusCode::kPermissionDenied:
    case absl::StatusCode::kUnavailable:
    case absl::StatusCode::kDataLoss:
      return kExitIo;
    default:
      return kExitUsage;
  }
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::string text{std::istreambuf_iterator<char>(in),
                   std::istreambuf_iterator<char>()};
  if (in.bad()) return absl::DataLossError(absl::StrCat("error reading ", path));
  return text;
}

absl::Status WriteFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return absl::UnavailableError(absl::StrCat("cannot write ", path));
  out << content;
  out.close();
  if (!out) return absl::UnavailableError(absl::StrCat("error writing ", path));
  return absl::OkStatus();
}

absl::StatusOr<SchemaConfig> LoadConfig(const std::string& path,
                                        const Overrides& overrides) {
  absl::StatusOr<std::string> text = ReadFile(path);
  if (!text.ok()) return text.status();
  absl::StatusOr<SchemaConfig> config = ParseConfig(*text);
  if (!config.ok()) return config.status();
  if (overrides.delta) config->params.delta = *overrides.delta;
  if (overrides.alpha) config->params.alpha = *overrides.alpha;
  if (overrides.epsilon) config->params.prune_epsilon = *overrides.epsilon;
  if (absl::Status s = CheckConfig(*config); !s.ok()) return s;
  return config;
}

absl::StatusOr<Dataset> LoadDataset(const std::string& path,
                                    const SchemaConfig& config,
                                    SentinelPolicy policy, std::ostream& err) {
  absl::StatusOr<std::string> text = ReadFile(path);
  if (!text.ok()) return text.status();
  std::istringstream in(*text);
  absl::StatusOr<Dataset> ds = LoadCsv(in, config, {.sentinel_policy = policy});
  if (!ds.ok()) {
    return absl::Status(ds.status().code(),
                        absl::StrCat(path, ": ", ds.status().message()));
  }
  if (ds->empty_cell_count() > 0) {
    err << "warning: " << path << ": " << ds->empty_cell_count()
        << " empty cells read as the empty category\n";
  }
  err << "loaded " << path << ": " << ds->num_records() << " records, "
      << ds->num_attributes() << " attributes\n";
  return ds;
}

absl::StatusOr<std::vector<double>> ParseEdges(const std::string& spec) {
  if (spec.empty()) return DefaultHistogramEdges();
  std::vector<double> edges;
  for (absl::string_view part : absl::StrSplit(spec, ',')) {
    part = absl::StripAsciiWhitespace(part);
    double v = 0.0;
    if (!absl::SimpleAtod(part, &v)) {
      return absl::InvalidArgumentError(
          absl::StrCat("bad histogram edge \"", part, "\""));
    }
    edges.push_back(v);
  }
  return edges;
}

absl::StatusOr<RiskOptions> OptionsFromEnvironment() {
  RiskOptions options;
  const char* env = std::getenv("TOOL_THREADS");
  if (env == nullptr || *env == '\0') return options;
  int threads = 0;
  if (!absl::SimpleAtoi(env, &threads) || threads <= 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("TOOL_THREADS must be a positive integer, got \"", env,
                     "\""));
  }
  options.threads = static_cast<unsigned>(threads);
  return options;
}

std::string RenderRisk(const RiskReport& report, const SchemaConfig& config) {
  std::ostringstream out;
  WriteRiskCsv(report, config.AttributeNames(), out);
  return out.str();
}

absl::Status RunAssess(const Invocation& inv, std::ostream& err) {
  absl::StatusOr<SchemaConfig> config = LoadConfig(inv.config, inv.overrides);
  if (!config.ok()) return config.status();
  absl::StatusOr<std::vector<double>> edges = ParseEdges(inv.edges);
  if (!edges.ok()) return edges.status();
  absl::StatusOr<RiskOptions> options = OptionsFromEnvironment();
  if (!options.ok()) return options.status();
  absl::StatusOr<Dataset> ds =
      LoadDataset(inv.input, *config, SentinelPolicy::kReject, err);
  if (!ds.ok()) return ds.status();

  absl::StatusOr<RiskReport> risk = DatasetRisk(*ds, *config, *options);
  if (!risk.ok()) return risk.status();
  err << "assessed " << risk->num_records() << " records over "
      << risk->retained_mask_count << " known sets ("
      << risk->pruned_mask_count << " pruned)\n";

  if (!inv.histogram.empty()) {
    absl::StatusOr<Histogram> h = RiskHistogram(*risk, *edges);
    if (!h.ok()) return h.status();
    std::ostringstream out;
    WriteHistogramCsv(*h, out);
    if (absl::Status s = WriteFile(inv.histogram, out.str()); !s.ok()) return s;
  }
  return WriteFile(inv.risk_out, RenderRisk(*risk, *config));
}

absl::Status RunAnonymize(const Invocation& inv, std::ostream& err) {
  absl::StatusOr<SchemaConfig> config = LoadConfig(inv.config, inv.overrides);
  if (!config.ok()) return config.status();
  absl::StatusOr<RiskOptions> options = OptionsFromEnvironment();
  if (!options.ok()) return options.status();
  absl::StatusOr<Dataset> ds =
      LoadDataset(inv.input, *config, SentinelPolicy::kReject, err);
  if (!ds.ok()) return ds.status();

  absl::StatusOr<AnonymizationResult> result = Anonymize(*ds, *config, *options);
  if (!result.ok()) return result.status();
  err << "suppressed " << result->plan.CellCount() << " cells in "
      << result->plan.entries.size() << " high-risk records (delta "
      << config->params.delta << ")\n";

  std::ostringstream csv;
  WriteCsv(result->anonymized, csv);
  if (absl::Status s = WriteFile(inv.output, csv.str()); !s.ok()) return s;
  if (absl::Status s = WriteFile(
          inv.plan, PlanToJson(result->plan, config->AttributeNames()));
      !s.ok()) {
    return s;
  }
  return WriteFile(inv.risk_out, RenderRisk(result->risk, *config));
}

absl::Status RunEvaluate(const Invocation& inv, std::ostream& err) {
  absl::StatusOr<SchemaConfig> config = LoadConfig(inv.config, inv.overrides);
  if (!config.ok()) return config.status();
  absl::StatusOr<std::vector<double>> edges = ParseEdges(inv.edges);
  if (!edges.ok()) return edges.status();
  absl::StatusOr<RiskOptions> options = OptionsFromEnvironment();
  if (!options.ok()) return options.status();
  absl::StatusOr<Dataset> original =
      LoadDataset(inv.original, *config, SentinelPolicy::kReject, err);
  if (!original.ok()) return original.status();
  absl::StatusOr<Dataset> anonymized = LoadDataset(
      inv.anonymized, *config, SentinelPolicy::kAcceptAsSuppressed, err);
  if (!anonymized.ok()) return anonymized.status();

  std::vector<std::string> qids = DeriveQids(*config);
  if (qids.empty()) {
    err << "warning: no quasi-identifiers selected; ncp and k are omitted\n";
  }
  absl::StatusOr<EvaluationReport> report =
      Evaluate(*original, *anonymized, *config,
               UtilityConfig::Uniform(std::move(qids)), *edges, *options);
  if (!report.ok()) return report.status();
  err << "high-risk records: " << report->high_risk_before.count << " -> "
      << report->high_risk_after.count << "\n";

  if (!inv.histogram_before.empty()) {
    std::ostringstream out;
    WriteHistogramCsv(report->histogram_before, out);
    if (absl::Status s = WriteFile(inv.histogram_before, out.str()); !s.ok()) {
      return s;
    }
  }
  if (!inv.histogram_after.empty()) {
    std::ostringstream out;
    WriteHistogramCsv(report->histogram_after, out);
    if (absl::Status s = WriteFile(inv.histogram_after, out.str()); !s.ok()) {
      return s;
    }
  }
  return WriteFile(inv.report, EvaluationToJson(*report));
}

void AddOverrides(CLI::App* sub, Overrides& o) {
  sub->add_option("--delta", o.delta, "High-risk threshold (overrides config)");
  sub->add_option("--alpha", o.alpha, "Consequence coefficient (overrides config)");
  sub->add_option("--epsilon", o.epsilon,
                  "Known-set pruning threshold (overrides config)");
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Record-level disclosure risk scoring and targeted suppression",
               "drisk"};
  app.require_subcommand(1);
  Invocation inv;

  CLI::App* assess = app.add_subcommand("assess", "Score every record");
  assess->add_option("--config", inv.config, "Config JSON")->required();
  assess->add_option("--input", inv.input, "Input CSV")->required();
  assess->add_option("--risk-out", inv.risk_out, "Per-record risk CSV")
      ->required();
  assess->add_option("--histogram", inv.histogram, "Risk histogram CSV");
  assess->add_option("--edges", inv.edges, "Comma-separated histogram edges");
  AddOverrides(assess, inv.overrides);

  CLI::App* anonymize =
      app.add_subcommand("anonymize", "Suppress values of high-risk records");
  anonymize->add_option("--config", inv.config, "Config JSON")->required();
  anonymize->add_option("--input", inv.input, "Input CSV")->required();
  anonymize->add_option("--output", inv.output, "Anonymized CSV")->required();
  anonymize->add_option("--plan", inv.plan, "Suppression plan JSON")->required();
  anonymize->add_option("--risk-out", inv.risk_out, "Pre-suppression risk CSV")
      ->required();
  AddOverrides(anonymize, inv.overrides);

  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "Compare risk and utility of original and anonymized data");
  evaluate->add_option("--config", inv.config, "Config JSON")->required();
  evaluate->add_option("--original", inv.original, "Original CSV")->required();
  evaluate->add_option("--anonymized", inv.anonymized, "Anonymized CSV")
      ->required();
  evaluate->add_option("--report", inv.report, "Evaluation report JSON")
      ->required();
  evaluate->add_option("--histogram-before", inv.histogram_before,
                       "Histogram CSV of the original risks");
  evaluate->add_option("--histogram-after", inv.histogram_after,
                       "Histogram CSV of the anonymized risks");
  evaluate->add_option("--edges", inv.edges, "Comma-separated histogram edges");
  AddOverrides(evaluate, inv.overrides);

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.push_back("drisk");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
      app.exit(e, out, err);
      return kExitOk;
    }
    app.exit(e, err, err);
    return kExitUsage;
  }

  absl::Status status;
  if (assess->parsed()) {
    status = RunAssess(inv, err);
  } else if (anonymize->parsed()) {
    status = RunAnonymize(inv, err);
  } else {
    status = RunEvaluate(inv, err);
  }
  if (!status.ok()) err << "error: " << status.message() << "\n";
  return ExitCodeFor(status);
}

}  // namespace drisk::cli
