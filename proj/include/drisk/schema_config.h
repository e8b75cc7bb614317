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

// Attribute schema and risk parameters.
//
// A config file is a JSON object:
//
//   {
//     "attributes": [
//       {"name": "Dropout", "publicly_known_prob": 0.005,
//        "sensitivity_weight": 1, "value_weights": {"Yes": 1, "No": 0},
//        "default_value_weight": 1},
//       ...
//     ],
//     "params": {"alpha": 100, "delta": 0.01, "prune_epsilon": 0,
//                "suppression_sentinel": "*"},
//     "qids": ["Age", "Gender"],
//     "qid_threshold": 0.01
//   }
//
// "qids", "qid_threshold", "value_weights", "default_value_weight",
// "prune_epsilon" and "suppression_sentinel" are optional. The order of
// "attributes" fixes each attribute's bit position in an AttributeSubset.

#ifndef DRISK_SCHEMA_CONFIG_H_
#define DRISK_SCHEMA_CONFIG_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace drisk {

struct AttributeSpec {
  std::string name;
  // Probability that an adversary knows this attribute about a victim.
  double publicly_known_prob = 0.0;
  double sensitivity_weight = 0.0;
  std::map<std::string, double, std::less<>> value_weights;
  // Weight of any value not listed in `value_weights`.
  double default_value_weight = 1.0;

  double ValueWeight(std::string_view value) const;
  // Largest weight any value of this attribute can carry.
  double MaxValueWeight() const;

  friend bool operator==(const AttributeSpec&, const AttributeSpec&) = default;
};

struct RiskParams {
  double alpha = 100.0;
  double delta = 0.01;
  // Known sets whose publicly-known probability product falls below this are
  // skipped. Zero keeps every subset.
  double prune_epsilon = 0.0;
  std::string suppression_sentinel = "*";

  friend bool operator==(const RiskParams&, const RiskParams&) = default;
};

struct SchemaConfig {
  std::vector<AttributeSpec> attributes;
  RiskParams params;
  std::optional<std::vector<std::string>> qids;
  double qid_threshold = 0.01;

  std::size_t attribute_count() const { return attributes.size(); }
  std::optional<std::size_t> IndexOf(std::string_view name) const;
  std::vector<std::string> AttributeNames() const;

  friend bool operator==(const SchemaConfig&, const SchemaConfig&) = default;
};

struct Violation {
  std::string rule;       // Stable identifier, e.g. "alpha_range".
  std::string attribute;  // Empty for schema-wide rules.
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

// Parses a config document and applies defaults. Does not run
// ValidateConfig(); range checks are reported there.
absl::StatusOr<SchemaConfig> ParseConfig(std::string_view text);

// Inverse of ParseConfig(). Every optional field is written explicitly.
std::string SerializeConfig(const SchemaConfig& config);

// Returns every broken invariant. An empty result means the config is valid.
std::vector<Violation> ValidateConfig(const SchemaConfig& config);

// ValidateConfig() folded into a single InvalidArgument status.
absl::Status CheckConfig(const SchemaConfig& config);

// Quasi-identifiers in declaration order: the explicit "qids" list when
// present, otherwise every attribute whose publicly-known probability is
// strictly greater than `qid_threshold`. May be empty, in which case NCP is
// undefined and callers should warn.
std::vector<std::string> DeriveQids(const SchemaConfig& config);

}  // namespace drisk

#endif  // DRISK_SCHEMA_CONFIG_H_
