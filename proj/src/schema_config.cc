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

#include "drisk/schema_config.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <utility>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "drisk/attribute_subset.h"
#include "json.hpp"

namespace drisk {
namespace {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

// Thrown inside the parser and converted to a status at the boundary.
struct LayoutError {
  std::string message;
};

void RejectUnknownKeys(const Json& object, std::initializer_list<const char*> known,
                       absl::string_view where) {
  for (const auto& [key, value] : object.items()) {
    bool found = std::any_of(known.begin(), known.end(),
                             [&](const char* k) { return key == k; });
    if (!found) {
      throw LayoutError{absl::StrCat("unknown field \"", key, "\" in ", where)};
    }
  }
}

const Json& RequireObject(const Json& value, absl::string_view where) {
  if (!value.is_object()) {
    throw LayoutError{absl::StrCat(where, " must be a JSON object")};
  }
  return value;
}

double ReadNumber(const Json& object, const char* key, absl::string_view where) {
  auto it = object.find(key);
  if (it == object.end()) {
    throw LayoutError{absl::StrCat("missing field \"", key, "\" in ", where)};
  }
  if (!it->is_number()) {
    throw LayoutError{absl::StrCat("field \"", key, "\" in ", where,
                                   " must be a number")};
  }
  return it->get<double>();
}

double ReadNumberOr(const Json& object, const char* key, absl::string_view where,
                    double fallback) {
  return object.contains(key) ? ReadNumber(object, key, where) : fallback;
}

std::string ReadString(const Json& value, absl::string_view where) {
  if (!value.is_string()) {
    throw LayoutError{absl::StrCat(where, " must be a string")};
  }
  return value.get<std::string>();
}

AttributeSpec ReadAttribute(const Json& value, std::size_t position) {
  const std::string where = absl::StrCat("attributes[", position, "]");
  RequireObject(value, where);
  RejectUnknownKeys(value,
                    {"name", "publicly_known_prob", "sensitivity_weight",
                     "value_weights", "default_value_weight"},
                    where);
  AttributeSpec spec;
  if (!value.contains("name")) {
    throw LayoutError{absl::StrCat("missing field \"name\" in ", where)};
  }
  spec.name = ReadString(value["name"], absl::StrCat(where, ".name"));
  spec.publicly_known_prob = ReadNumber(value, "publicly_known_prob", where);
  spec.sensitivity_weight = ReadNumber(value, "sensitivity_weight", where);
  spec.default_value_weight =
      ReadNumberOr(value, "default_value_weight", where, 1.0);
  if (auto it = value.find("value_weights"); it != value.end()) {
    const std::string vw_where = absl::StrCat(where, ".value_weights");
    RequireObject(*it, vw_where);
    for (const auto& [category, weight] : it->items()) {
      if (!weight.is_number()) {
        throw LayoutError{absl::StrCat(vw_where, "[\"", category,
                                       "\"] must be a number")};
      }
      spec.value_weights.emplace(category, weight.get<double>());
    }
  }
  return spec;
}

// nlohmann reports a byte offset; turn it into a 1-based line and column.
std::pair<std::size_t, std::size_t> LineAndColumn(std::string_view text,
                                                  std::size_t byte) {
  byte = std::min(byte, text.size());
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i + 1 < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

bool InUnitInterval(double v) { return v >= 0.0 && v <= 1.0; }

}  // namespace

double AttributeSpec::ValueWeight(std::string_view value) const {
  auto it = value_weights.find(value);
  return it == value_weights.end() ? default_value_weight : it->second;
}

double AttributeSpec::MaxValueWeight() const {
  double best = default_value_weight;
  for (const auto& [value, weight] : value_weights) best = std::max(best, weight);
  return best;
}

std::optional<std::size_t> SchemaConfig::IndexOf(std::string_view name) const {
  for (std::size_t j = 0; j < attributes.size(); ++j) {
    if (attributes[j].name == name) return j;
  }
  return std::nullopt;
}

std::vector<std::string> SchemaConfig::AttributeNames() const {
  std::vector<std::string> names;
  names.reserve(attributes.size());
  for (const auto& a : attributes) names.push_back(a.name);
  return names;
}

absl::StatusOr<SchemaConfig> ParseConfig(std::string_view text) {
  Json root;
  try {
    root = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    auto [line, column] = LineAndColumn(text, e.byte);
    return absl::InvalidArgumentError(absl::StrCat(
        "config parse error at line ", line, ", column ", column, ": ",
        e.what()));
  }

  try {
    RequireObject(root, "config");
    RejectUnknownKeys(root, {"attributes", "params", "qids", "qid_threshold"},
                      "config");
    SchemaConfig config;

    if (!root.contains("attributes") || !root["attributes"].is_array()) {
      throw LayoutError{"config requires an \"attributes\" array"};
    }
    const Json& attributes = root["attributes"];
    for (std::size_t i = 0; i < attributes.size(); ++i) {
      config.attributes.push_back(ReadAttribute(attributes[i], i));
    }

    if (!root.contains("params")) {
      throw LayoutError{"config requires a \"params\" object"};
    }
    const Json& params = RequireObject(root["params"], "params");
    RejectUnknownKeys(
        params, {"alpha", "delta", "prune_epsilon", "suppression_sentinel"},
        "params");
    config.params.alpha = ReadNumber(params, "alpha", "params");
    config.params.delta = ReadNumber(params, "delta", "params");
    config.params.prune_epsilon =
        ReadNumberOr(params, "prune_epsilon", "params", 0.0);
    if (params.contains("suppression_sentinel")) {
      config.params.suppression_sentinel = ReadString(
          params["suppression_sentinel"], "params.suppression_sentinel");
    }

    if (root.contains("qids")) {
      const Json& qids = root["qids"];
      if (!qids.is_array()) throw LayoutError{"\"qids\" must be an array"};
      std::vector<std::string> names;
      for (std::size_t i = 0; i < qids.size(); ++i) {
        names.push_back(ReadString(qids[i], absl::StrCat("qids[", i, "]")));
      }
      config.qids = std::move(names);
    }
    config.qid_threshold = ReadNumberOr(root, "qid_threshold", "config", 0.01);
    return config;
  } catch (const LayoutError& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("config validation error: ", e.message));
  }
}

std::string SerializeConfig(const SchemaConfig& config) {
  OrderedJson root;
  OrderedJson attributes = OrderedJson::array();
  for (const auto& a : config.attributes) {
    OrderedJson spec;
    spec["name"] = a.name;
    spec["publicly_known_prob"] = a.publicly_known_prob;
    spec["sensitivity_weight"] = a.sensitivity_weight;
    OrderedJson weights = OrderedJson::object();
    for (const auto& [value, weight] : a.value_weights) weights[value] = weight;
    spec["value_weights"] = std::move(weights);
    spec["default_value_weight"] = a.default_value_weight;
    attributes.push_back(std::move(spec));
  }
  root["attributes"] = std::move(attributes);
  root["params"] = {
      {"alpha", config.params.alpha},
      {"delta", config.params.delta},
      {"prune_epsilon", config.params.prune_epsilon},
      {"suppression_sentinel", config.params.suppression_sentinel},
  };
  if (config.qids) root["qids"] = *config.qids;
  root["qid_threshold"] = config.qid_threshold;
  return root.dump(2) + "\n";
}

std::vector<Violation> ValidateConfig(const SchemaConfig& config) {
  std::vector<Violation> out;
  auto add = [&out](std::string rule, std::string attribute,
                    std::string message) {
    out.push_back({std::move(rule), std::move(attribute), std::move(message)});
  };

  const std::size_t m = config.attributes.size();
  if (m == 0) {
    add("attribute_count", "", "schema must declare at least one attribute");
  } else if (m > kMaxAttributes) {
    add("attribute_count", "",
        absl::StrCat("schema declares ", m, " attributes; at most ",
                     kMaxAttributes, " are supported"));
  }

  const std::string& sentinel = config.params.suppression_sentinel;
  std::set<std::string, std::less<>> seen;
  for (const auto& a : config.attributes) {
    if (a.name.empty()) add("empty_name", "", "attribute name must be nonempty");
    if (!seen.insert(a.name).second) {
      add("duplicate_attribute", a.name, "duplicate attribute");
    }
    if (!InUnitInterval(a.publicly_known_prob)) {
      add("publicly_known_prob_range", a.name,
          "publicly_known_prob must lie in [0, 1]");
    }
    if (!InUnitInterval(a.sensitivity_weight)) {
      add("sensitivity_weight_range", a.name,
          "sensitivity_weight must lie in [0, 1]");
    }
    if (!InUnitInterval(a.default_value_weight)) {
      add("default_value_weight_range", a.name,
          "default_value_weight must lie in [0, 1]");
    }
    for (const auto& [value, weight] : a.value_weights) {
      if (!InUnitInterval(weight)) {
        add("value_weight_range", a.name,
            absl::StrCat("weight of value \"", value, "\" must lie in [0, 1]"));
      }
      if (!sentinel.empty() && value == sentinel) {
        add("sentinel_collision", a.name,
            absl::StrCat("value \"", value,
                         "\" collides with the suppression sentinel"));
      }
    }
  }

  const RiskParams& p = config.params;
  // Written as !(x > 1) so NaN is rejected too.
  if (!(p.alpha > 1.0) || std::isinf(p.alpha)) {
    add("alpha_range", "", "alpha must exceed 1");
  }
  if (!(p.delta >= 0.0)) add("delta_range", "", "delta must be nonnegative");
  if (!InUnitInterval(p.prune_epsilon)) {
    add("prune_epsilon_range", "", "prune_epsilon must lie in [0, 1]");
  }
  if (sentinel.empty()) {
    add("sentinel_empty", "", "suppression_sentinel must be nonempty");
  }
  if (!InUnitInterval(config.qid_threshold)) {
    add("qid_threshold_range", "", "qid_threshold must lie in [0, 1]");
  }
  if (config.qids) {
    for (const auto& q : *config.qids) {
      if (!config.IndexOf(q)) {
        add("unknown_qid", q, absl::StrCat("qid \"", q, "\" is not an attribute"));
      }
    }
  }
  return out;
}

absl::Status CheckConfig(const SchemaConfig& config) {
  std::vector<Violation> violations = ValidateConfig(config);
  if (violations.empty()) return absl::OkStatus();
  std::vector<std::string> lines;
  for (const auto& v : violations) {
    lines.push_back(v.attribute.empty()
                        ? absl::StrCat("[", v.rule, "] ", v.message)
                        : absl::StrCat("[", v.rule, "] ", v.attribute, ": ",
                                       v.message));
  }
  return absl::InvalidArgumentError(
      absl::StrCat("invalid config: ", absl::StrJoin(lines, "; ")));
}

std::vector<std::string> DeriveQids(const SchemaConfig& config) {
  std::vector<std::string> out;
  for (const auto& a : config.attributes) {
    const bool selected =
        config.qids
            ? std::find(config.qids->begin(), config.qids->end(), a.name) !=
                  config.qids->end()
            : a.publicly_known_prob > config.qid_threshold;
    if (selected) out.push_back(a.name);
  }
  return out;
}

}  // namespace drisk
