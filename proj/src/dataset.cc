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

#include "drisk/dataset.h"

#include <algorithm>
#include <istream>
#include <ostream>
#include <utility>

#include "absl/container/flat_hash_map.h"
#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "drisk/csv.h"

namespace drisk {

absl::StatusOr<Dataset> Dataset::Create(std::vector<std::string> columns,
                                        std::vector<std::string> cells,
                                        std::string sentinel) {
  if (columns.empty()) {
    return absl::InvalidArgumentError("dataset needs at least one column");
  }
  if (cells.size() % columns.size() != 0) {
    return absl::InvalidArgumentError(absl::StrCat(
        "cell count ", cells.size(), " is not a multiple of the column count ",
        columns.size()));
  }
  Dataset ds;
  ds.num_records_ = cells.size() / columns.size();
  ds.columns_ = std::move(columns);
  ds.cells_ = std::move(cells);
  ds.sentinel_ = std::move(sentinel);
  ds.Encode();
  return ds;
}

void Dataset::Encode() {
  const std::size_t m = columns_.size();
  codes_.assign(m, std::vector<std::uint32_t>(num_records_));
  dictionary_.assign(m, {});
  empty_cell_count_ = static_cast<std::size_t>(
      std::count(cells_.begin(), cells_.end(), std::string()));
  // Codes are assigned in order of first appearance, so encoding is a pure
  // function of the cell contents.
  for (std::size_t j = 0; j < m; ++j) {
    absl::flat_hash_map<std::string_view, std::uint32_t> lookup;
    for (std::size_t r = 0; r < num_records_; ++r) {
      const std::string& value = cells_[r * m + j];
      auto [it, inserted] = lookup.try_emplace(
          value, static_cast<std::uint32_t>(dictionary_[j].size()));
      if (inserted) dictionary_[j].push_back(value);
      codes_[j][r] = it->second;
    }
  }
}

std::size_t Dataset::CountSuppressed() const {
  return static_cast<std::size_t>(
      std::count(cells_.begin(), cells_.end(), sentinel_));
}

Dataset Dataset::WithSuppressed(
    std::span<const std::pair<std::size_t, std::size_t>> cells) const {
  Dataset out;
  out.columns_ = columns_;
  out.sentinel_ = sentinel_;
  out.num_records_ = num_records_;
  out.cells_ = cells_;
  for (const auto& [record, attribute] : cells) {
    out.cells_[record * columns_.size() + attribute] = sentinel_;
  }
  out.Encode();
  return out;
}

absl::StatusOr<Dataset> LoadCsv(std::istream& in, const SchemaConfig& config,
                                LoadOptions options) {
  absl::StatusOr<std::vector<csv::Record>> records = csv::ReadAll(in);
  if (!records.ok()) return records.status();
  if (records->empty()) {
    return absl::InvalidArgumentError("CSV input has no header row");
  }

  const std::size_t m = config.attribute_count();
  const csv::Record& header = records->front();

  // header position -> schema position
  std::vector<std::size_t> position(header.fields.size());
  std::vector<bool> present(m, false);
  std::vector<std::string> unknown;
  for (std::size_t c = 0; c < header.fields.size(); ++c) {
    std::optional<std::size_t> j = config.IndexOf(header.fields[c]);
    if (!j) {
      unknown.push_back(header.fields[c]);
      continue;
    }
    if (present[*j]) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate column ", header.fields[c]));
    }
    present[*j] = true;
    position[c] = *j;
  }
  std::vector<std::string> missing;
  for (std::size_t j = 0; j < m; ++j) {
    if (!present[j]) missing.push_back(config.attributes[j].name);
  }
  if (!missing.empty() || !unknown.empty()) {
    std::vector<std::string> parts;
    if (!missing.empty()) {
      parts.push_back(absl::StrCat("missing column ", absl::StrJoin(missing, ", ")));
    }
    if (!unknown.empty()) {
      parts.push_back(absl::StrCat("unknown column ", absl::StrJoin(unknown, ", ")));
    }
    return absl::InvalidArgumentError(
        absl::StrCat("CSV header does not match schema: ",
                     absl::StrJoin(parts, "; ")));
  }

  const std::size_t n = records->size() - 1;
  if (n == 0) return absl::InvalidArgumentError("CSV input has no data rows");

  const std::string& sentinel = config.params.suppression_sentinel;
  std::vector<std::string> cells(n * m);
  for (std::size_t r = 0; r < n; ++r) {
    csv::Record& row = (*records)[r + 1];
    if (row.fields.size() != m) {
      return absl::InvalidArgumentError(
          absl::StrCat("CSV line ", row.line, ": expected ", m,
                       " fields, found ", row.fields.size()));
    }
    for (std::size_t c = 0; c < m; ++c) {
      std::string& value = row.fields[c];
      if (value == sentinel &&
          options.sentinel_policy == SentinelPolicy::kReject) {
        return absl::InvalidArgumentError(absl::StrCat(
            "CSV line ", row.line, ": sentinel collision: column ",
            header.fields[c], " holds the suppression sentinel \"", sentinel,
            "\""));
      }
      cells[r * m + position[c]] = std::move(value);
    }
  }

  return Dataset::Create(config.AttributeNames(), std::move(cells), sentinel);
}

void WriteCsv(const Dataset& dataset, std::ostream& out) {
  csv::WriteRow(out, dataset.columns());
  for (std::size_t r = 0; r < dataset.num_records(); ++r) {
    csv::WriteRow(out, dataset.row(r));
  }
}

}  // namespace drisk
