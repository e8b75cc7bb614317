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

#ifndef DRISK_DATASET_H_
#define DRISK_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "drisk/schema_config.h"

namespace drisk {

// Immutable n x m table of categorical values. Column j is schema attribute j.
// A cell equal to the sentinel is suppressed. Every column is also dictionary
// encoded so that frequency queries run over dense integer codes; the sentinel,
// when present, is an ordinary code of its column.
class Dataset {
 public:
  static absl::StatusOr<Dataset> Create(std::vector<std::string> columns,
                                        std::vector<std::string> cells,
                                        std::string sentinel);

  std::size_t num_records() const { return num_records_; }
  std::size_t num_attributes() const { return columns_.size(); }
  const std::vector<std::string>& columns() const { return columns_; }
  const std::string& sentinel() const { return sentinel_; }

  const std::string& cell(std::size_t record, std::size_t attribute) const {
    return cells_[record * columns_.size() + attribute];
  }
  std::span<const std::string> row(std::size_t record) const {
    return {cells_.data() + record * columns_.size(), columns_.size()};
  }
  bool IsSuppressed(std::size_t record, std::size_t attribute) const {
    return cell(record, attribute) == sentinel_;
  }
  std::size_t CountSuppressed() const;

  // Dense code of a cell; codes of column j lie in [0, cardinality(j)).
  std::uint32_t code(std::size_t record, std::size_t attribute) const {
    return codes_[attribute][record];
  }
  std::span<const std::uint32_t> column_codes(std::size_t attribute) const {
    return codes_[attribute];
  }
  std::uint32_t cardinality(std::size_t attribute) const {
    return static_cast<std::uint32_t>(dictionary_[attribute].size());
  }
  const std::string& value_of(std::size_t attribute, std::uint32_t code) const {
    return dictionary_[attribute][code];
  }

  // Number of cells holding the empty string. Loading reports these as a
  // warning; they are otherwise ordinary category values.
  std::size_t empty_cell_count() const { return empty_cell_count_; }

  // Copy of this dataset with the given cells replaced by the sentinel.
  Dataset WithSuppressed(
      std::span<const std::pair<std::size_t, std::size_t>> cells) const;

 private:
  Dataset() = default;
  void Encode();

  std::vector<std::string> columns_;
  std::string sentinel_;
  std::size_t num_records_ = 0;
  std::vector<std::string> cells_;  // Row-major.
  std::vector<std::vector<std::uint32_t>> codes_;        // [attribute][record]
  std::vector<std::vector<std::string>> dictionary_;     // [attribute][code]
  std::size_t empty_cell_count_ = 0;
};

enum class SentinelPolicy {
  // A data cell equal to the sentinel is a load error. Use for raw microdata.
  kReject,
  // A data cell equal to the sentinel is read as a suppressed cell. Use for
  // previously anonymized output.
  kAcceptAsSuppressed,
};

struct LoadOptions {
  SentinelPolicy sentinel_policy = SentinelPolicy::kReject;
};

// Reads RFC 4180 CSV with a header row. Header columns may appear in any order
// but must match the schema's attribute names exactly; the resulting dataset
// is in schema order.
absl::StatusOr<Dataset> LoadCsv(std::istream& in, const SchemaConfig& config,
                                LoadOptions options = {});

// Writes the header in schema order and one line per record, "\n"-terminated.
void WriteCsv(const Dataset& dataset, std::ostream& out);

}  // namespace drisk

#endif  // DRISK_DATASET_H_
