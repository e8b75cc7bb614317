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

#ifndef DRISK_FREQUENCY_INDEX_H_
#define DRISK_FREQUENCY_INDEX_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/statusor.h"
#include "drisk/attribute_subset.h"
#include "drisk/dataset.h"

namespace drisk {

// Exact group-by counts of a dataset for a set of attribute subsets.
//
// Groups of a mask are stored as a trie over the mask's members in ascending
// position order: a group of mask t is identified by (group of t.Parent(),
// code of t's highest member). Building the index for a mask therefore also
// indexes every prefix of it. Memory per mask is proportional to its number
// of distinct value tuples.
//
// The suppression sentinel is an ordinary value here: two suppressed cells in
// the same column match each other.
class FrequencyIndex {
 public:
  struct Group {
    std::vector<std::string> values;  // One per member, ascending position.
    std::uint32_t count = 0;
  };

  // Fails if a mask names an attribute beyond the dataset's width.
  static absl::StatusOr<FrequencyIndex> Build(
      const Dataset& dataset, std::span<const AttributeSubset> masks);

  std::size_t num_records() const { return num_records_; }
  std::size_t num_masks() const { return tables_.size(); }
  bool Contains(AttributeSubset mask) const;

  // Number of records whose projection onto `mask` equals that of `record`.
  // `dataset` must be the dataset the index was built from.
  absl::StatusOr<std::uint32_t> Frequency(const Dataset& dataset,
                                          std::size_t record,
                                          AttributeSubset mask) const;

  // All groups of an indexed mask, in order of first appearance.
  absl::StatusOr<std::vector<Group>> Groups(const Dataset& dataset,
                                            AttributeSubset mask) const;

  // Step from a group of mask.Parent() to the group of `mask` obtained by
  // appending `code` for mask's highest member. Returns nullopt when the mask
  // is not indexed or no record has that tuple.
  std::optional<std::uint32_t> ChildGroup(AttributeSubset mask,
                                          std::uint32_t parent_group,
                                          std::uint32_t code) const;
  // Size of a group previously returned by ChildGroup(). Group 0 of the empty
  // mask holds every record.
  std::uint32_t GroupSize(AttributeSubset mask, std::uint32_t group) const;

 private:
  struct MaskTable {
    absl::flat_hash_map<std::uint64_t, std::uint32_t> child_of;
    std::vector<std::uint64_t> key_of;  // [group] -> (parent << 32) | code
    std::vector<std::uint32_t> sizes;   // [group]
  };

  absl::StatusOr<std::uint32_t> GroupOf(const Dataset& dataset,
                                        std::size_t record,
                                        AttributeSubset mask) const;

  std::size_t num_records_ = 0;
  std::size_t num_attributes_ = 0;
  absl::flat_hash_map<std::uint64_t, MaskTable> tables_;
};

}  // namespace drisk

#endif  // DRISK_FREQUENCY_INDEX_H_
