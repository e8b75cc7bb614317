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

// Record partitions by projected value tuple, refined one column at a time.

#ifndef DRISK_SRC_PARTITION_H_
#define DRISK_SRC_PARTITION_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "absl/container/flat_hash_map.h"

namespace drisk::internal {

// Groups of records that agree on some attribute subset. Group ids are dense
// and numbered in order of first appearance over the records.
struct Partition {
  std::vector<std::uint32_t> group_of;  // [record]
  std::vector<std::uint32_t> sizes;     // [group]

  std::size_t num_groups() const { return sizes.size(); }
  bool AllSingletons() const { return sizes.size() == group_of.size(); }

  // The partition of the empty subset: every record in group 0.
  static Partition Whole(std::size_t n);
};

// Splits each group of a parent partition by the value of one more column.
// Holds scratch space so repeated refinements do not reallocate.
class Refiner {
 public:
  explicit Refiner(std::size_t num_records);

  // Writes into `child` the partition of (parent group, code) pairs. When
  // `keys` is nonnull it receives, per child group, the pair packed as
  // (parent_group << 32) | code.
  void Refine(const Partition& parent, std::span<const std::uint32_t> codes,
              std::uint32_t cardinality, Partition& child,
              std::vector<std::uint64_t>* keys = nullptr);

 private:
  static constexpr std::uint32_t kUnset = ~std::uint32_t{0};

  std::size_t dense_limit_;
  std::vector<std::uint32_t> slot_;  // Dense key -> child group, or kUnset.
  std::vector<std::uint64_t> touched_;
  absl::flat_hash_map<std::uint64_t, std::uint32_t> sparse_;
};

}  // namespace drisk::internal

#endif  // DRISK_SRC_PARTITION_H_
