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

#include "partition.h"

#include <algorithm>

namespace drisk::internal {

Partition Partition::Whole(std::size_t n) {
  Partition p;
  p.group_of.assign(n, 0);
  if (n > 0) p.sizes.push_back(static_cast<std::uint32_t>(n));
  return p;
}

Refiner::Refiner(std::size_t num_records)
    : dense_limit_(std::max<std::size_t>(4 * num_records, 1 << 16)) {}

void Refiner::Refine(const Partition& parent,
                     std::span<const std::uint32_t> codes,
                     std::uint32_t cardinality, Partition& child,
                     std::vector<std::uint64_t>* keys) {
  const std::size_t n = parent.group_of.size();
  child.group_of.resize(n);
  child.sizes.clear();
  touched_.clear();

  const std::uint64_t key_space =
      static_cast<std::uint64_t>(parent.num_groups()) * cardinality;
  if (key_space <= dense_limit_) {
    if (slot_.size() < key_space) slot_.resize(dense_limit_, kUnset);
    for (std::size_t r = 0; r < n; ++r) {
      const std::uint64_t key =
          static_cast<std::uint64_t>(parent.group_of[r]) * cardinality + codes[r];
      std::uint32_t& id = slot_[key];
      if (id == kUnset) {
        id = static_cast<std::uint32_t>(child.sizes.size());
        child.sizes.push_back(0);
        touched_.push_back(key);
      }
      ++child.sizes[id];
      child.group_of[r] = id;
    }
    for (std::uint64_t key : touched_) slot_[key] = kUnset;
  } else {
    sparse_.clear();
    for (std::size_t r = 0; r < n; ++r) {
      const std::uint64_t key =
          static_cast<std::uint64_t>(parent.group_of[r]) * cardinality + codes[r];
      auto [it, inserted] = sparse_.try_emplace(
          key, static_cast<std::uint32_t>(child.sizes.size()));
      if (inserted) {
        child.sizes.push_back(0);
        touched_.push_back(key);
      }
      ++child.sizes[it->second];
      child.group_of[r] = it->second;
    }
  }

  if (keys != nullptr) {
    keys->clear();
    keys->reserve(touched_.size());
    for (std::uint64_t key : touched_) {
      keys->push_back(((key / cardinality) << 32) | (key % cardinality));
    }
  }
}

}  // namespace drisk::internal
