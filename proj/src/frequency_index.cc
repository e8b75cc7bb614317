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

#include "drisk/frequency_index.h"

#include <algorithm>
#include <map>
#include <utility>

#include "absl/container/btree_set.h"
#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "partition.h"

namespace drisk {
namespace {

constexpr std::uint64_t PackKey(std::uint32_t parent, std::uint32_t code) {
  return (static_cast<std::uint64_t>(parent) << 32) | code;
}

}  // namespace

absl::StatusOr<FrequencyIndex> FrequencyIndex::Build(
    const Dataset& dataset, std::span<const AttributeSubset> masks) {
  const std::size_t n = dataset.num_records();
  const std::size_t m = dataset.num_attributes();

  // Requested masks plus all their prefixes, so that each mask's parent is
  // indexed before it.
  absl::btree_set<std::uint64_t> closure;
  closure.insert(0);
  for (AttributeSubset mask : masks) {
    if (!mask.FitsWithin(m)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "mask ", mask.bits(), " uses attributes beyond the dataset width ", m));
    }
    for (AttributeSubset t = mask; !t.empty(); t = t.Parent()) {
      if (!closure.insert(t.bits()).second) break;
    }
  }

  std::map<std::uint64_t, std::vector<AttributeSubset>> children;
  for (std::uint64_t bits : closure) {
    if (bits != 0) children[AttributeSubset(bits).Parent().bits()].push_back(
        AttributeSubset(bits));
  }

  FrequencyIndex index;
  index.num_records_ = n;
  index.num_attributes_ = m;

  internal::Partition whole = internal::Partition::Whole(n);
  MaskTable& root = index.tables_[0];
  root.sizes = whole.sizes;
  root.key_of.assign(whole.sizes.size(), 0);

  internal::Refiner refiner(n);
  // Depth-first over the prefix tree; only one partition per depth is alive.
  std::vector<internal::Partition> stack(m + 1);
  stack[0] = std::move(whole);
  auto visit = [&](auto&& self, AttributeSubset mask, std::size_t depth) -> void {
    auto it = children.find(mask.bits());
    if (it == children.end()) return;
    for (AttributeSubset child : it->second) {
      const auto attribute = static_cast<std::size_t>(child.highest());
      MaskTable& table = index.tables_[child.bits()];
      refiner.Refine(stack[depth], dataset.column_codes(attribute),
                     dataset.cardinality(attribute), stack[depth + 1],
                     &table.key_of);
      table.sizes = stack[depth + 1].sizes;
      table.child_of.reserve(table.key_of.size());
      for (std::uint32_t g = 0; g < table.key_of.size(); ++g) {
        table.child_of.emplace(table.key_of[g], g);
      }
      self(self, child, depth + 1);
    }
  };
  visit(visit, AttributeSubset::Empty(), 0);
  return index;
}

bool FrequencyIndex::Contains(AttributeSubset mask) const {
  return tables_.contains(mask.bits());
}

std::optional<std::uint32_t> FrequencyIndex::ChildGroup(
    AttributeSubset mask, std::uint32_t parent_group, std::uint32_t code) const {
  auto table = tables_.find(mask.bits());
  if (table == tables_.end()) return std::nullopt;
  auto it = table->second.child_of.find(PackKey(parent_group, code));
  if (it == table->second.child_of.end()) return std::nullopt;
  return it->second;
}

std::uint32_t FrequencyIndex::GroupSize(AttributeSubset mask,
                                        std::uint32_t group) const {
  return tables_.at(mask.bits()).sizes.at(group);
}

absl::StatusOr<std::uint32_t> FrequencyIndex::GroupOf(
    const Dataset& dataset, std::size_t record, AttributeSubset mask) const {
  if (dataset.num_records() != num_records_ ||
      dataset.num_attributes() != num_attributes_) {
    return absl::FailedPreconditionError(
        "dataset shape differs from the one the index was built from");
  }
  if (record >= num_records_) {
    return absl::OutOfRangeError(absl::StrCat("record ", record,
                                              " out of range [0, ",
                                              num_records_, ")"));
  }
  if (!Contains(mask)) {
    return absl::FailedPreconditionError(
        absl::StrCat("mask ", mask.bits(), " is not indexed"));
  }
  std::uint32_t group = 0;
  AttributeSubset prefix;
  for (std::size_t j : mask.Members()) {
    prefix = prefix.With(j);
    std::optional<std::uint32_t> next =
        ChildGroup(prefix, group, dataset.code(record, j));
    if (!next) {
      return absl::FailedPreconditionError(
          "record tuple missing from index; was it built from this dataset?");
    }
    group = *next;
  }
  return group;
}

absl::StatusOr<std::uint32_t> FrequencyIndex::Frequency(
    const Dataset& dataset, std::size_t record, AttributeSubset mask) const {
  absl::StatusOr<std::uint32_t> group = GroupOf(dataset, record, mask);
  if (!group.ok()) return group.status();
  return GroupSize(mask, *group);
}

absl::StatusOr<std::vector<FrequencyIndex::Group>> FrequencyIndex::Groups(
    const Dataset& dataset, AttributeSubset mask) const {
  if (!Contains(mask)) {
    return absl::FailedPreconditionError(
        absl::StrCat("mask ", mask.bits(), " is not indexed"));
  }
  const std::vector<std::size_t> members = mask.Members();
  const MaskTable& table = tables_.at(mask.bits());
  std::vector<Group> out(table.sizes.size());
  for (std::uint32_t g = 0; g < table.sizes.size(); ++g) {
    out[g].count = table.sizes[g];
    out[g].values.resize(members.size());
    // Walk the trie back to the root, filling values from the last member.
    AttributeSubset t = mask;
    std::uint32_t group = g;
    for (std::size_t k = members.size(); k-- > 0;) {
      const std::uint64_t key = tables_.at(t.bits()).key_of[group];
      out[g].values[k] = dataset.value_of(
          members[k], static_cast<std::uint32_t>(key & 0xffffffffu));
      group = static_cast<std::uint32_t>(key >> 32);
      t = t.Parent();
    }
  }
  return out;
}

}  // namespace drisk
