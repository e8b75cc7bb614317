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

#ifndef DRISK_ATTRIBUTE_SUBSET_H_
#define DRISK_ATTRIBUTE_SUBSET_H_

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace drisk {

inline constexpr std::size_t kMaxAttributes = 64;

// A set of attribute positions, stored as a single 64-bit word. Bit j set means
// attribute j (in schema declaration order) is a member. Used both for the
// adversary's known set and, via Complement(), for the unknown set.
class AttributeSubset {
 public:
  constexpr AttributeSubset() = default;
  constexpr explicit AttributeSubset(std::uint64_t bits) : bits_(bits) {}

  static constexpr AttributeSubset Empty() { return AttributeSubset(); }
  // All of the first `m` attributes.
  static constexpr AttributeSubset Full(std::size_t m) {
    return AttributeSubset(m >= 64 ? ~std::uint64_t{0}
                                   : (std::uint64_t{1} << m) - 1);
  }
  static constexpr AttributeSubset Single(std::size_t j) {
    return AttributeSubset(std::uint64_t{1} << j);
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(std::size_t j) const { return (bits_ >> j) & 1u; }

  // Position of the highest member; -1 for the empty set.
  constexpr int highest() const {
    return bits_ == 0 ? -1 : 63 - std::countl_zero(bits_);
  }

  constexpr AttributeSubset With(std::size_t j) const {
    return AttributeSubset(bits_ | (std::uint64_t{1} << j));
  }
  constexpr AttributeSubset Without(std::size_t j) const {
    return AttributeSubset(bits_ & ~(std::uint64_t{1} << j));
  }
  // The subset with its highest member removed. This is the parent of a mask
  // in the prefix tree that the lattice walk and the frequency index share.
  constexpr AttributeSubset Parent() const {
    return bits_ == 0 ? *this : Without(static_cast<std::size_t>(highest()));
  }
  constexpr AttributeSubset Complement(std::size_t m) const {
    return AttributeSubset(~bits_ & Full(m).bits_);
  }
  constexpr bool IsSubsetOf(AttributeSubset other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  // True when no bit at or above `m` is set.
  constexpr bool FitsWithin(std::size_t m) const {
    return m >= 64 || (bits_ >> m) == 0;
  }

  // Member positions in ascending order.
  std::vector<std::size_t> Members() const {
    std::vector<std::size_t> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
      out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
    }
    return out;
  }

  friend constexpr auto operator<=>(AttributeSubset, AttributeSubset) = default;

 private:
  std::uint64_t bits_ = 0;
};

// Strict ordering used to break ties between equally contributing splits:
// fewer members first, then the smaller mask value.
constexpr bool PrefersSplit(AttributeSubset a, AttributeSubset b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.bits() < b.bits();
}

}  // namespace drisk

#endif  // DRISK_ATTRIBUTE_SUBSET_H_
