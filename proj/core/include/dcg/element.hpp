// Copyright 2026 The dcgroup Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DCG_ELEMENT_HPP_
#define DCG_ELEMENT_HPP_

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <vector>

#include "dcg/common.hpp"

namespace dcg {

/// Canonical group element. The payload layout is model specific (coordinate
/// tuples, reduced words as signed letters, permutation images, table
/// indices, normal-form symbol strings); canonicity means two elements are
/// equal in the group iff their payloads are identical.
class Element {
 public:
  Element() = default;
  explicit Element(std::vector<std::int64_t> payload) : payload_(std::move(payload)) {}
  Element(std::initializer_list<std::int64_t> payload) : payload_(payload) {}

  const std::vector<std::int64_t>& payload() const { return payload_; }
  std::vector<std::int64_t>& payload() { return payload_; }
  std::size_t size() const { return payload_.size(); }

  friend bool operator==(const Element&, const Element&) = default;
  friend auto operator<=>(const Element&, const Element&) = default;

  std::uint64_t hash() const {
    std::uint64_t h = 0x2545f4914f6cdd1dULL;
    for (std::int64_t v : payload_) h = hash_combine(h, static_cast<std::uint64_t>(v));
    return h;
  }

 private:
  std::vector<std::int64_t> payload_;
};

struct ElementHash {
  std::size_t operator()(const Element& e) const { return static_cast<std::size_t>(e.hash()); }
};

/// Open-addressing index from Element to its position in an external,
/// append-only element array. Stores only hashes and positions, so large
/// balls are not duplicated in the hash table; the backing array is passed
/// to each call, which keeps the index trivially movable with its owner.
class ElementIndex {
 public:
  ElementIndex() { rehash(64); }

  std::optional<std::size_t> find(const Element& e, const std::vector<Element>& elems) const {
    return find_with_hash(e, e.hash(), elems);
  }

  /// Inserts position `pos` for `e` unless already present; returns the
  /// resident position either way.
  std::size_t insert(const Element& e, std::size_t pos, const std::vector<Element>& elems) {
    std::uint64_t h = e.hash();
    if (auto existing = find_with_hash(e, h, elems)) return *existing;
    if ((count_ + 1) * 10 >= slots_.size() * 7) rehash(slots_.size() * 2);
    place(h, pos);
    ++count_;
    return pos;
  }

  std::size_t size() const { return count_; }

 private:
  static constexpr std::uint32_t kEmpty = 0xffffffffu;

  std::optional<std::size_t> find_with_hash(const Element& e, std::uint64_t h,
                                            const std::vector<Element>& elems) const {
    std::size_t mask = slots_.size() - 1;
    for (std::size_t i = h & mask;; i = (i + 1) & mask) {
      if (slots_[i] == kEmpty) return std::nullopt;
      if (hashes_[i] == h && elems[slots_[i]] == e) return slots_[i];
    }
  }

  void place(std::uint64_t h, std::size_t pos) {
    std::size_t mask = slots_.size() - 1;
    std::size_t i = h & mask;
    while (slots_[i] != kEmpty) i = (i + 1) & mask;
    slots_[i] = static_cast<std::uint32_t>(pos);
    hashes_[i] = h;
  }

  void rehash(std::size_t capacity) {
    std::vector<std::uint32_t> old_slots = std::move(slots_);
    std::vector<std::uint64_t> old_hashes = std::move(hashes_);
    slots_.assign(capacity, kEmpty);
    hashes_.assign(capacity, 0);
    for (std::size_t i = 0; i < old_slots.size(); ++i) {
      if (old_slots[i] != kEmpty) place(old_hashes[i], old_slots[i]);
    }
  }

  std::vector<std::uint32_t> slots_;
  std::vector<std::uint64_t> hashes_;
  std::size_t count_ = 0;
};

}  // namespace dcg

#endif  // DCG_ELEMENT_HPP_
