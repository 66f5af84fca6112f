// Copyright 2026 The emergent-space Authors
//
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

#pragma once

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "emergent/error.hpp"

namespace emergent {

inline constexpr std::size_t kMaxStates = 64;

namespace detail {

inline std::optional<long long> parse_integer_label(std::string_view s) {
  if (s.empty()) return std::nullopt;
  long long value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

}  // namespace detail

/// Canonical ordering of state labels.
///
/// Integer-like labels come first in numeric order, the rest follow in
/// lexicographic order. The position of a label in this ordering is the bit
/// index used by Subset.
class Elements {
 public:
  Elements() = default;

  explicit Elements(std::vector<std::string> labels) {
    if (labels.size() > kMaxStates) {
      throw Error(Errc::StateSpaceTooLarge,
                  std::to_string(labels.size()) + " states exceed the cap of " +
                      std::to_string(kMaxStates));
    }
    std::sort(labels.begin(), labels.end(), label_less);
    for (std::size_t i = 1; i < labels.size(); ++i) {
      if (labels[i] == labels[i - 1]) {
        throw Error(Errc::DuplicateLabel, "label '" + labels[i] + "'");
      }
    }
    labels_ = std::move(labels);
    for (std::size_t i = 0; i < labels_.size(); ++i) index_[labels_[i]] = i;
  }

  static bool label_less(const std::string& a, const std::string& b) {
    auto na = detail::parse_integer_label(a);
    auto nb = detail::parse_integer_label(b);
    if (na && nb) return *na != *nb ? *na < *nb : a < b;
    if (na != nb) return na.has_value();  // numbers before words
    return a < b;
  }

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }

  std::optional<std::size_t> find(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t index_of(const std::string& label) const {
    auto idx = find(label);
    if (!idx) throw Error(Errc::UnknownLabel, "label '" + label + "'");
    return *idx;
  }

  bool operator==(const Elements& other) const {
    return labels_ == other.labels_;
  }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// A subset of an Elements ordering stored as a single 64-bit word.
class Subset {
 public:
  Subset() = default;
  Subset(std::uint64_t bits, std::size_t universe)
      : bits_(bits), universe_(universe) {
    if (universe > kMaxStates || (bits & ~full_mask(universe)) != 0) {
      throw Error(Errc::InvalidSubset,
                  "bits outside a universe of " + std::to_string(universe));
    }
  }

  static Subset empty(std::size_t universe) { return {0, universe}; }
  static Subset full(std::size_t universe) {
    return {full_mask(universe), universe};
  }
  static Subset singleton(std::size_t index, std::size_t universe) {
    if (index >= universe) {
      throw Error(Errc::InvalidSubset, "index " + std::to_string(index) +
                                           " outside universe of " +
                                           std::to_string(universe));
    }
    return {std::uint64_t{1} << index, universe};
  }

  static Subset from_labels(const Elements& elements,
                            const std::vector<std::string>& labels) {
    std::uint64_t bits = 0;
    for (const auto& l : labels) {
      auto idx = elements.find(l);
      if (!idx) throw Error(Errc::InvalidSubset, "unknown label '" + l + "'");
      bits |= std::uint64_t{1} << *idx;
    }
    return {bits, elements.size()};
  }

  static constexpr std::uint64_t full_mask(std::size_t universe) {
    return universe >= 64 ? ~std::uint64_t{0}
                          : (std::uint64_t{1} << universe) - 1;
  }

  std::uint64_t bits() const noexcept { return bits_; }
  std::size_t universe() const noexcept { return universe_; }
  std::size_t count() const noexcept {
    return static_cast<std::size_t>(std::popcount(bits_));
  }
  bool is_empty() const noexcept { return bits_ == 0; }
  bool contains(std::size_t i) const noexcept {
    return i < universe_ && ((bits_ >> i) & 1u) != 0;
  }
  bool subset_of(const Subset& o) const noexcept {
    return (bits_ & ~o.bits_) == 0;
  }
  bool disjoint(const Subset& o) const noexcept {
    return (bits_ & o.bits_) == 0;
  }

  Subset complement() const { return {~bits_ & full_mask(universe_), universe_}; }
  Subset operator|(const Subset& o) const { return {bits_ | o.bits_, universe_}; }
  Subset operator&(const Subset& o) const { return {bits_ & o.bits_, universe_}; }
  Subset operator-(const Subset& o) const { return {bits_ & ~o.bits_, universe_}; }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
      out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
    }
    return out;
  }

  std::vector<std::string> labels(const Elements& elements) const {
    std::vector<std::string> out;
    for (auto i : indices()) out.push_back(elements.label(i));
    return out;
  }

  bool operator==(const Subset&) const = default;

 private:
  std::uint64_t bits_ = 0;
  std::size_t universe_ = 0;
};

/// Canonical subset order: by cardinality, then by bitset value.
inline bool canonical_less(const Subset& a, const Subset& b) {
  if (a.count() != b.count()) return a.count() < b.count();
  return a.bits() < b.bits();
}

inline void sort_canonical(std::vector<Subset>& family) {
  std::sort(family.begin(), family.end(), canonical_less);
}

}  // namespace emergent
