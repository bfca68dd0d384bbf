// Copyright 2026 The biformat Authors
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

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace biformat {

// Immutable queue of bits with monoid structure: the reference target type
// for the bit-level interpreters and the relational oracle.
//
// Bits are booleans. The front of the queue is the first bit written; bytes
// are laid out most-significant bit first. Values share storage, so copies
// and unfold are O(1); operations that consume an rvalue they uniquely own
// extend its storage in place instead of copying.
class BitString {
 public:
  BitString() = default;

  // Parses a string of '0'/'1' characters. Throws std::invalid_argument on
  // any other character.
  static BitString from_digits(std::string_view digits);

  std::size_t length_bits() const noexcept { return length_; }
  bool is_empty() const noexcept { return length_ == 0; }

  // '0'/'1' rendering, front first.
  std::string to_digits() const;

  friend bool operator==(const BitString& a, const BitString& b);

  friend BitString append(BitString a, const BitString& b);
  friend BitString snoc(BitString bs, bool bit);
  friend std::optional<std::pair<bool, BitString>> unfold(BitString bs);
  friend BitString from_bytes(std::span<const std::uint8_t> bytes);

  struct Packed;
  friend Packed to_bytes(const BitString& bs);

 private:
  bool bit_at(std::size_t index) const;
  std::uint8_t byte_at(std::size_t bit_index) const;
  void make_unique_for_append(std::size_t extra_bits);
  void push_back(bool bit);

  std::shared_ptr<std::vector<std::uint8_t>> storage_;
  std::size_t start_ = 0;
  std::size_t length_ = 0;
};

struct BitString::Packed {
  std::vector<std::uint8_t> bytes;
  // Number of meaningful bits in the final byte when the length is not a
  // multiple of eight, zero otherwise.
  std::size_t trailing_bits = 0;

  friend bool operator==(const Packed&, const Packed&) = default;
};

// The identity element of append.
inline BitString empty() { return BitString{}; }

BitString append(BitString a, const BitString& b);
BitString snoc(BitString bs, bool bit);
std::optional<std::pair<bool, BitString>> unfold(BitString bs);
BitString from_bytes(std::span<const std::uint8_t> bytes);
BitString::Packed to_bytes(const BitString& bs);

}  // namespace biformat
