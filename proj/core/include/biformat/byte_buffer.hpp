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
#include <optional>
#include <span>
#include <vector>

namespace biformat {

// Read/write position inside a byte buffer, at bit granularity.
class BitCursor {
 public:
  constexpr BitCursor() = default;
  constexpr explicit BitCursor(std::size_t bit_position) : position_(bit_position) {}

  constexpr std::size_t byte_index() const { return position_ >> 3; }
  constexpr unsigned bit_offset() const { return static_cast<unsigned>(position_ & 7); }
  constexpr std::size_t bit_position() const { return position_; }
  constexpr bool byte_aligned() const { return (position_ & 7) == 0; }

  constexpr void advance(std::size_t bits) { position_ += bits; }

  friend constexpr bool operator==(BitCursor, BitCursor) = default;

 private:
  std::size_t position_ = 0;
};

// Fixed-capacity byte array. The capacity is set at construction and never
// changes; encoders report overflow rather than growing it.
class ByteBuffer {
 public:
  explicit ByteBuffer(std::size_t capacity) : bytes_(capacity, 0) {}

  std::size_t capacity() const { return bytes_.size(); }
  std::span<std::uint8_t> span() { return bytes_; }
  std::span<const std::uint8_t> span() const { return bytes_; }
  std::uint8_t operator[](std::size_t i) const { return bytes_[i]; }

 private:
  std::vector<std::uint8_t> bytes_;
};

// Writes one byte at an aligned cursor and advances it. Empty when the
// cursor is unaligned or the buffer is full.
std::optional<BitCursor> set_current_byte(std::span<std::uint8_t> buffer, BitCursor cursor,
                                          std::uint8_t byte);

struct ByteRead {
  std::uint8_t byte;
  BitCursor next;
};

// Reads one byte at an aligned cursor and advances it.
std::optional<ByteRead> get_current_byte(std::span<const std::uint8_t> buffer, BitCursor cursor);

// Writes the low `width` bits of `value` MSB first (width <= 64). Returns
// false, leaving the cursor unchanged, when fewer than `width` bits of
// capacity remain.
bool write_bits(std::span<std::uint8_t> buffer, BitCursor& cursor, std::uint64_t value,
                unsigned width);

// Reads `width` bits MSB first (width <= 64).
std::optional<std::uint64_t> read_bits(std::span<const std::uint8_t> buffer, BitCursor& cursor,
                                       unsigned width);

// Bulk byte copies; memcpy when the cursor is aligned, shifted otherwise.
bool write_bytes(std::span<std::uint8_t> buffer, BitCursor& cursor,
                 std::span<const std::uint8_t> bytes);
bool read_bytes(std::span<const std::uint8_t> buffer, BitCursor& cursor, std::size_t count,
                std::vector<std::uint8_t>& out);

inline std::size_t remaining_bits(std::span<const std::uint8_t> buffer, BitCursor cursor) {
  const std::size_t total = buffer.size() * 8;
  return cursor.bit_position() >= total ? 0 : total - cursor.bit_position();
}

}  // namespace biformat
