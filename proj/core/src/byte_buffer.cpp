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

#include "biformat/byte_buffer.hpp"

#include <cstring>

namespace biformat {

std::optional<BitCursor> set_current_byte(std::span<std::uint8_t> buffer, BitCursor cursor,
                                          std::uint8_t byte) {
  if (!cursor.byte_aligned() || cursor.byte_index() >= buffer.size()) return std::nullopt;
  buffer[cursor.byte_index()] = byte;
  cursor.advance(8);
  return cursor;
}

std::optional<ByteRead> get_current_byte(std::span<const std::uint8_t> buffer, BitCursor cursor) {
  if (!cursor.byte_aligned() || cursor.byte_index() >= buffer.size()) return std::nullopt;
  const std::uint8_t byte = buffer[cursor.byte_index()];
  cursor.advance(8);
  return ByteRead{byte, cursor};
}

bool write_bits(std::span<std::uint8_t> buffer, BitCursor& cursor, std::uint64_t value,
                unsigned width) {
  if (remaining_bits(buffer, cursor) < width) return false;
  std::size_t pos = cursor.bit_position();
  unsigned left = width;
  while (left > 0) {
    const unsigned offset = pos & 7;
    const unsigned room = 8 - offset;
    const unsigned take = left < room ? left : room;
    // Next `take` bits of value, from the top of the remaining width.
    const auto chunk = static_cast<unsigned>((value >> (left - take)) & ((1u << take) - 1));
    const unsigned shift = room - take;
    const auto mask = static_cast<std::uint8_t>(((1u << take) - 1) << shift);
    auto& byte = buffer[pos >> 3];
    byte = static_cast<std::uint8_t>((byte & ~mask) | (chunk << shift));
    pos += take;
    left -= take;
  }
  cursor = BitCursor(pos);
  return true;
}

std::optional<std::uint64_t> read_bits(std::span<const std::uint8_t> buffer, BitCursor& cursor,
                                       unsigned width) {
  if (remaining_bits(buffer, cursor) < width) return std::nullopt;
  std::size_t pos = cursor.bit_position();
  std::uint64_t value = 0;
  unsigned left = width;
  if ((pos & 7) == 0) {
    while (left >= 8) {
      value = (value << 8) | buffer[pos >> 3];
      pos += 8;
      left -= 8;
    }
  }
  while (left > 0) {
    const unsigned offset = pos & 7;
    const unsigned room = 8 - offset;
    const unsigned take = left < room ? left : room;
    const unsigned chunk = (buffer[pos >> 3] >> (room - take)) & ((1u << take) - 1);
    value = (value << take) | chunk;
    pos += take;
    left -= take;
  }
  cursor = BitCursor(pos);
  return value;
}

bool write_bytes(std::span<std::uint8_t> buffer, BitCursor& cursor,
                 std::span<const std::uint8_t> bytes) {
  if (remaining_bits(buffer, cursor) < bytes.size() * 8) return false;
  if (cursor.byte_aligned()) {
    if (!bytes.empty()) std::memcpy(buffer.data() + cursor.byte_index(), bytes.data(), bytes.size());
    cursor.advance(bytes.size() * 8);
    return true;
  }
  for (std::uint8_t b : bytes) write_bits(buffer, cursor, b, 8);
  return true;
}

bool read_bytes(std::span<const std::uint8_t> buffer, BitCursor& cursor, std::size_t count,
                std::vector<std::uint8_t>& out) {
  if (remaining_bits(buffer, cursor) < count * 8) return false;
  if (cursor.byte_aligned()) {
    const auto* first = buffer.data() + cursor.byte_index();
    out.assign(first, first + count);
    cursor.advance(count * 8);
    return true;
  }
  out.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = static_cast<std::uint8_t>(*read_bits(buffer, cursor, 8));
  }
  return true;
}

}  // namespace biformat
