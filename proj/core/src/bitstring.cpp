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

#include "biformat/bitstring.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>

namespace biformat {

BitString BitString::from_digits(std::string_view digits) {
  BitString out;
  for (char c : digits) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("BitString::from_digits: not a binary digit");
    }
    out.push_back(c == '1');
  }
  return out;
}

std::string BitString::to_digits() const {
  std::string out;
  out.reserve(length_);
  for (std::size_t i = 0; i < length_; ++i) out.push_back(bit_at(i) ? '1' : '0');
  return out;
}

bool BitString::bit_at(std::size_t index) const {
  const std::size_t pos = start_ + index;
  return ((*storage_)[pos >> 3] >> (7 - (pos & 7))) & 1;
}

// Eight bits starting at logical index `bit_index`; bits past the end read
// as zero.
std::uint8_t BitString::byte_at(std::size_t bit_index) const {
  const std::size_t pos = start_ + bit_index;
  const std::size_t shift = pos & 7;
  const auto& data = *storage_;
  unsigned hi = data[pos >> 3];
  unsigned lo = (pos >> 3) + 1 < data.size() ? data[(pos >> 3) + 1] : 0;
  auto value = static_cast<std::uint8_t>(((hi << 8 | lo) >> (8 - shift)) & 0xFF);
  const std::size_t remaining = length_ - bit_index;
  if (remaining < 8) value &= static_cast<std::uint8_t>(0xFF << (8 - remaining));
  return value;
}

bool operator==(const BitString& a, const BitString& b) {
  if (a.length_ != b.length_) return false;
  for (std::size_t i = 0; i < a.length_; i += 8) {
    if (a.byte_at(i) != b.byte_at(i)) return false;
  }
  return true;
}

void BitString::make_unique_for_append(std::size_t extra_bits) {
  const std::size_t needed_bits = start_ + length_ + extra_bits;
  if (storage_ && storage_.use_count() == 1) {
    if (storage_->size() * 8 < needed_bits) {
      storage_->resize((needed_bits + 7) / 8);
    }
    return;
  }
  // Shared or absent: copy the live bytes, keeping the sub-byte start.
  const std::size_t first_byte = start_ >> 3;
  auto fresh = std::make_shared<std::vector<std::uint8_t>>();
  const std::size_t new_start = start_ & 7;
  fresh->reserve((new_start + length_ + extra_bits + 7) / 8 + 8);
  fresh->resize((new_start + length_ + extra_bits + 7) / 8);
  if (storage_ && length_ > 0) {
    const std::size_t live_bytes = (new_start + length_ + 7) / 8;
    std::memcpy(fresh->data(), storage_->data() + first_byte, live_bytes);
  }
  storage_ = std::move(fresh);
  start_ = new_start;
}

void BitString::push_back(bool bit) {
  make_unique_for_append(1);
  const std::size_t pos = start_ + length_;
  auto& byte = (*storage_)[pos >> 3];
  const auto mask = static_cast<std::uint8_t>(0x80 >> (pos & 7));
  byte = bit ? (byte | mask) : (byte & ~mask);
  ++length_;
}

BitString append(BitString a, const BitString& b) {
  if (b.length_ == 0) return a;
  if (a.length_ == 0 && !a.storage_) return b;
  a.make_unique_for_append(b.length_);
  const std::size_t end = a.start_ + a.length_;
  auto& out = *a.storage_;
  if ((end & 7) == 0 && (b.start_ & 7) == 0) {
    std::memcpy(out.data() + (end >> 3), b.storage_->data() + (b.start_ >> 3),
                (b.length_ + 7) / 8);
    a.length_ += b.length_;
    return a;
  }
  std::size_t i = 0;
  for (; i + 8 <= b.length_; i += 8) {
    const std::size_t pos = a.start_ + a.length_;
    const std::uint8_t v = b.byte_at(i);
    const std::size_t shift = pos & 7;
    auto& first = out[pos >> 3];
    first = static_cast<std::uint8_t>((first & (0xFF << (8 - shift))) | (v >> shift));
    if (shift != 0) out[(pos >> 3) + 1] = static_cast<std::uint8_t>(v << (8 - shift));
    a.length_ += 8;
  }
  for (; i < b.length_; ++i) a.push_back(b.bit_at(i));
  return a;
}

BitString snoc(BitString bs, bool bit) {
  bs.push_back(bit);
  return bs;
}

std::optional<std::pair<bool, BitString>> unfold(BitString bs) {
  if (bs.length_ == 0) return std::nullopt;
  const bool front = bs.bit_at(0);
  ++bs.start_;
  --bs.length_;
  return std::pair<bool, BitString>{front, std::move(bs)};
}

BitString from_bytes(std::span<const std::uint8_t> bytes) {
  BitString out;
  if (bytes.empty()) return out;
  out.storage_ = std::make_shared<std::vector<std::uint8_t>>(bytes.begin(), bytes.end());
  out.length_ = bytes.size() * 8;
  return out;
}

BitString::Packed to_bytes(const BitString& bs) {
  BitString::Packed packed;
  packed.bytes.reserve((bs.length_ + 7) / 8);
  for (std::size_t i = 0; i < bs.length_; i += 8) packed.bytes.push_back(bs.byte_at(i));
  packed.trailing_bits = bs.length_ % 8;
  return packed;
}

}  // namespace biformat
