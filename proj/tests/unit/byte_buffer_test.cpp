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

#include <gtest/gtest.h>

#include <random>

#include "biformat/bitstring.hpp"

namespace biformat {
namespace {

TEST(ByteBuffer, SetCurrentByteAdvancesOneByte) {
  ByteBuffer buf(2);
  auto next = set_current_byte(buf.span(), BitCursor{}, 0xAB);
  ASSERT_TRUE(next);
  EXPECT_EQ(next->byte_index(), 1u);
  EXPECT_EQ(buf[0], 0xAB);
}

TEST(ByteBuffer, SetCurrentByteAtCapacityFails) {
  ByteBuffer buf(2);
  EXPECT_FALSE(set_current_byte(buf.span(), BitCursor(16), 0x01));
}

TEST(ByteBuffer, SetCurrentByteNeedsAlignment) {
  ByteBuffer buf(2);
  EXPECT_FALSE(set_current_byte(buf.span(), BitCursor(3), 0x01));
  EXPECT_FALSE(get_current_byte(buf.span(), BitCursor(3)));
}

TEST(ByteBuffer, TwoWritesReadBackInOrder) {
  ByteBuffer buf(2);
  auto c1 = set_current_byte(buf.span(), BitCursor{}, 0x12);
  auto c2 = set_current_byte(buf.span(), *c1, 0x34);
  ASSERT_TRUE(c2);
  auto r1 = get_current_byte(buf.span(), BitCursor{});
  auto r2 = get_current_byte(buf.span(), r1->next);
  EXPECT_EQ(r1->byte, 0x12);
  EXPECT_EQ(r2->byte, 0x34);
  EXPECT_FALSE(get_current_byte(buf.span(), r2->next));
}

TEST(ByteBuffer, GetCurrentByteAgreesWithEightBitDecoding) {
  for (unsigned v = 0; v < 256; ++v) {
    const std::vector<std::uint8_t> bytes{static_cast<std::uint8_t>(v)};
    auto read = get_current_byte(bytes, BitCursor{});
    ASSERT_TRUE(read);
    std::uint8_t reference = 0;
    BitString bits = from_bytes(bytes);
    for (int i = 0; i < 8; ++i) {
      auto step = unfold(bits);
      reference = static_cast<std::uint8_t>((reference << 1) | step->first);
      bits = step->second;
    }
    EXPECT_EQ(read->byte, reference);
  }
}

TEST(ByteBuffer, SubByteWritesPackMostSignificantFirst) {
  ByteBuffer buf(1);
  BitCursor cur;
  ASSERT_TRUE(write_bits(buf.span(), cur, 0b11, 2));
  ASSERT_TRUE(write_bits(buf.span(), cur, 0b000000, 6));
  EXPECT_EQ(buf[0], 0xC0);
  EXPECT_EQ(cur.bit_position(), 8u);
}

TEST(ByteBuffer, ReadBitsPastTheEndFails) {
  const std::vector<std::uint8_t> bytes{0xFF};
  BitCursor cur;
  EXPECT_FALSE(read_bits(bytes, cur, 9));
  EXPECT_EQ(cur.bit_position(), 0u);
}

TEST(ByteBuffer, WriteBitsPastCapacityLeavesCursor) {
  ByteBuffer buf(1);
  BitCursor cur(4);
  EXPECT_FALSE(write_bits(buf.span(), cur, 0x1F, 5));
  EXPECT_EQ(cur.bit_position(), 4u);
}

TEST(ByteBuffer, WriteThenReadRoundTripsAtRandomOffsets) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 5000; ++i) {
    ByteBuffer buf(16);
    const unsigned width = static_cast<unsigned>(rng() % 65);
    const std::size_t start = rng() % 40;
    const std::uint64_t value = width == 64 ? rng() : rng() & ((std::uint64_t{1} << width) - 1);
    BitCursor w(start);
    ASSERT_TRUE(write_bits(buf.span(), w, value, width));
    BitCursor r(start);
    auto back = read_bits(buf.span(), r, width);
    ASSERT_TRUE(back);
    EXPECT_EQ(*back, value);
    EXPECT_EQ(r, w);
  }
}

TEST(ByteBuffer, WriteBitsPreservesNeighbouringBits) {
  ByteBuffer buf(2);
  BitCursor all;
  ASSERT_TRUE(write_bits(buf.span(), all, 0xFFFF, 16));
  BitCursor mid(5);
  ASSERT_TRUE(write_bits(buf.span(), mid, 0, 4));
  EXPECT_EQ(buf[0], 0xF8);
  EXPECT_EQ(buf[1], 0x7F);
}

TEST(ByteBuffer, ByteCopiesMatchBitwiseCopies) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 500; ++i) {
    std::vector<std::uint8_t> bytes(rng() % 10);
    for (auto& b : bytes) b = static_cast<std::uint8_t>(rng());
    const std::size_t start = rng() % 12;
    ByteBuffer fast(16), slow(16);
    BitCursor fc(start), sc(start);
    ASSERT_TRUE(write_bytes(fast.span(), fc, bytes));
    for (auto b : bytes) ASSERT_TRUE(write_bits(slow.span(), sc, b, 8));
    EXPECT_EQ(fc, sc);
    for (std::size_t k = 0; k < 16; ++k) EXPECT_EQ(fast[k], slow[k]);
    std::vector<std::uint8_t> back;
    BitCursor rc(start);
    ASSERT_TRUE(read_bytes(fast.span(), rc, bytes.size(), back));
    EXPECT_EQ(back, bytes);
  }
}

}  // namespace
}  // namespace biformat
