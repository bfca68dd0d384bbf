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

#include "sensors.hpp"

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

namespace biformat::testing {
namespace {

constexpr int kCases = 10000;

std::uint16_t random16(std::mt19937_64& rng) { return static_cast<std::uint16_t>(rng()); }

template <class S>
void expect_round_trip(const Format<S>& f, const S& s) {
  auto e = encode_bits(f, s);
  ASSERT_TRUE(e);
  auto d = decode_bits(f, e->bits);
  ASSERT_TRUE(d);
  EXPECT_EQ(d->value, s);
  EXPECT_TRUE(d->rest.is_empty());
}

TEST(Sensor0, RoundTrips) {
  std::mt19937_64 rng(10);
  auto f = sensor0_format();
  for (int i = 0; i < kCases; ++i) expect_round_trip(f, Sensor0{random16(rng), random16(rng)});
}

TEST(Sensor0, LayoutIsTwoWords) {
  auto e = encode_bits(sensor0_format(), Sensor0{0x0102, 0xA0B0});
  EXPECT_EQ(e->bits.to_digits(), bytes_to_digits({0x01, 0x02, 0xA0, 0xB0}));
}

TEST(Sensor1, RoundTrips) {
  std::mt19937_64 rng(11);
  auto f = sensor1_format();
  for (int i = 0; i < kCases; ++i) expect_round_trip(f, Sensor0{random16(rng), random16(rng)});
}

TEST(Sensor1, PaddingByteIsIgnoredOnInputAndZeroOnOutput) {
  auto f = sensor1_format();
  for (unsigned pad = 0; pad < 256; ++pad) {
    const std::vector<std::uint8_t> bytes{0x12, 0x34, static_cast<std::uint8_t>(pad), 0x56, 0x78};
    auto d = decode_bits(f, from_bytes(bytes));
    ASSERT_TRUE(d) << pad;
    EXPECT_EQ(d->value, (Sensor0{0x1234, 0x5678}));
    auto e = encode_bits(f, d->value);
    EXPECT_EQ(e->bits.to_digits(), bytes_to_digits({0x12, 0x34, 0x00, 0x56, 0x78}));
  }
}

TEST(Sensor2, RoundTrips) {
  std::mt19937_64 rng(12);
  auto f = sensor2_format();
  for (int i = 0; i < kCases; ++i) {
    const Kind k = (rng() & 1) ? Kind::temp : Kind::humidity;
    expect_round_trip(f, Sensor2{random16(rng), k, static_cast<std::uint16_t>(rng() & 0x3FFF)});
  }
}

TEST(Sensor2, VersionMismatchIsRejected) {
  auto f = sensor2_format();
  auto e = encode_bits(f, Sensor2{7, Kind::humidity, 99});
  ASSERT_TRUE(e);
  const std::string good = e->bits.to_digits();
  EXPECT_EQ(good.substr(24, 16), binary_digits(0x7E2, 16));
  for (std::size_t i = 24; i < 40; ++i) {
    std::string bad = good;
    bad[i] = bad[i] == '0' ? '1' : '0';
    auto d = decode_bits(f, BitString::from_digits(bad));
    ASSERT_FALSE(d);
    EXPECT_EQ(d.failure().reason, Reason::bad_constant);
    EXPECT_EQ(d.failure().bit_offset, 24u);
  }
}

TEST(Sensor2, ReadingWiderThanFourteenBitsIsRejected) {
  EXPECT_FALSE(encode_bits(sensor2_format(), Sensor2{1, Kind::temp, 0x4000}));
}

TEST(Sensor2, UnknownKindTagFails) {
  auto e = encode_bits(sensor2_format(), Sensor2{1, Kind::temp, 5});
  std::string digits = e->bits.to_digits();
  digits[40] = '1';
  auto d = decode_bits(sensor2_format(), BitString::from_digits(digits));
  ASSERT_FALSE(d);
  EXPECT_EQ(d.failure().reason, Reason::unknown_enum);
}

TEST(Sensor5, RoundTrips) {
  std::mt19937_64 rng(15);
  auto f = sensor5_format();
  for (int i = 0; i < kCases; ++i) {
    Sensor5 s{random16(rng), std::vector<std::uint16_t>(rng() % 256)};
    for (auto& d : s.data) d = random16(rng);
    expect_round_trip(f, s);
  }
}

TEST(Sensor5, RejectsListsOfTwoHundredFiftySixOrMore) {
  auto f = sensor5_format();
  for (std::size_t n : {256u, 257u, 512u}) {
    auto e = encode_bits(f, Sensor5{1, std::vector<std::uint16_t>(n, 3)});
    ASSERT_FALSE(e) << n;
    EXPECT_EQ(e.failure().reason, Reason::constraint_violation);
    std::vector<std::uint8_t> buf(4096);
    EXPECT_FALSE(encode_aligned(f, Sensor5{1, std::vector<std::uint16_t>(n, 3)}, buf));
  }
  EXPECT_TRUE(encode_bits(f, Sensor5{1, std::vector<std::uint16_t>(255, 3)}));
}

TEST(Sensor5, TruncatedListFails) {
  auto e = encode_bits(sensor5_format(), Sensor5{1, {1, 2, 3}});
  auto packed = to_bytes(e->bits);
  packed.bytes.pop_back();
  auto d = decode_bits(sensor5_format(), from_bytes(packed.bytes));
  ASSERT_FALSE(d);
  EXPECT_EQ(d.failure().reason, Reason::short_input);
}

}  // namespace
}  // namespace biformat::testing
