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

#include "biformat/net/formats.hpp"

#include <gtest/gtest.h>

#include "biformat/checksum.hpp"
#include "biformat/equivalence.hpp"
#include "net_support.hpp"

namespace biformat::testing {
namespace {

using namespace biformat::net;

constexpr int kRecords = 10000;

template <class S>
void expect_aligned_round_trip(const Format<S>& f, const S& s) {
  auto bytes = encode_to_bytes(f, s);
  ASSERT_TRUE(bytes);
  auto d = decode_aligned(f, std::span<const std::uint8_t>(*bytes));
  ASSERT_TRUE(d) << to_string(d.failure().reason) << "@" << d.failure().bit_offset;
  EXPECT_EQ(d->value, s);
  EXPECT_EQ(d->consumed_bytes(), bytes->size());
}

TEST(Ethernet, RoundTrips) {
  Rng rng(100);
  for (int i = 0; i < kRecords; ++i) {
    const auto f = random_ethernet(rng, 200);
    expect_aligned_round_trip(ethernet_for(f), f);
  }
}

TEST(Ethernet, LengthTaggedFrameLayout) {
  EthernetFrame f{0x0000AABBCCDDEEFF, 0x0000112233445566, std::nullopt, {0xDE, 0xAD}};
  auto bytes = encode_to_bytes(ethernet_format(100), f);
  ASSERT_TRUE(bytes);
  const std::vector<std::uint8_t> expect{0xAA, 0xBB, 0xCC, 0xDD, 0xEE, 0xFF, 0x11, 0x22,
                                         0x33, 0x44, 0x55, 0x66, 0x00, 0x02, 0xDE, 0xAD};
  EXPECT_EQ(*bytes, expect);
}

TEST(Ethernet, ProtocolTaggedPayloadFillsTheFrame) {
  EthernetFrame f{1, 2, 0x0800, std::vector<std::uint8_t>(46, 7)};
  auto bytes = encode_to_bytes(ethernet_format(60), f);
  ASSERT_TRUE(bytes);
  EXPECT_EQ(bytes->size(), 60u);
  EXPECT_FALSE(encode_to_bytes(ethernet_format(61), f));
}

TEST(Ethernet, EtherTypeGapIsRejected) {
  for (unsigned tag = 1501; tag <= 1535; ++tag) {
    std::vector<std::uint8_t> frame(64, 0);
    frame[12] = static_cast<std::uint8_t>(tag >> 8);
    frame[13] = static_cast<std::uint8_t>(tag);
    auto d = decode_aligned(ethernet_format(64), std::span<const std::uint8_t>(frame));
    ASSERT_FALSE(d) << tag;
    EXPECT_EQ(d.failure().reason, Reason::no_union_branch);
    EXPECT_FALSE(decode_bits(ethernet_format(64), from_bytes(frame)));
    EXPECT_FALSE(encode_to_bytes(ethernet_format(64), EthernetFrame{0, 0, std::uint16_t(tag), {}}));
  }
}

TEST(Ethernet, BoundaryTags) {
  std::vector<std::uint8_t> frame(14 + 1500, 0);
  frame[12] = 1500 >> 8;
  frame[13] = 1500 & 0xFF;
  EXPECT_TRUE(decode_aligned(ethernet_format(frame.size()), std::span<const std::uint8_t>(frame)));
  frame[12] = 1536 >> 8;
  frame[13] = 1536 & 0xFF;
  auto d = decode_aligned(ethernet_format(frame.size()), std::span<const std::uint8_t>(frame));
  ASSERT_TRUE(d);
  EXPECT_EQ(d->value.ethertype, std::optional<std::uint16_t>(1536));
}

TEST(Arp, RoundTrips) {
  Rng rng(101);
  for (int i = 0; i < kRecords; ++i) expect_aligned_round_trip(arp_format(), random_arp(rng));
}

TEST(Arp, ShortInputFails) {
  Rng rng(102);
  auto bytes = *encode_to_bytes(arp_format(), random_arp(rng));
  EXPECT_EQ(bytes.size(), 28u);
  for (std::size_t n = 0; n < bytes.size(); ++n) {
    auto d = decode_aligned(arp_format(), std::span<const std::uint8_t>(bytes).first(n));
    ASSERT_FALSE(d);
    EXPECT_EQ(d.failure().reason, Reason::short_input);
  }
}

TEST(Arp, OnlyEthernetIpv4AddressLengths) {
  ArpPacket p;
  p.sender_hardware = p.target_hardware = std::vector<std::uint8_t>(6, 1);
  p.sender_protocol = p.target_protocol = std::vector<std::uint8_t>(16, 2);
  EXPECT_FALSE(encode_to_bytes(arp_format(), p));
  p.sender_protocol = p.target_protocol = std::vector<std::uint8_t>(4, 2);
  p.target_hardware.pop_back();
  EXPECT_FALSE(encode_to_bytes(arp_format(), p));
}

TEST(Ipv4, RoundTrips) {
  Rng rng(103);
  for (int i = 0; i < kRecords; ++i) expect_aligned_round_trip(ipv4_format(), random_ipv4(rng));
}

TEST(Ipv4, MinimalHeaderChecksumFolds) {
  Ipv4Header h;
  h.source = 0xC0A80001;
  h.destination = 0xC0A800C7;
  h.total_length = 0x73;
  h.dont_fragment = true;
  h.protocol = IpProtocol::udp;
  auto bytes = encode_to_bytes(ipv4_format(), h);
  ASSERT_TRUE(bytes);
  ASSERT_EQ(bytes->size(), 20u);
  EXPECT_EQ((*bytes)[0], 0x45);
  EXPECT_EQ(ones_complement_fold(*bytes), 0xFFFF);
  EXPECT_EQ((*bytes)[10], 0xB8);
  EXPECT_EQ((*bytes)[11], 0x61);
}

TEST(Ipv4, CorruptedChecksumIsBadChecksum) {
  Rng rng(104);
  auto bytes = *encode_to_bytes(ipv4_format(), random_ipv4(rng));
  bytes[11] ^= 0x01;
  auto d = decode_aligned(ipv4_format(), std::span<const std::uint8_t>(bytes));
  ASSERT_FALSE(d);
  EXPECT_EQ(d.failure().reason, Reason::bad_checksum);
  EXPECT_EQ(d.failure().bit_offset, 0u);
}

TEST(Ipv4, ReservedFlagIsIgnoredAndReencodedAsZero) {
  Rng rng(105);
  auto bytes = *encode_to_bytes(ipv4_format(), random_ipv4(rng));
  bytes[6] |= 0x80;
  fix_checksum(bytes, 10);
  auto d = decode_aligned(ipv4_format(), std::span<const std::uint8_t>(bytes));
  ASSERT_TRUE(d);
  auto again = *encode_to_bytes(ipv4_format(), d->value);
  EXPECT_EQ(again[6] & 0x80, 0);
  EXPECT_TRUE(equal_modulo(bytes, again, bytes.size(), ipv4_unused_bits(), 10));
}

TEST(Ipv4, IhlBelowFiveAndShortTotalLengthAreRejected) {
  Rng rng(106);
  for (unsigned ihl = 0; ihl < 5; ++ihl) {
    auto bytes = random_ipv4_bytes(rng, 60);
    bytes[0] = static_cast<std::uint8_t>(0x40 | ihl);
    bytes[9] = 6;
    std::vector<std::uint8_t> minimal(bytes.begin(), bytes.begin() + 20);
    fix_checksum(minimal, 10);
    std::copy(minimal.begin(), minimal.end(), bytes.begin());
    auto d = decode_aligned(ipv4_format(), std::span<const std::uint8_t>(bytes));
    ASSERT_FALSE(d);
    EXPECT_EQ(d.failure().reason, Reason::constraint_violation);
  }
  Ipv4Header h;
  h.options = {1, 2};
  h.total_length = 24;
  EXPECT_FALSE(encode_to_bytes(ipv4_format(), h));
}

TEST(Ipv4, WrongVersionIsBadConstant) {
  Rng rng(107);
  auto bytes = random_ipv4_bytes(rng);
  bytes[0] = static_cast<std::uint8_t>(0x60 | (bytes[0] & 0x0F));
  fix_checksum(bytes, 10);
  auto d = decode_aligned(ipv4_format(), std::span<const std::uint8_t>(bytes));
  ASSERT_FALSE(d);
  EXPECT_EQ(d.failure().reason, Reason::bad_constant);
}

TEST(Ipv4, OptionsBeyondTenWordsCannotBeEncoded) {
  Ipv4Header h;
  h.options.assign(11, 0);
  h.total_length = 200;
  EXPECT_FALSE(encode_to_bytes(ipv4_format(), h));
}

TEST(Udp, RoundTrips) {
  Rng rng(108);
  for (int i = 0; i < kRecords; ++i) {
    const auto d = random_udp(rng, 600);
    const auto f = udp_format(udp_pseudo(static_cast<std::uint32_t>(rng()),
                                         static_cast<std::uint32_t>(rng()), d.length()));
    expect_aligned_round_trip(f, d);
  }
}

TEST(Udp, LengthBelowHeaderSizeIsRejected) {
  Rng rng(109);
  for (unsigned len = 0; len < 8; ++len) {
    auto pseudo = udp_pseudo(1, 2, 0);
    auto bytes = random_udp_bytes(rng, pseudo, 16);
    bytes[4] = 0;
    bytes[5] = static_cast<std::uint8_t>(len);
    fix_checksum(bytes, 6, pseudo.bytes());
    auto d = decode_aligned(udp_format(pseudo), std::span<const std::uint8_t>(bytes));
    ASSERT_FALSE(d) << len;
    EXPECT_EQ(d.failure().reason, Reason::constraint_violation);
  }
}

TEST(Udp, PseudoheaderMismatchIsBadChecksum) {
  UdpDatagram d{53, 1000, {1, 2, 3}};
  auto bytes = *encode_to_bytes(udp_format(udp_pseudo(1, 2, d.length())), d);
  auto bad = decode_aligned(udp_format(udp_pseudo(1, 3, d.length())),
                            std::span<const std::uint8_t>(bytes));
  ASSERT_FALSE(bad);
  EXPECT_EQ(bad.failure().reason, Reason::bad_checksum);
}

TEST(Tcp, RoundTrips) {
  Rng rng(110);
  for (int i = 0; i < kRecords; ++i) {
    const auto s = random_tcp(rng, 600);
    const auto f = tcp_format(tcp_pseudo(static_cast<std::uint32_t>(rng()),
                                         static_cast<std::uint32_t>(rng()), s.length()),
                              s.length());
    expect_aligned_round_trip(f, s);
  }
}

TEST(Tcp, UrgentPointerRequiresUrg) {
  TcpSegment s;
  s.urgent_pointer = 9;
  auto f = tcp_format(tcp_pseudo(1, 2, s.length()), s.length());
  std::vector<std::uint8_t> buf(64);
  auto e = encode_aligned(f, s, buf);
  ASSERT_FALSE(e);
  EXPECT_EQ(e.failure().reason, Reason::constraint_violation);
  s.urg = true;
  EXPECT_TRUE(encode_aligned(f, s, buf));

  Rng rng(111);
  auto pseudo = tcp_pseudo(1, 2, 0);
  auto bytes = random_tcp_bytes(rng, pseudo, 8);
  bytes[13] &= static_cast<std::uint8_t>(~0x20);
  bytes[19] = 1;
  fix_checksum(bytes, 16, pseudo.bytes());
  auto d = decode_aligned(tcp_format(pseudo, bytes.size()), std::span<const std::uint8_t>(bytes));
  ASSERT_FALSE(d);
  EXPECT_EQ(d.failure().reason, Reason::constraint_violation);
}

TEST(Tcp, DataOffsetBeyondSegmentIsRejected) {
  Rng rng(112);
  auto pseudo = tcp_pseudo(1, 2, 0);
  auto bytes = random_tcp_bytes(rng, pseudo, 0);
  bytes.resize(20);
  bytes[12] = static_cast<std::uint8_t>(0xF0 | (bytes[12] & 0x0F));
  pseudo.length = 20;
  fix_checksum(bytes, 16, pseudo.bytes());
  auto d = decode_aligned(tcp_format(pseudo, 20), std::span<const std::uint8_t>(bytes));
  EXPECT_FALSE(d);
}

TEST(Tcp, ReservedBitsAreMasked) {
  Rng rng(113);
  TcpSegment s = random_tcp(rng, 10);
  auto pseudo = tcp_pseudo(5, 6, s.length());
  auto f = tcp_format(pseudo, s.length());
  auto bytes = *encode_to_bytes(f, s);
  bytes[12] |= 0x0F;
  fix_checksum(bytes, 16, pseudo.bytes());
  auto d = decode_aligned(f, std::span<const std::uint8_t>(bytes));
  ASSERT_TRUE(d);
  EXPECT_EQ(d->value, s);
}

// Random inputs with consistent lengths and checksums: whatever decodes must
// re-encode to the same bytes outside the masked positions.
TEST(RandomBuffers, DecodedRecordsReencode) {
  Rng rng(114);
  std::size_t accepted = 0;
  for (int i = 0; i < 3000; ++i) {
    auto ip = random_ipv4_bytes(rng, rng() % 8);
    if (auto d = decode_aligned(ipv4_format(), std::span<const std::uint8_t>(ip))) {
      ++accepted;
      auto again = encode_to_bytes(ipv4_format(), d->value);
      ASSERT_TRUE(again);
      ASSERT_TRUE(equal_modulo(ip, *again, again->size(), ipv4_unused_bits(), 10));
      ASSERT_EQ(ones_complement_fold(*again), 0xFFFF);
    }
    auto pseudo = udp_pseudo(static_cast<std::uint32_t>(rng()), 7, 0);
    auto udp = random_udp_bytes(rng, pseudo);
    if (auto d = decode_aligned(udp_format(pseudo), std::span<const std::uint8_t>(udp))) {
      ++accepted;
      ASSERT_EQ(encode_to_bytes(udp_format(pseudo), d->value), udp);
    }
    auto tpseudo = tcp_pseudo(9, static_cast<std::uint32_t>(rng()), 0);
    auto tcp = random_tcp_bytes(rng, tpseudo);
    auto tf = tcp_format(tpseudo, tcp.size());
    if (auto d = decode_aligned(tf, std::span<const std::uint8_t>(tcp))) {
      ++accepted;
      auto again = encode_to_bytes(tf, d->value);
      ASSERT_TRUE(again);
      ASSERT_TRUE(equal_modulo(tcp, *again, tcp.size(), tcp_unused_bits(), 16));
    }
    auto eth = net::random_bytes(rng, 14 + rng() % 40);
    auto ef = ethernet_format(eth.size());
    if (auto d = decode_aligned(ef, std::span<const std::uint8_t>(eth))) {
      ++accepted;
      auto again = encode_to_bytes(ef, d->value);
      ASSERT_TRUE(again);
      ASSERT_TRUE(std::equal(again->begin(), again->end(), eth.begin()));
    }
    auto arp = net::random_bytes(rng, 28);
    if (rng() & 1) {
      arp[4] = 6;
      arp[5] = 4;
    }
    if (auto d = decode_aligned(arp_format(), std::span<const std::uint8_t>(arp))) {
      ++accepted;
      ASSERT_EQ(encode_to_bytes(arp_format(), d->value), arp);
    }
  }
  EXPECT_GT(accepted, 6000u);
}

TEST(Equivalence, NetworkFormatsAgreeOnSamples) {
  Rng rng(115);
  std::vector<Ipv4Header> headers;
  std::vector<std::vector<std::uint8_t>> buffers;
  for (int i = 0; i < 300; ++i) {
    headers.push_back(random_ipv4(rng));
    buffers.push_back(random_ipv4_bytes(rng, rng() % 4));
    if (rng() & 1) buffers.back()[rng() % buffers.back().size()] ^= 0x04;
  }
  auto r = equivalence_check(ipv4_format(), headers, buffers);
  EXPECT_TRUE(r.ok()) << (r.ok() ? "" : r.divergences[0].clause + ": " + r.divergences[0].detail);
}

TEST(SpecificationSize, FormatsAreFlat) {
  EXPECT_EQ(ipv4_format().meta().min_bits, 160u);
  EXPECT_EQ(*ipv4_format().meta().max_bits, 480u);
  EXPECT_EQ(arp_format().meta().min_bits, 64u);
}

}  // namespace
}  // namespace biformat::testing
