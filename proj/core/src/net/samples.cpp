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

#include "biformat/net/samples.hpp"

#include <algorithm>

namespace biformat::net {

namespace {

template <class T>
T uniform(Rng& rng, T lo, T hi) {
  return static_cast<T>(std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng));
}

bool coin(Rng& rng) { return (rng() & 1) != 0; }

std::vector<std::uint32_t> random_words(Rng& rng, std::size_t max_count) {
  std::vector<std::uint32_t> words(uniform<std::size_t>(rng, 0, max_count));
  for (auto& w : words) w = static_cast<std::uint32_t>(rng());
  return words;
}

}  // namespace

std::vector<std::uint8_t> random_bytes(Rng& rng, std::size_t count) {
  std::vector<std::uint8_t> out(count);
  for (auto& b : out) b = static_cast<std::uint8_t>(rng());
  return out;
}

EthernetFrame random_ethernet(Rng& rng, std::size_t max_payload) {
  EthernetFrame f;
  f.destination = rng() & 0xFFFFFFFFFFFFull;
  f.source = rng() & 0xFFFFFFFFFFFFull;
  if (coin(rng)) f.ethertype = uniform<std::uint16_t>(rng, kMinEtherType, 0xFFFF);
  const std::size_t cap = std::min<std::size_t>(max_payload, kMaxEthernetLength);
  f.payload = random_bytes(rng, uniform<std::size_t>(rng, 0, cap));
  return f;
}

ArpPacket random_arp(Rng& rng) {
  ArpPacket p;
  p.hardware_type = static_cast<std::uint16_t>(rng());
  p.protocol_type = static_cast<std::uint16_t>(rng());
  p.operation = static_cast<std::uint16_t>(rng());
  p.sender_hardware = random_bytes(rng, 6);
  p.sender_protocol = random_bytes(rng, 4);
  p.target_hardware = random_bytes(rng, 6);
  p.target_protocol = random_bytes(rng, 4);
  return p;
}

Ipv4Header random_ipv4(Rng& rng) {
  Ipv4Header h;
  h.type_of_service = static_cast<std::uint8_t>(rng());
  h.identification = static_cast<std::uint16_t>(rng());
  h.dont_fragment = coin(rng);
  h.more_fragments = coin(rng);
  h.fragment_offset = uniform<std::uint16_t>(rng, 0, 0x1FFF);
  h.ttl = static_cast<std::uint8_t>(rng());
  static constexpr IpProtocol kProtocols[] = {IpProtocol::icmp, IpProtocol::tcp, IpProtocol::udp};
  h.protocol = kProtocols[uniform<std::size_t>(rng, 0, 2)];
  h.source = static_cast<std::uint32_t>(rng());
  h.destination = static_cast<std::uint32_t>(rng());
  h.options = random_words(rng, kMaxIpv4OptionWords);
  h.total_length = uniform<std::uint16_t>(rng, static_cast<std::uint16_t>(h.header_bytes()), 0xFFFF);
  return h;
}

UdpDatagram random_udp(Rng& rng, std::size_t max_payload) {
  UdpDatagram d;
  d.source_port = static_cast<std::uint16_t>(rng());
  d.destination_port = static_cast<std::uint16_t>(rng());
  d.payload = random_bytes(rng, uniform<std::size_t>(rng, 0, max_payload));
  return d;
}

namespace {

TcpSegment random_tcp_header(Rng& rng) {
  TcpSegment s;
  s.source_port = static_cast<std::uint16_t>(rng());
  s.destination_port = static_cast<std::uint16_t>(rng());
  s.sequence_number = static_cast<std::uint32_t>(rng());
  s.acknowledgment_number = static_cast<std::uint32_t>(rng());
  const auto flags = rng();
  s.cwr = flags & 1;
  s.ece = flags & 2;
  s.urg = flags & 4;
  s.ack = flags & 8;
  s.psh = flags & 16;
  s.rst = flags & 32;
  s.syn = flags & 64;
  s.fin = flags & 128;
  s.window = static_cast<std::uint16_t>(rng());
  s.urgent_pointer = s.urg ? static_cast<std::uint16_t>(rng()) : 0;
  return s;
}

}  // namespace

TcpSegment random_tcp(Rng& rng, std::size_t max_payload) {
  TcpSegment s = random_tcp_header(rng);
  s.options = random_words(rng, kMaxTcpOptionWords);
  s.payload = random_bytes(rng, uniform<std::size_t>(rng, 0, max_payload));
  return s;
}

TcpSegment sized_tcp(Rng& rng, std::size_t segment_length) {
  TcpSegment s = random_tcp_header(rng);
  s.payload = random_bytes(rng, segment_length < 20 ? 0 : segment_length - 20);
  return s;
}

}  // namespace biformat::net
