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
#include <vector>

namespace biformat::net {

// Payload of the EtherType field: either a protocol constant (>= 1536) or,
// when absent, the length of the payload (<= 1500).
struct EthernetFrame {
  std::uint64_t destination = 0;  // 48-bit MAC
  std::uint64_t source = 0;       // 48-bit MAC
  std::optional<std::uint16_t> ethertype;
  std::vector<std::uint8_t> payload;

  friend bool operator==(const EthernetFrame&, const EthernetFrame&) = default;
};

inline constexpr std::size_t kEthernetHeaderBytes = 14;
inline constexpr std::uint16_t kMaxEthernetLength = 1500;
inline constexpr std::uint16_t kMinEtherType = 1536;

// Address lengths are those of the address vectors; only the Ethernet/IPv4
// instantiation (6 and 4 bytes) belongs to the format.
struct ArpPacket {
  std::uint16_t hardware_type = 1;
  std::uint16_t protocol_type = 0x0800;
  std::uint16_t operation = 1;
  std::vector<std::uint8_t> sender_hardware;
  std::vector<std::uint8_t> sender_protocol;
  std::vector<std::uint8_t> target_hardware;
  std::vector<std::uint8_t> target_protocol;

  friend bool operator==(const ArpPacket&, const ArpPacket&) = default;
};

enum class IpProtocol : std::uint8_t { icmp = 1, tcp = 6, udp = 17 };

// The header checksum and the IHL are derived when encoding; the reserved
// flag bit is not stored.
struct Ipv4Header {
  std::uint8_t type_of_service = 0;
  std::uint16_t total_length = 20;
  std::uint16_t identification = 0;
  bool dont_fragment = false;
  bool more_fragments = false;
  std::uint16_t fragment_offset = 0;  // 13 bits
  std::uint8_t ttl = 64;
  IpProtocol protocol = IpProtocol::udp;
  std::uint32_t source = 0;
  std::uint32_t destination = 0;
  std::vector<std::uint32_t> options;  // at most 10 words

  std::size_t ihl() const { return 5 + options.size(); }
  std::size_t header_bytes() const { return 4 * ihl(); }

  friend bool operator==(const Ipv4Header&, const Ipv4Header&) = default;
};

inline constexpr std::size_t kMaxIpv4OptionWords = 10;

// IP-layer data folded into TCP and UDP checksums but never transmitted.
struct Pseudoheader {
  std::uint32_t source = 0;
  std::uint32_t destination = 0;
  IpProtocol protocol = IpProtocol::udp;
  std::uint16_t length = 0;

  // source, destination, zero byte, protocol, 16-bit length.
  std::vector<std::uint8_t> bytes() const;
};

// The length field is derived from the payload.
struct UdpDatagram {
  std::uint16_t source_port = 0;
  std::uint16_t destination_port = 0;
  std::vector<std::uint8_t> payload;

  std::size_t length() const { return 8 + payload.size(); }

  friend bool operator==(const UdpDatagram&, const UdpDatagram&) = default;
};

// The data offset is derived from the options; the four reserved bits are
// not stored. urgent_pointer must be zero unless urg is set.
struct TcpSegment {
  std::uint16_t source_port = 0;
  std::uint16_t destination_port = 0;
  std::uint32_t sequence_number = 0;
  std::uint32_t acknowledgment_number = 0;
  bool cwr = false;
  bool ece = false;
  bool urg = false;
  bool ack = false;
  bool psh = false;
  bool rst = false;
  bool syn = false;
  bool fin = false;
  std::uint16_t window = 0;
  std::uint16_t urgent_pointer = 0;
  std::vector<std::uint32_t> options;  // at most 10 words
  std::vector<std::uint8_t> payload;

  std::size_t data_offset() const { return 5 + options.size(); }
  std::size_t length() const { return 4 * data_offset() + payload.size(); }

  friend bool operator==(const TcpSegment&, const TcpSegment&) = default;
};

inline constexpr std::size_t kMaxTcpOptionWords = 10;

Pseudoheader pseudoheader_for(const Ipv4Header& ip, std::size_t segment_length);

}  // namespace biformat::net
