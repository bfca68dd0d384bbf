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
#include <vector>

#include "biformat/format.hpp"
#include "biformat/net/packets.hpp"

namespace biformat::net {

// The EtherType field selects between a length-tagged frame (payload of
// that many bytes) and a protocol-tagged frame whose payload fills the rest
// of a frame of `frame_length` bytes. Tags 1501..1535 are rejected.
Format<EthernetFrame> ethernet_format(std::size_t frame_length);

// ARP for Ethernet hardware and IPv4 protocol addresses.
Format<ArpPacket> arp_format();

// IPv4 header with options. The checksum covers the 4*IHL header bytes (at
// least 20, so a damaged IHL still reports bad-checksum) and is verified
// before any field is parsed.
Format<Ipv4Header> ipv4_format();

// UDP with the checksum computed over `pseudo` and the whole datagram. The
// datagram occupies `pseudo.length` bytes; a length field that disagrees is
// a constraint-violation.
Format<UdpDatagram> udp_format(const Pseudoheader& pseudo);

// TCP segment of exactly `segment_length` bytes, checksummed with `pseudo`.
Format<TcpSegment> tcp_format(const Pseudoheader& pseudo, std::size_t segment_length);

Format<IpProtocol> ip_protocol_format();

// Wire bits a format accepts with any value and re-encodes as zero.
struct UnusedBits {
  std::size_t byte;
  std::uint8_t mask;
};

std::vector<UnusedBits> ipv4_unused_bits();  // reserved flag bit
std::vector<UnusedBits> tcp_unused_bits();   // reserved bits after the data offset

}  // namespace biformat::net
