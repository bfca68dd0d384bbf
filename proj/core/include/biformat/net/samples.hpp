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
#include <random>
#include <vector>

#include "biformat/net/packets.hpp"

namespace biformat::net {

// Random well-formed records, for property tests and benchmarks.
using Rng = std::mt19937_64;

std::vector<std::uint8_t> random_bytes(Rng& rng, std::size_t count);

// Half length-tagged (payload <= max_payload, capped at 1500), half
// protocol-tagged with an EtherType >= 1536.
EthernetFrame random_ethernet(Rng& rng, std::size_t max_payload = 1500);
ArpPacket random_arp(Rng& rng);
Ipv4Header random_ipv4(Rng& rng);
UdpDatagram random_udp(Rng& rng, std::size_t max_payload = 1472);
// urgent_pointer is nonzero only when urg is set.
TcpSegment random_tcp(Rng& rng, std::size_t max_payload = 1460);

// A TCP segment of exactly `segment_length` bytes (at least 20).
TcpSegment sized_tcp(Rng& rng, std::size_t segment_length);

}  // namespace biformat::net
