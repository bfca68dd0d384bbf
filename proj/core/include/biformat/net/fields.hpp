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

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "biformat/net/packets.hpp"

namespace biformat::net {

// Stable, ordered field names for each record type. Integers, booleans and
// text (addresses as a.b.c.d or aa:bb:..., byte strings as hex).
using FieldValue = std::variant<std::uint64_t, bool, std::string>;

struct Field {
  std::string name;
  FieldValue value;
};

using Fields = std::vector<Field>;

// Field text keyed by name, as read from key=value input. Derived fields
// (version, ihl, length, data_offset, address lengths) may be present and
// are ignored.
using FieldText = std::map<std::string, std::string>;

class FieldError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Fields to_fields(const EthernetFrame& frame);
Fields to_fields(const ArpPacket& packet);
Fields to_fields(const Ipv4Header& header);
Fields to_fields(const UdpDatagram& datagram);
Fields to_fields(const TcpSegment& segment);

// Each throws FieldError on a missing or malformed field.
EthernetFrame ethernet_from_fields(const FieldText& text);
ArpPacket arp_from_fields(const FieldText& text);
Ipv4Header ipv4_from_fields(const FieldText& text);
UdpDatagram udp_from_fields(const FieldText& text);
TcpSegment tcp_from_fields(const FieldText& text);

std::string render(const FieldValue& value);

std::string to_hex(const std::vector<std::uint8_t>& bytes);
// Accepts whitespace between digits and optional 0x prefixes.
std::vector<std::uint8_t> parse_hex(const std::string& text);

std::string format_ipv4_address(std::uint32_t address);
std::uint32_t parse_ipv4_address(const std::string& text);
std::string format_mac(std::uint64_t mac);
std::uint64_t parse_mac(const std::string& text);

std::string_view protocol_name(IpProtocol protocol);

}  // namespace biformat::net
