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

#include "biformat/net/fields.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <sstream>

namespace biformat::net {

namespace {

std::uint64_t parse_uint(const std::string& name, const std::string& text, std::uint64_t max) {
  std::string_view s = text;
  int base = 10;
  if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
    s.remove_prefix(2);
    base = 16;
  }
  std::uint64_t value = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value, base);
  if (s.empty() || ec != std::errc{} || end != s.data() + s.size()) {
    throw FieldError("field " + name + ": not a number: " + text);
  }
  if (value > max) throw FieldError("field " + name + ": out of range: " + text);
  return value;
}

bool parse_bool(const std::string& name, const std::string& text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw FieldError("field " + name + ": not a boolean: " + text);
}

const std::string& require(const FieldText& text, const std::string& name) {
  auto it = text.find(name);
  if (it == text.end()) throw FieldError("missing field " + name);
  return it->second;
}

std::uint64_t get_uint(const FieldText& text, const std::string& name, std::uint64_t max) {
  return parse_uint(name, require(text, name), max);
}

std::uint64_t get_uint_or(const FieldText& text, const std::string& name, std::uint64_t max,
                          std::uint64_t fallback) {
  return text.count(name) ? get_uint(text, name, max) : fallback;
}

bool get_bool_or(const FieldText& text, const std::string& name, bool fallback) {
  auto it = text.find(name);
  return it == text.end() ? fallback : parse_bool(name, it->second);
}

std::vector<std::uint8_t> get_bytes_or_empty(const FieldText& text, const std::string& name) {
  auto it = text.find(name);
  if (it == text.end()) return {};
  try {
    return parse_hex(it->second);
  } catch (const FieldError& e) {
    throw FieldError("field " + name + ": " + e.what());
  }
}

std::string words_to_text(const std::vector<std::uint32_t>& words) {
  std::string out;
  for (std::uint32_t w : words) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%s0x%08x", out.empty() ? "" : ",", w);
    out += buf;
  }
  return out;
}

std::vector<std::uint32_t> get_words(const FieldText& text, const std::string& name) {
  std::vector<std::uint32_t> words;
  auto it = text.find(name);
  if (it == text.end()) return words;
  std::stringstream ss(it->second);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::string trimmed;
    for (char c : item) {
      if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
    }
    if (trimmed.empty()) continue;
    words.push_back(static_cast<std::uint32_t>(parse_uint(name, trimmed, 0xFFFFFFFFu)));
  }
  return words;
}

// Hardware/protocol address: MAC or dotted quad when the length matches,
// hex otherwise.
std::string address_text(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() == 4) {
    return format_ipv4_address(static_cast<std::uint32_t>(bytes[0]) << 24 | bytes[1] << 16 |
                               bytes[2] << 8 | bytes[3]);
  }
  if (bytes.size() == 6) {
    std::uint64_t mac = 0;
    for (auto b : bytes) mac = (mac << 8) | b;
    return format_mac(mac);
  }
  return to_hex(bytes);
}

std::vector<std::uint8_t> parse_address(const std::string& name, const std::string& text) {
  try {
    if (text.find('.') != std::string::npos) {
      const std::uint32_t a = parse_ipv4_address(text);
      return {static_cast<std::uint8_t>(a >> 24), static_cast<std::uint8_t>(a >> 16),
              static_cast<std::uint8_t>(a >> 8), static_cast<std::uint8_t>(a)};
    }
    if (text.find(':') != std::string::npos) {
      const std::uint64_t m = parse_mac(text);
      std::vector<std::uint8_t> out(6);
      for (int i = 0; i < 6; ++i) out[i] = static_cast<std::uint8_t>(m >> (8 * (5 - i)));
      return out;
    }
    return parse_hex(text);
  } catch (const FieldError& e) {
    throw FieldError("field " + name + ": " + e.what());
  }
}

IpProtocol parse_protocol(const std::string& text) {
  if (text == "icmp" || text == "1") return IpProtocol::icmp;
  if (text == "tcp" || text == "6") return IpProtocol::tcp;
  if (text == "udp" || text == "17") return IpProtocol::udp;
  throw FieldError("field protocol: unsupported protocol " + text);
}

std::string hex16(std::uint64_t v) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "0x%04llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

std::string_view protocol_name(IpProtocol protocol) {
  switch (protocol) {
    case IpProtocol::icmp:
      return "icmp";
    case IpProtocol::tcp:
      return "tcp";
    case IpProtocol::udp:
      return "udp";
  }
  return "unknown";
}

std::string render(const FieldValue& value) {
  if (const auto* n = std::get_if<std::uint64_t>(&value)) return std::to_string(*n);
  if (const auto* b = std::get_if<bool>(&value)) return *b ? "true" : "false";
  return std::get<std::string>(value);
}

std::string to_hex(const std::vector<std::uint8_t>& bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out += kDigits[b >> 4];
    out += kDigits[b & 15];
  }
  return out;
}

std::vector<std::uint8_t> parse_hex(const std::string& text) {
  std::string digits;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '0' && i + 1 < text.size() && (text[i + 1] == 'x' || text[i + 1] == 'X')) {
      ++i;
      continue;
    }
    if (!std::isxdigit(static_cast<unsigned char>(c))) {
      throw FieldError(std::string("invalid hex character '") + c + "'");
    }
    digits += c;
  }
  if (digits.size() % 2 != 0) throw FieldError("odd number of hex digits");
  std::vector<std::uint8_t> out(digits.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(std::stoul(digits.substr(2 * i, 2), nullptr, 16));
  }
  return out;
}

std::string format_ipv4_address(std::uint32_t a) {
  return std::to_string(a >> 24) + "." + std::to_string((a >> 16) & 255) + "." +
         std::to_string((a >> 8) & 255) + "." + std::to_string(a & 255);
}

std::uint32_t parse_ipv4_address(const std::string& text) {
  std::uint32_t out = 0;
  std::stringstream ss(text);
  std::string part;
  int parts = 0;
  while (std::getline(ss, part, '.')) {
    out = (out << 8) | static_cast<std::uint32_t>(parse_uint("address", part, 255));
    ++parts;
  }
  if (parts != 4) throw FieldError("not a dotted-quad address: " + text);
  return out;
}

std::string format_mac(std::uint64_t mac) {
  char buf[18];
  std::snprintf(buf, sizeof buf, "%02x:%02x:%02x:%02x:%02x:%02x",
                static_cast<unsigned>((mac >> 40) & 255), static_cast<unsigned>((mac >> 32) & 255),
                static_cast<unsigned>((mac >> 24) & 255), static_cast<unsigned>((mac >> 16) & 255),
                static_cast<unsigned>((mac >> 8) & 255), static_cast<unsigned>(mac & 255));
  return buf;
}

std::uint64_t parse_mac(const std::string& text) {
  std::uint64_t out = 0;
  std::stringstream ss(text);
  std::string part;
  int parts = 0;
  while (std::getline(ss, part, ':')) {
    out = (out << 8) | parse_uint("mac", "0x" + part, 255);
    ++parts;
  }
  if (parts != 6) throw FieldError("not a MAC address: " + text);
  return out;
}

Fields to_fields(const EthernetFrame& f) {
  Fields out{{"destination", format_mac(f.destination)}, {"source", format_mac(f.source)}};
  if (f.ethertype) {
    out.push_back({"tag", std::string("protocol")});
    out.push_back({"ethertype", hex16(*f.ethertype)});
  } else {
    out.push_back({"tag", std::string("length")});
    out.push_back({"length", std::uint64_t{f.payload.size()}});
  }
  out.push_back({"payload", to_hex(f.payload)});
  return out;
}

EthernetFrame ethernet_from_fields(const FieldText& t) {
  EthernetFrame f;
  f.destination = parse_mac(require(t, "destination"));
  f.source = parse_mac(require(t, "source"));
  if (t.count("ethertype")) f.ethertype = static_cast<std::uint16_t>(get_uint(t, "ethertype", 0xFFFF));
  f.payload = get_bytes_or_empty(t, "payload");
  return f;
}

Fields to_fields(const ArpPacket& p) {
  return {{"hardware_type", std::uint64_t{p.hardware_type}},
          {"protocol_type", hex16(p.protocol_type)},
          {"hardware_length", std::uint64_t{p.sender_hardware.size()}},
          {"protocol_length", std::uint64_t{p.sender_protocol.size()}},
          {"operation", std::uint64_t{p.operation}},
          {"sender_hardware", address_text(p.sender_hardware)},
          {"sender_protocol", address_text(p.sender_protocol)},
          {"target_hardware", address_text(p.target_hardware)},
          {"target_protocol", address_text(p.target_protocol)}};
}

ArpPacket arp_from_fields(const FieldText& t) {
  ArpPacket p;
  p.hardware_type = static_cast<std::uint16_t>(get_uint_or(t, "hardware_type", 0xFFFF, 1));
  p.protocol_type = static_cast<std::uint16_t>(get_uint_or(t, "protocol_type", 0xFFFF, 0x0800));
  p.operation = static_cast<std::uint16_t>(get_uint(t, "operation", 0xFFFF));
  p.sender_hardware = parse_address("sender_hardware", require(t, "sender_hardware"));
  p.sender_protocol = parse_address("sender_protocol", require(t, "sender_protocol"));
  p.target_hardware = parse_address("target_hardware", require(t, "target_hardware"));
  p.target_protocol = parse_address("target_protocol", require(t, "target_protocol"));
  return p;
}

Fields to_fields(const Ipv4Header& h) {
  return {{"version", std::uint64_t{4}},
          {"ihl", std::uint64_t{h.ihl()}},
          {"type_of_service", std::uint64_t{h.type_of_service}},
          {"total_length", std::uint64_t{h.total_length}},
          {"identification", std::uint64_t{h.identification}},
          {"dont_fragment", h.dont_fragment},
          {"more_fragments", h.more_fragments},
          {"fragment_offset", std::uint64_t{h.fragment_offset}},
          {"ttl", std::uint64_t{h.ttl}},
          {"protocol", std::string(protocol_name(h.protocol))},
          {"source", format_ipv4_address(h.source)},
          {"destination", format_ipv4_address(h.destination)},
          {"options", words_to_text(h.options)}};
}

Ipv4Header ipv4_from_fields(const FieldText& t) {
  Ipv4Header h;
  h.type_of_service = static_cast<std::uint8_t>(get_uint_or(t, "type_of_service", 255, 0));
  h.identification = static_cast<std::uint16_t>(get_uint_or(t, "identification", 0xFFFF, 0));
  h.dont_fragment = get_bool_or(t, "dont_fragment", false);
  h.more_fragments = get_bool_or(t, "more_fragments", false);
  h.fragment_offset = static_cast<std::uint16_t>(get_uint_or(t, "fragment_offset", 0x1FFF, 0));
  h.ttl = static_cast<std::uint8_t>(get_uint_or(t, "ttl", 255, 64));
  h.protocol = parse_protocol(require(t, "protocol"));
  h.source = parse_ipv4_address(require(t, "source"));
  h.destination = parse_ipv4_address(require(t, "destination"));
  h.options = get_words(t, "options");
  h.total_length = static_cast<std::uint16_t>(
      get_uint_or(t, "total_length", 0xFFFF, h.header_bytes()));
  return h;
}

Fields to_fields(const UdpDatagram& d) {
  return {{"source_port", std::uint64_t{d.source_port}},
          {"destination_port", std::uint64_t{d.destination_port}},
          {"length", std::uint64_t{d.length()}},
          {"payload", to_hex(d.payload)}};
}

UdpDatagram udp_from_fields(const FieldText& t) {
  UdpDatagram d;
  d.source_port = static_cast<std::uint16_t>(get_uint(t, "source_port", 0xFFFF));
  d.destination_port = static_cast<std::uint16_t>(get_uint(t, "destination_port", 0xFFFF));
  d.payload = get_bytes_or_empty(t, "payload");
  return d;
}

Fields to_fields(const TcpSegment& s) {
  return {{"source_port", std::uint64_t{s.source_port}},
          {"destination_port", std::uint64_t{s.destination_port}},
          {"sequence_number", std::uint64_t{s.sequence_number}},
          {"acknowledgment_number", std::uint64_t{s.acknowledgment_number}},
          {"data_offset", std::uint64_t{s.data_offset()}},
          {"cwr", s.cwr},
          {"ece", s.ece},
          {"urg", s.urg},
          {"ack", s.ack},
          {"psh", s.psh},
          {"rst", s.rst},
          {"syn", s.syn},
          {"fin", s.fin},
          {"window", std::uint64_t{s.window}},
          {"urgent_pointer", std::uint64_t{s.urgent_pointer}},
          {"options", words_to_text(s.options)},
          {"payload", to_hex(s.payload)}};
}

TcpSegment tcp_from_fields(const FieldText& t) {
  TcpSegment s;
  s.source_port = static_cast<std::uint16_t>(get_uint(t, "source_port", 0xFFFF));
  s.destination_port = static_cast<std::uint16_t>(get_uint(t, "destination_port", 0xFFFF));
  s.sequence_number = static_cast<std::uint32_t>(get_uint_or(t, "sequence_number", 0xFFFFFFFF, 0));
  s.acknowledgment_number =
      static_cast<std::uint32_t>(get_uint_or(t, "acknowledgment_number", 0xFFFFFFFF, 0));
  s.cwr = get_bool_or(t, "cwr", false);
  s.ece = get_bool_or(t, "ece", false);
  s.urg = get_bool_or(t, "urg", false);
  s.ack = get_bool_or(t, "ack", false);
  s.psh = get_bool_or(t, "psh", false);
  s.rst = get_bool_or(t, "rst", false);
  s.syn = get_bool_or(t, "syn", false);
  s.fin = get_bool_or(t, "fin", false);
  s.window = static_cast<std::uint16_t>(get_uint_or(t, "window", 0xFFFF, 0));
  s.urgent_pointer = static_cast<std::uint16_t>(get_uint_or(t, "urgent_pointer", 0xFFFF, 0));
  s.options = get_words(t, "options");
  s.payload = get_bytes_or_empty(t, "payload");
  return s;
}

}  // namespace biformat::net
