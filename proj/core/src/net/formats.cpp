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

#include <algorithm>
#include <optional>
#include <tuple>
#include <utility>

#include "biformat/base_formats.hpp"
#include "biformat/checksum.hpp"
#include "biformat/record.hpp"

// Each format body between BEGIN/END markers is pure combinator
// composition; the line counts are reported in README.md.

namespace biformat::net {

namespace {

using std::get;

// n - base, or nothing when the count would be negative.
std::optional<std::size_t> excess(std::uint64_t n, std::uint64_t base) {
  if (n < base) return std::nullopt;
  return static_cast<std::size_t>(n - base);
}

std::optional<std::size_t> exactly(std::uint64_t n) { return static_cast<std::size_t>(n); }

}  // namespace

Format<IpProtocol> ip_protocol_format() {
  return enum_format<IpProtocol>(
      8, {{IpProtocol::icmp, 1}, {IpProtocol::tcp, 6}, {IpProtocol::udp, 17}});
}

// BEGIN FORMAT ethernet
Format<EthernetFrame> ethernet_format(std::size_t frame_length) {
  using F = EthernetFrame;
  auto length_chain = FieldChain<F>{}
      .field(word(48), &F::destination)
      .field(word(48), &F::source)
      .field(nat(16), [](const F& f) { return std::uint64_t{f.payload.size()}; })
      .bytes([](const auto& v) { return exactly(view<2>(v)); }, &F::payload);
  auto length_tagged = record("ethernet-length", std::move(length_chain),
      [](auto&& v) { return F{get<0>(v), get<1>(v), std::nullopt, std::move(get<3>(v))}; },
      [](const auto& v) { return get<2>(v) <= kMaxEthernetLength; });
  auto protocol_chain = FieldChain<F>{}
      .field(word(48), &F::destination)
      .field(word(48), &F::source)
      .field(word<std::uint16_t>(16), [](const F& f) { return f.ethertype.value_or(0); })
      .bytes([frame_length](const auto&) { return excess(frame_length, kEthernetHeaderBytes); },
             &F::payload);
  auto protocol_tagged = record("ethernet-protocol", std::move(protocol_chain),
      [](auto&& v) { return F{get<0>(v), get<1>(v), get<2>(v), std::move(get<3>(v))}; },
      [](const auto& v) { return get<2>(v) >= kMinEtherType; });
  return union_of(
      restrict(length_tagged, [](const F& f) { return !f.ethertype; }, "length-tagged"),
      restrict(protocol_tagged, [](const F& f) { return f.ethertype.has_value(); }, "protocol-tagged"),
      [](const F& f) { return f.ethertype ? Branch::right : Branch::left; },
      discriminate(seq(unused(96), nat(16)), [](const auto& peek) -> std::optional<Branch> {
        if (peek.second <= kMaxEthernetLength) return Branch::left;
        if (peek.second >= kMinEtherType) return Branch::right;
        return std::nullopt;
      }));
}
// END FORMAT

// BEGIN FORMAT arp
Format<ArpPacket> arp_format() {
  using P = ArpPacket;
  auto chain = FieldChain<P>{}
      .field(word<std::uint16_t>(16), &P::hardware_type)
      .field(word<std::uint16_t>(16), &P::protocol_type)
      .field(nat(8), [](const P& p) { return std::uint64_t{p.sender_hardware.size()}; })
      .field(nat(8), [](const P& p) { return std::uint64_t{p.sender_protocol.size()}; })
      .field(word<std::uint16_t>(16), &P::operation)
      .bytes([](const auto& v) { return exactly(view<2>(v)); }, &P::sender_hardware)
      .bytes([](const auto& v) { return exactly(view<3>(v)); }, &P::sender_protocol)
      .bytes([](const auto& v) { return exactly(view<2>(v)); }, &P::target_hardware)
      .bytes([](const auto& v) { return exactly(view<3>(v)); }, &P::target_protocol);
  return record("arp", std::move(chain),
      [](auto&& v) {
        return P{get<0>(v), get<1>(v), get<4>(v), std::move(get<5>(v)), std::move(get<6>(v)),
                 std::move(get<7>(v)), std::move(get<8>(v))};
      },
      [](const auto& v) { return get<2>(v) == 6 && get<3>(v) == 4; });
}
// END FORMAT

// BEGIN FORMAT ipv4
Format<Ipv4Header> ipv4_format() {
  using H = Ipv4Header;
  auto chain = FieldChain<H>{}
      .field(constant(4, 4))
      .field(nat(4), [](const H& h) { return std::uint64_t{h.ihl()}; })
      .field(word<std::uint8_t>(8), &H::type_of_service)
      .field(word<std::uint16_t>(16), &H::total_length)
      .field(word<std::uint16_t>(16), &H::identification)
      .field(unused(1))
      .field(bool_bit(), &H::dont_fragment)
      .field(bool_bit(), &H::more_fragments)
      .field(word<std::uint16_t>(13), &H::fragment_offset)
      .field(word<std::uint8_t>(8), &H::ttl)
      .field(ip_protocol_format(), &H::protocol)
      .checksum_slot()
      .field(word<std::uint32_t>(32), &H::source)
      .field(word<std::uint32_t>(32), &H::destination)
      .counted([](const auto& v) { return excess(view<1>(v), 5); }, word<std::uint32_t>(32),
               &H::options, kMaxIpv4OptionWords);
  auto header = record("ipv4", std::move(chain),
      [](auto&& v) {
        return H{get<2>(v), get<3>(v), get<4>(v), get<6>(v), get<7>(v), get<8>(v),
                 get<9>(v), get<10>(v), get<12>(v), get<13>(v), std::move(get<14>(v))};
      },
      [](const auto& v) { return get<1>(v) <= 15 && get<3>(v) >= 4 * get<1>(v); });
  return ip_checksum_format(header, covered_length(seq(unused(4), nat(4)), [](const auto& p) {
    return exactly(4 * std::max<std::uint64_t>(p.second, 5));
  }));
}
// END FORMAT

// BEGIN FORMAT udp
Format<UdpDatagram> udp_format(const Pseudoheader& pseudo) {
  using D = UdpDatagram;
  auto chain = FieldChain<D>{}
      .field(word<std::uint16_t>(16), &D::source_port)
      .field(word<std::uint16_t>(16), &D::destination_port)
      .field(nat(16), [](const D& d) { return std::uint64_t{d.length()}; })
      .checksum_slot()
      .bytes([](const auto& v) { return excess(view<2>(v), 8); }, &D::payload);
  auto datagram = record("udp", std::move(chain),
      [](auto&& v) { return D{get<0>(v), get<1>(v), std::move(get<4>(v))}; },
      [](const auto& v) { return get<2>(v) <= 0xFFFF; });
  return pseudoheader_checksum_format(pseudo.bytes(), datagram,
                                      fixed_covered_length(pseudo.length));
}
// END FORMAT

// BEGIN FORMAT tcp
Format<TcpSegment> tcp_format(const Pseudoheader& pseudo, std::size_t segment_length) {
  using T = TcpSegment;
  auto chain = FieldChain<T>{}
      .field(word<std::uint16_t>(16), &T::source_port)
      .field(word<std::uint16_t>(16), &T::destination_port)
      .field(word<std::uint32_t>(32), &T::sequence_number)
      .field(word<std::uint32_t>(32), &T::acknowledgment_number)
      .field(nat(4), [](const T& t) { return std::uint64_t{t.data_offset()}; })
      .field(unused(4))
      .field(bool_bit(), &T::cwr).field(bool_bit(), &T::ece).field(bool_bit(), &T::urg)
      .field(bool_bit(), &T::ack).field(bool_bit(), &T::psh).field(bool_bit(), &T::rst)
      .field(bool_bit(), &T::syn).field(bool_bit(), &T::fin)
      .field(word<std::uint16_t>(16), &T::window)
      .checksum_slot()
      .field(word<std::uint16_t>(16), &T::urgent_pointer)
      .counted([](const auto& v) { return excess(view<4>(v), 5); }, word<std::uint32_t>(32),
               &T::options, kMaxTcpOptionWords)
      .bytes([segment_length](const auto& v) { return excess(segment_length, 4 * view<4>(v)); },
             &T::payload);
  auto segment = record("tcp", std::move(chain),
      [](auto&& v) {
        return T{get<0>(v), get<1>(v), get<2>(v), get<3>(v), get<6>(v), get<7>(v),
                 get<8>(v), get<9>(v), get<10>(v), get<11>(v), get<12>(v), get<13>(v),
                 get<14>(v), get<16>(v), std::move(get<17>(v)), std::move(get<18>(v))};
      },
      [](const auto& v) { return get<4>(v) <= 15 && (get<8>(v) || get<16>(v) == 0); });
  return pseudoheader_checksum_format(pseudo.bytes(), segment,
                                      fixed_covered_length(segment_length));
}
// END FORMAT

std::vector<UnusedBits> ipv4_unused_bits() { return {{6, 0x80}}; }

std::vector<UnusedBits> tcp_unused_bits() { return {{12, 0x0F}}; }

}  // namespace biformat::net
