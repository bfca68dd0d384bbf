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

#include <algorithm>
#include <chrono>
#include <vector>

#include "biformat/format.hpp"
#include "biformat/net/formats.hpp"
#include "biformat/net/samples.hpp"
#include "biformat_cli/cli.hpp"

namespace biformat::cli {

namespace {

using Clock = std::chrono::steady_clock;

// Keeps results observable so the timed calls are not optimized away.
volatile std::size_t g_sink = 0;

std::size_t batch_size(std::size_t iterations) {
  return std::clamp<std::size_t>(iterations / 100, 1, 1000);
}

// Median over batches of the mean time per call within a batch.
template <class Body>
double median_ns(std::size_t iterations, Body body) {
  const std::size_t batch = batch_size(iterations);
  std::vector<double> samples;
  for (std::size_t done = 0; done < iterations;) {
    const std::size_t n = std::min(batch, iterations - done);
    const auto start = Clock::now();
    for (std::size_t i = 0; i < n; ++i) body();
    const std::chrono::duration<double, std::nano> elapsed = Clock::now() - start;
    samples.push_back(elapsed.count() / static_cast<double>(n));
    done += n;
  }
  auto mid = samples.begin() + static_cast<std::ptrdiff_t>(samples.size() / 2);
  std::nth_element(samples.begin(), mid, samples.end());
  return *mid;
}

template <class S>
std::optional<BenchResult> time_format(const std::string& name, const Format<S>& format,
                                       const S& source, std::size_t iterations) {
  std::vector<std::uint8_t> buffer(70000);
  auto first = encode_aligned(format, source, buffer);
  if (!first) return std::nullopt;
  const std::size_t bytes = first->written_bytes();
  const std::vector<std::uint8_t> packet(buffer.begin(), buffer.begin() + static_cast<long>(bytes));
  const BitString bits = from_bytes(packet);

  BenchResult r;
  r.format = name;
  r.packet_bytes = bytes;
  r.iterations = iterations;
  r.fast_encode_ns = median_ns(iterations, [&] {
    auto e = encode_aligned(format, source, std::span<std::uint8_t>(buffer).first(bytes));
    g_sink = g_sink + (e ? e->written_bits : 0);
  });
  r.fast_decode_ns = median_ns(iterations, [&] {
    auto d = decode_aligned(format, std::span<const std::uint8_t>(packet));
    g_sink = g_sink + (d ? d->consumed_bits : 0);
  });
  r.reference_decode_ns = median_ns(iterations, [&] {
    auto d = decode_bits(format, bits);
    g_sink = g_sink + (d ? d->consumed_bits : 0);
  });
  return r;
}

}  // namespace

std::optional<BenchResult> run_bench(const std::string& format, std::size_t size,
                                     std::size_t iterations) {
  if (iterations == 0) return std::nullopt;
  net::Rng rng(42);
  if (format == "ethernet") {
    const std::size_t frame = std::clamp<std::size_t>(size, net::kEthernetHeaderBytes,
                                                      net::kEthernetHeaderBytes + 1500);
    net::EthernetFrame f{0x0000AABBCCDDEEFF, 0x0000112233445566, 0x0800,
                         net::random_bytes(rng, frame - net::kEthernetHeaderBytes)};
    return time_format(format, net::ethernet_format(frame), f, iterations);
  }
  if (format == "arp") return time_format(format, net::arp_format(), net::random_arp(rng), iterations);
  if (format == "ipv4") {
    net::Ipv4Header h = net::random_ipv4(rng);
    const std::size_t words = std::min<std::size_t>((std::max<std::size_t>(size, 20) - 20) / 4,
                                                    net::kMaxIpv4OptionWords);
    h.options.assign(words, 0x01010101);
    h.total_length = static_cast<std::uint16_t>(std::max<std::size_t>(h.total_length, h.header_bytes()));
    return time_format(format, net::ipv4_format(), h, iterations);
  }
  if (format == "udp") {
    const std::size_t length = std::clamp<std::size_t>(size, 8, 0xFFFF);
    net::UdpDatagram d{5353, 53, net::random_bytes(rng, length - 8)};
    net::Pseudoheader p{0x0A000001, 0x0A000002, net::IpProtocol::udp,
                        static_cast<std::uint16_t>(length)};
    return time_format(format, net::udp_format(p), d, iterations);
  }
  if (format == "tcp") {
    const std::size_t length = std::clamp<std::size_t>(size, 20, 0xFFFF);
    net::TcpSegment s = net::sized_tcp(rng, length);
    net::Pseudoheader p{0x0A000001, 0x0A000002, net::IpProtocol::tcp,
                        static_cast<std::uint16_t>(length)};
    return time_format(format, net::tcp_format(p, length), s, iterations);
  }
  return std::nullopt;
}

}  // namespace biformat::cli
