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

#include "biformat/net/packets.hpp"

namespace biformat::net {

std::vector<std::uint8_t> Pseudoheader::bytes() const {
  return {static_cast<std::uint8_t>(source >> 24),
          static_cast<std::uint8_t>(source >> 16),
          static_cast<std::uint8_t>(source >> 8),
          static_cast<std::uint8_t>(source),
          static_cast<std::uint8_t>(destination >> 24),
          static_cast<std::uint8_t>(destination >> 16),
          static_cast<std::uint8_t>(destination >> 8),
          static_cast<std::uint8_t>(destination),
          0,
          static_cast<std::uint8_t>(protocol),
          static_cast<std::uint8_t>(length >> 8),
          static_cast<std::uint8_t>(length)};
}

Pseudoheader pseudoheader_for(const Ipv4Header& ip, std::size_t segment_length) {
  return Pseudoheader{ip.source, ip.destination, ip.protocol,
                      static_cast<std::uint16_t>(segment_length)};
}

}  // namespace biformat::net
