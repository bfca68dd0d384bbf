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

#include "biformat/checksum.hpp"

namespace biformat {

std::uint16_t ones_complement_fold(std::span<const std::uint8_t> bytes) {
  OnesComplementSum sum;
  sum.add(bytes);
  return sum.fold();
}

void OnesComplementSum::add(std::span<const std::uint8_t> bytes) {
  std::size_t i = 0;
  if (odd_ && !bytes.empty()) {
    add_byte(bytes[0]);
    i = 1;
  }
  for (; i + 1 < bytes.size(); i += 2) {
    sum_ += (static_cast<std::uint32_t>(bytes[i]) << 8) | bytes[i + 1];
  }
  if (i < bytes.size()) add_byte(bytes[i]);
}

void OnesComplementSum::add_byte(std::uint8_t byte) {
  sum_ += odd_ ? byte : static_cast<std::uint64_t>(byte) << 8;
  odd_ = !odd_;
}

std::uint16_t OnesComplementSum::fold() const {
  std::uint64_t s = sum_;
  while (s >> 16) s = (s & 0xFFFF) + (s >> 16);
  return static_cast<std::uint16_t>(s);
}

}  // namespace biformat
