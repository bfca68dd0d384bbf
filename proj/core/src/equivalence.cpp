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

#include "biformat/equivalence.hpp"

#include <stdexcept>

namespace biformat {

std::vector<std::vector<std::uint8_t>> all_buffers(std::size_t length) {
  if (length > 2) throw std::invalid_argument("all_buffers: at most 2 bytes");
  const std::size_t count = std::size_t{1} << (8 * length);
  std::vector<std::vector<std::uint8_t>> out;
  out.reserve(count);
  for (std::size_t v = 0; v < count; ++v) {
    std::vector<std::uint8_t> bytes(length);
    for (std::size_t i = 0; i < length; ++i) {
      bytes[length - 1 - i] = static_cast<std::uint8_t>(v >> (8 * i));
    }
    out.push_back(std::move(bytes));
  }
  return out;
}

}  // namespace biformat
