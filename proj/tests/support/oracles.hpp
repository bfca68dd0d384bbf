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

// Test-only reference implementations, written independently of the library
// code they check.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "biformat/bitstring.hpp"

namespace biformat::testing {

// One's-complement sum with the carry folded back after every addition.
inline std::uint16_t straight_fold(const std::vector<std::uint8_t>& bytes) {
  std::uint32_t acc = 0;
  for (std::size_t i = 0; i < bytes.size(); i += 2) {
    std::uint32_t word = static_cast<std::uint32_t>(bytes[i]) << 8;
    if (i + 1 < bytes.size()) word |= bytes[i + 1];
    acc += word;
    if (acc > 0xFFFF) acc = (acc & 0xFFFF) + 1;
  }
  return static_cast<std::uint16_t>(acc);
}

// MSB-first digits of the low `width` bits of `value`, by testing bits.
inline std::string binary_digits(std::uint64_t value, unsigned width) {
  std::string out;
  for (unsigned i = width; i > 0; --i) out += ((value >> (i - 1)) & 1) ? '1' : '0';
  return out;
}

inline std::string random_digits(std::mt19937_64& rng, std::size_t max_len) {
  std::string out(std::uniform_int_distribution<std::size_t>(0, max_len)(rng), '0');
  for (auto& c : out) c = (rng() & 1) ? '1' : '0';
  return out;
}

inline std::string bytes_to_digits(const std::vector<std::uint8_t>& bytes) {
  std::string out;
  for (auto b : bytes) out += binary_digits(b, 8);
  return out;
}

}  // namespace biformat::testing
