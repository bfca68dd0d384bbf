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

#include "biformat/oracle.hpp"

namespace biformat {

std::vector<BitString> all_bitstrings(std::size_t max_bits) {
  std::vector<BitString> out{BitString{}};
  std::size_t level_start = 0;
  for (std::size_t len = 1; len <= max_bits; ++len) {
    const std::size_t level_end = out.size();
    if (out.size() * 2 > kMaxRelationSize) {
      throw EnumerationTooLarge("all_bitstrings: too many inputs");
    }
    for (std::size_t i = level_start; i < level_end; ++i) {
      out.push_back(snoc(out[i], false));
      out.push_back(snoc(out[i], true));
    }
    level_start = level_end;
  }
  return out;
}

}  // namespace biformat
