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

#include "biformat/format.hpp"

#include <algorithm>

namespace biformat {

std::string_view to_string(Reason reason) {
  switch (reason) {
    case Reason::short_input:
      return "short-input";
    case Reason::constraint_violation:
      return "constraint-violation";
    case Reason::bad_constant:
      return "bad-constant";
    case Reason::bad_checksum:
      return "bad-checksum";
    case Reason::unknown_enum:
      return "unknown-enum";
    case Reason::no_union_branch:
      return "no-union-branch";
    case Reason::buffer_overflow:
      return "buffer-overflow";
  }
  return "unknown";
}

std::string FormatMeta::structure() const {
  if (sequence.empty()) return name;
  std::string out = sequence.back();
  for (auto it = sequence.rbegin() + 1; it != sequence.rend(); ++it) {
    out = *it + " ++ " + (out.find(" ++ ") == std::string::npos ? out : "(" + out + ")");
  }
  return out;
}

FormatMeta leaf_meta(std::string name, std::size_t min_bits, std::optional<std::size_t> max_bits) {
  FormatMeta meta;
  meta.name = std::move(name);
  meta.min_bits = min_bits;
  meta.max_bits = max_bits;
  if (max_bits && *max_bits == min_bits) meta.residue = static_cast<unsigned>(min_bits % 8);
  meta.sequence = {meta.name};
  return meta;
}

FormatMeta sequence_meta(const FormatMeta& first, const FormatMeta& second) {
  FormatMeta meta;
  meta.min_bits = first.min_bits + second.min_bits;
  if (first.max_bits && second.max_bits) meta.max_bits = *first.max_bits + *second.max_bits;
  if (first.residue && second.residue) meta.residue = (*first.residue + *second.residue) % 8;
  meta.needs_byte_alignment = first.needs_byte_alignment ||
                              (second.needs_byte_alignment && first.residue == 0u);
  if (first.checksum_slot) {
    meta.checksum_slot = first.checksum_slot;
  } else if (second.checksum_slot && first.constant_size()) {
    meta.checksum_slot = first.min_bits + *second.checksum_slot;
  }
  // Right association: (a ++ b) ++ c and a ++ (b ++ c) flatten alike.
  meta.sequence = first.sequence;
  meta.sequence.insert(meta.sequence.end(), second.sequence.begin(), second.sequence.end());
  meta.name = meta.structure();
  return meta;
}

FormatMeta alternative_meta(std::string name, const FormatMeta& left, const FormatMeta& right) {
  FormatMeta meta;
  meta.name = std::move(name);
  meta.min_bits = std::min(left.min_bits, right.min_bits);
  if (left.max_bits && right.max_bits) meta.max_bits = std::max(*left.max_bits, *right.max_bits);
  if (left.residue && left.residue == right.residue) meta.residue = left.residue;
  meta.needs_byte_alignment = left.needs_byte_alignment || right.needs_byte_alignment;
  meta.sequence = {meta.name};
  return meta;
}

std::vector<BitString> concat_product(const std::vector<BitString>& firsts,
                                      const std::vector<BitString>& seconds) {
  if (!firsts.empty() && seconds.size() > kMaxRelationSize / firsts.size()) {
    throw EnumerationTooLarge("relation exceeds the enumeration guard");
  }
  std::vector<BitString> out;
  out.reserve(firsts.size() * seconds.size());
  for (const auto& a : firsts) {
    for (const auto& b : seconds) out.push_back(append(a, b));
  }
  return out;
}

}  // namespace biformat
