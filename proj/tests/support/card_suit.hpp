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

// A user-defined format outside the base library: card suits written with
// variable-length codes. The code set is not prefix-free, so sequencing it
// yields a format no decoder can invert.

#include <string>
#include <utility>
#include <vector>

#include "biformat/format.hpp"

namespace biformat::testing {

enum class Suit { clubs, diamonds, hearts, spades };

inline std::string suit_code(Suit s) {
  switch (s) {
    case Suit::clubs:
      return "11";
    case Suit::diamonds:
      return "0";
    case Suit::hearts:
      return "1";
    case Suit::spades:
      return "10";
  }
  return "";
}

inline std::string suit_name(Suit s) {
  static const char* const kNames[] = {"clubs", "diamonds", "hearts", "spades"};
  return kNames[static_cast<int>(s)];
}

inline const std::vector<Suit>& all_suits() {
  static const std::vector<Suit> kSuits{Suit::clubs, Suit::diamonds, Suit::hearts, Suit::spades};
  return kSuits;
}

inline Format<Suit> suit_format() {
  // Greedy longest-match decoding; ambiguous by construction.
  auto decode_first = [](bool first, std::optional<bool> second) -> std::pair<Suit, int> {
    if (!first) return {Suit::diamonds, 1};
    if (!second) return {Suit::hearts, 1};
    return {*second ? Suit::clubs : Suit::spades, 2};
  };
  return Format<Suit>(
      leaf_meta("suit", 1, 2),
      [](const Suit& s, BitString& out, Unit&) {
        out = append(std::move(out), BitString::from_digits(suit_code(s)));
        return success();
      },
      [decode_first](BitInput& in, Unit&) -> Result<Suit> {
        auto a = unfold(in.rest);
        if (!a) return fail(Reason::short_input, in.offset);
        auto b = unfold(a->second);
        auto [suit, used] = decode_first(a->first, b ? std::optional<bool>(b->first) : std::nullopt);
        in.rest = used == 1 ? a->second : b->second;
        in.offset += static_cast<std::size_t>(used);
        return suit;
      },
      [](const Suit& s, std::span<std::uint8_t> buf, BitCursor& cur, Unit&) -> Status {
        const std::string code = suit_code(s);
        if (!write_bits(buf, cur, std::stoul(code, nullptr, 2), static_cast<unsigned>(code.size()))) {
          return fail(Reason::buffer_overflow, cur.bit_position());
        }
        return success();
      },
      [decode_first](std::span<const std::uint8_t> buf, BitCursor& cur, Unit&) -> Result<Suit> {
        const std::size_t start = cur.bit_position();
        auto a = read_bits(buf, cur, 1);
        if (!a) return fail(Reason::short_input, start);
        BitCursor peek = cur;
        auto b = read_bits(buf, peek, 1);
        auto [suit, used] =
            decode_first(*a == 1, b ? std::optional<bool>(*b == 1) : std::nullopt);
        if (used == 2) cur = peek;
        return suit;
      },
      [](const Suit& s) { return std::vector<BitString>{BitString::from_digits(suit_code(s))}; });
}

inline std::vector<std::pair<Suit, Suit>> all_suit_pairs() {
  std::vector<std::pair<Suit, Suit>> out;
  for (Suit a : all_suits()) {
    for (Suit b : all_suits()) out.emplace_back(a, b);
  }
  return out;
}

}  // namespace biformat::testing
