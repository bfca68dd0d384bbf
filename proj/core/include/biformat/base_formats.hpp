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

#include <algorithm>
#include <concepts>
#include <cstdio>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "biformat/format.hpp"

namespace biformat {

namespace detail {

// Reference-path helpers: every bit goes through snoc/unfold.
inline void put_bits(BitString& out, std::uint64_t value, unsigned width) {
  for (unsigned i = width; i > 0; --i) out = snoc(std::move(out), (value >> (i - 1)) & 1);
}

inline std::optional<std::uint64_t> take_bits(BitInput& in, unsigned width) {
  if (in.rest.length_bits() < width) return std::nullopt;
  std::uint64_t value = 0;
  for (unsigned i = 0; i < width; ++i) {
    auto step = unfold(std::move(in.rest));
    value = (value << 1) | static_cast<std::uint64_t>(step->first);
    in.rest = std::move(step->second);
  }
  in.offset += width;
  return value;
}

inline std::uint64_t low_bits(std::uint64_t value, unsigned width) {
  return width >= 64 ? value : value & ((std::uint64_t{1} << width) - 1);
}

// Binary expansion by repeated halving; the relational meaning of a word,
// computed independently of put_bits.
inline BitString word_target(std::uint64_t value, unsigned width) {
  std::string digits(width, '0');
  for (unsigned i = 0; i < width; ++i) {
    digits[width - 1 - i] = static_cast<char>('0' + value % 2);
    value /= 2;
  }
  return BitString::from_digits(digits);
}

inline void check_width(unsigned width, unsigned limit, const char* who) {
  if (width > limit) throw std::invalid_argument(std::string(who) + ": width out of range");
}

template <class E, class Ctx>
Status encode_list_bits(const Format<E, Ctx>& elem, const std::vector<E>& items, BitString& out,
                        Ctx& ctx) {
  for (const auto& item : items) {
    if (auto s = elem.encode_bits(item, out, ctx); !s) return s;
  }
  return success();
}

template <class E, class Ctx>
Status encode_list_aligned(const Format<E, Ctx>& elem, const std::vector<E>& items,
                           std::span<std::uint8_t> buf, BitCursor& cur, Ctx& ctx) {
  for (const auto& item : items) {
    if (auto s = elem.encode_aligned(item, buf, cur, ctx); !s) return s;
  }
  return success();
}

// Reservation bound so that a garbage count cannot allocate unboundedly.
inline std::size_t plausible_count(std::size_t count, std::size_t remaining_bits,
                                   std::size_t elem_min_bits) {
  if (elem_min_bits == 0) return std::min<std::size_t>(count, 1024);
  return std::min(count, remaining_bits / elem_min_bits);
}

template <class E, class Ctx>
Result<std::vector<E>> decode_list_bits(const Format<E, Ctx>& elem, std::size_t count,
                                        BitInput& in, Ctx& ctx) {
  std::vector<E> items;
  items.reserve(plausible_count(count, in.rest.length_bits(), elem.meta().min_bits));
  for (std::size_t i = 0; i < count; ++i) {
    auto v = elem.decode_bits(in, ctx);
    if (!v) return v.failure();
    items.push_back(std::move(v).value());
  }
  return items;
}

template <class E, class Ctx>
Result<std::vector<E>> decode_list_aligned(const Format<E, Ctx>& elem, std::size_t count,
                                           std::span<const std::uint8_t> buf, BitCursor& cur,
                                           Ctx& ctx) {
  std::vector<E> items;
  items.reserve(plausible_count(count, remaining_bits(buf, cur), elem.meta().min_bits));
  for (std::size_t i = 0; i < count; ++i) {
    auto v = elem.decode_aligned(buf, cur, ctx);
    if (!v) return v.failure();
    items.push_back(std::move(v).value());
  }
  return items;
}

template <class E, class Ctx>
std::vector<BitString> relate_list(const Format<E, Ctx>& elem, const std::vector<E>& items) {
  std::vector<BitString> targets{BitString{}};
  for (const auto& item : items) targets = concat_product(targets, elem.relate(item));
  return targets;
}

inline Status encode_bytes_bits(const std::vector<std::uint8_t>& bytes, BitString& out) {
  out = append(std::move(out), from_bytes(bytes));
  return success();
}

inline Result<std::vector<std::uint8_t>> decode_bytes_bits(std::size_t count, BitInput& in) {
  const std::size_t start = in.offset;
  if (count > in.rest.length_bits() / 8) return fail(Reason::short_input, start);
  std::vector<std::uint8_t> bytes(count);
  for (auto& b : bytes) b = static_cast<std::uint8_t>(*take_bits(in, 8));
  return bytes;
}

}  // namespace detail

// Fixed-width unsigned word, most significant bit first. Only values below
// 2^width belong to the format; encoding a wider value fails with
// constraint-violation.
template <std::unsigned_integral T = std::uint64_t, class Ctx = Unit>
Format<T, Ctx> word(unsigned width) {
  detail::check_width(width, std::numeric_limits<T>::digits, "word");
  return Format<T, Ctx>(
      leaf_meta("word(" + std::to_string(width) + ")", width, width),
      [width](const T& v, BitString& out, Ctx&) -> Status {
        if (detail::low_bits(v, width) != v) return fail(Reason::constraint_violation, out.length_bits());
        detail::put_bits(out, v, width);
        return success();
      },
      [width](BitInput& in, Ctx&) -> Result<T> {
        const std::size_t start = in.offset;
        auto v = detail::take_bits(in, width);
        if (!v) return fail(Reason::short_input, start);
        return static_cast<T>(*v);
      },
      [width](const T& v, std::span<std::uint8_t> buf, BitCursor& cur, Ctx&) -> Status {
        if (detail::low_bits(v, width) != v) return fail(Reason::constraint_violation, cur.bit_position());
        if (!write_bits(buf, cur, v, width)) return fail(Reason::buffer_overflow, cur.bit_position());
        return success();
      },
      [width](std::span<const std::uint8_t> buf, BitCursor& cur, Ctx&) -> Result<T> {
        const std::size_t start = cur.bit_position();
        auto v = read_bits(buf, cur, width);
        if (!v) return fail(Reason::short_input, start);
        return static_cast<T>(*v);
      },
      [width](const T& v) {
        if (detail::low_bits(v, width) != v) return std::vector<BitString>{};
        return std::vector<BitString>{detail::word_target(v, width)};
      });
}

// Natural number written modulo 2^width. Values of 2^width or more are in
// the format but share encodings with smaller ones, so a decodable use
// restricts the source to values below 2^width.
template <class Ctx = Unit>
Format<std::uint64_t, Ctx> nat(unsigned width) {
  detail::check_width(width, 64, "nat");
  auto w = word<std::uint64_t, Ctx>(width);
  FormatMeta meta = w.meta();
  meta.name = "nat(" + std::to_string(width) + ")";
  meta.sequence = {meta.name};
  return Format<std::uint64_t, Ctx>(
      std::move(meta),
      [width](const std::uint64_t& v, BitString& out, Ctx&) {
        detail::put_bits(out, detail::low_bits(v, width), width);
        return success();
      },
      [w](BitInput& in, Ctx& ctx) { return w.decode_bits(in, ctx); },
      [width](const std::uint64_t& v, std::span<std::uint8_t> buf, BitCursor& cur,
              Ctx&) -> Status {
        if (!write_bits(buf, cur, detail::low_bits(v, width), width)) {
          return fail(Reason::buffer_overflow, cur.bit_position());
        }
        return success();
      },
      [w](std::span<const std::uint8_t> buf, BitCursor& cur, Ctx& ctx) {
        return w.decode_aligned(buf, cur, ctx);
      },
      [width](const std::uint64_t& v) {
        return std::vector<BitString>{detail::word_target(v, width)};
      });
}

// A fixed bit pattern. Decoding anything else fails with bad-constant.
template <class Ctx = Unit>
Format<Unit, Ctx> constant(unsigned width, std::uint64_t value) {
  detail::check_width(width, 64, "constant");
  if (detail::low_bits(value, width) != value) {
    throw std::invalid_argument("constant: value does not fit in width");
  }
  char hex[24];
  std::snprintf(hex, sizeof hex, "0x%llx", static_cast<unsigned long long>(value));
  return Format<Unit, Ctx>(
      leaf_meta("const(" + std::to_string(width) + ", " + hex + ")", width, width),
      [width, value](const Unit&, BitString& out, Ctx&) {
        detail::put_bits(out, value, width);
        return success();
      },
      [width, value](BitInput& in, Ctx&) -> Result<Unit> {
        const std::size_t start = in.offset;
        auto v = detail::take_bits(in, width);
        if (!v) return fail(Reason::short_input, start);
        if (*v != value) return fail(Reason::bad_constant, start);
        return Unit{};
      },
      [width, value](const Unit&, std::span<std::uint8_t> buf, BitCursor& cur, Ctx&) -> Status {
        if (!write_bits(buf, cur, value, width)) {
          return fail(Reason::buffer_overflow, cur.bit_position());
        }
        return success();
      },
      [width, value](std::span<const std::uint8_t> buf, BitCursor& cur, Ctx&) -> Result<Unit> {
        const std::size_t start = cur.bit_position();
        auto v = read_bits(buf, cur, width);
        if (!v) return fail(Reason::short_input, start);
        if (*v != value) return fail(Reason::bad_constant, start);
        return Unit{};
      },
      [width, value](const Unit&) {
        return std::vector<BitString>{detail::word_target(value, width)};
      });
}

// Underspecified bits: the encoder writes zeros, the decoder accepts any
// filling. Relationally, unit is related to all 2^width fillings.
template <class Ctx = Unit>
Format<Unit, Ctx> unused(unsigned width) {
  return Format<Unit, Ctx>(
      leaf_meta("unused(" + std::to_string(width) + ")", width, width),
      [width](const Unit&, BitString& out, Ctx&) {
        for (unsigned i = 0; i < width; ++i) out = snoc(std::move(out), false);
        return success();
      },
      [width](BitInput& in, Ctx&) -> Result<Unit> {
        const std::size_t start = in.offset;
        for (unsigned left = width; left > 0;) {
          const unsigned chunk = left < 64 ? left : 64;
          if (!detail::take_bits(in, chunk)) return fail(Reason::short_input, start);
          left -= chunk;
        }
        return Unit{};
      },
      [width](const Unit&, std::span<std::uint8_t> buf, BitCursor& cur, Ctx&) -> Status {
        const std::size_t start = cur.bit_position();
        if (remaining_bits(buf, cur) < width) return fail(Reason::buffer_overflow, start);
        for (unsigned left = width; left > 0;) {
          const unsigned chunk = left < 64 ? left : 64;
          write_bits(buf, cur, 0, chunk);
          left -= chunk;
        }
        return success();
      },
      [width](std::span<const std::uint8_t> buf, BitCursor& cur, Ctx&) -> Result<Unit> {
        if (remaining_bits(buf, cur) < width) return fail(Reason::short_input, cur.bit_position());
        cur.advance(width);
        return Unit{};
      },
      [width](const Unit&) {
        if (width > 20) throw EnumerationTooLarge("unused: too many fillings to enumerate");
        std::vector<BitString> targets;
        targets.reserve(std::size_t{1} << width);
        for (std::uint64_t v = 0; v < (std::uint64_t{1} << width); ++v) {
          targets.push_back(detail::word_target(v, width));
        }
        return targets;
      });
}

// One bit: 1 for true, 0 for false.
template <class Ctx = Unit>
Format<bool, Ctx> bool_bit() {
  return Format<bool, Ctx>(
      leaf_meta("bool", 1, 1),
      [](const bool& b, BitString& out, Ctx&) {
        out = snoc(std::move(out), b);
        return success();
      },
      [](BitInput& in, Ctx&) -> Result<bool> {
        auto v = detail::take_bits(in, 1);
        if (!v) return fail(Reason::short_input, in.offset);
        return *v == 1;
      },
      [](const bool& b, std::span<std::uint8_t> buf, BitCursor& cur, Ctx&) -> Status {
        if (!write_bits(buf, cur, b ? 1 : 0, 1)) return fail(Reason::buffer_overflow, cur.bit_position());
        return success();
      },
      [](std::span<const std::uint8_t> buf, BitCursor& cur, Ctx&) -> Result<bool> {
        const std::size_t start = cur.bit_position();
        auto v = read_bits(buf, cur, 1);
        if (!v) return fail(Reason::short_input, start);
        return *v == 1;
      },
      [](const bool& b) { return std::vector<BitString>{BitString::from_digits(b ? "1" : "0")}; });
}

template <class E>
struct Codeword {
  E member;
  std::uint64_t code;
};

// Enumerated type: each member is written as its codeword over `width` bits.
// Codes outside the table decode to unknown-enum.
template <class E, class Ctx = Unit>
Format<E, Ctx> enum_format(unsigned width, std::vector<Codeword<E>> table) {
  detail::check_width(width, 64, "enum_format");
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (detail::low_bits(table[i].code, width) != table[i].code) {
      throw std::invalid_argument("enum_format: code does not fit in width");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (table[j].code == table[i].code || table[j].member == table[i].member) {
        throw std::invalid_argument("enum_format: duplicate member or code");
      }
    }
  }
  auto code_of = [table](const E& e) -> std::optional<std::uint64_t> {
    for (const auto& c : table) {
      if (c.member == e) return c.code;
    }
    return std::nullopt;
  };
  auto member_of = [table](std::uint64_t code) -> std::optional<E> {
    for (const auto& c : table) {
      if (c.code == code) return c.member;
    }
    return std::nullopt;
  };
  return Format<E, Ctx>(
      leaf_meta("enum(" + std::to_string(width) + ")", width, width),
      [width, code_of](const E& e, BitString& out, Ctx&) -> Status {
        auto code = code_of(e);
        if (!code) return fail(Reason::unknown_enum, out.length_bits());
        detail::put_bits(out, *code, width);
        return success();
      },
      [width, member_of](BitInput& in, Ctx&) -> Result<E> {
        const std::size_t start = in.offset;
        auto v = detail::take_bits(in, width);
        if (!v) return fail(Reason::short_input, start);
        auto e = member_of(*v);
        if (!e) return fail(Reason::unknown_enum, start);
        return *e;
      },
      [width, code_of](const E& e, std::span<std::uint8_t> buf, BitCursor& cur, Ctx&) -> Status {
        auto code = code_of(e);
        if (!code) return fail(Reason::unknown_enum, cur.bit_position());
        if (!write_bits(buf, cur, *code, width)) {
          return fail(Reason::buffer_overflow, cur.bit_position());
        }
        return success();
      },
      [width, member_of](std::span<const std::uint8_t> buf, BitCursor& cur, Ctx&) -> Result<E> {
        const std::size_t start = cur.bit_position();
        auto v = read_bits(buf, cur, width);
        if (!v) return fail(Reason::short_input, start);
        auto e = member_of(*v);
        if (!e) return fail(Reason::unknown_enum, start);
        return *e;
      },
      [width, code_of](const E& e) {
        auto code = code_of(e);
        if (!code) return std::vector<BitString>{};
        return std::vector<BitString>{detail::word_target(*code, width)};
      });
}

// Exactly `count` elements, each formatted by `elem`. Encoding a list of any
// other length fails with constraint-violation.
template <class E, class Ctx>
Format<std::vector<E>, Ctx> fixed_list(Format<E, Ctx> elem, std::size_t count) {
  using L = std::vector<E>;
  FormatMeta meta = leaf_meta(
      "list(" + elem.meta().name + ", " + std::to_string(count) + ")", elem.meta().min_bits * count,
      elem.meta().max_bits ? std::optional<std::size_t>(*elem.meta().max_bits * count)
                           : std::nullopt);
  if (elem.meta().residue) meta.residue = static_cast<unsigned>((*elem.meta().residue * count) % 8);
  meta.needs_byte_alignment = elem.meta().needs_byte_alignment && count > 0;
  typename Format<L, Ctx>::RelationFn relation;
  if (elem.has_relation()) {
    relation = [elem, count](const L& items) {
      if (items.size() != count) return std::vector<BitString>{};
      return detail::relate_list(elem, items);
    };
  }
  return Format<L, Ctx>(
      std::move(meta),
      [elem, count](const L& items, BitString& out, Ctx& ctx) -> Status {
        if (items.size() != count) return fail(Reason::constraint_violation, out.length_bits());
        return detail::encode_list_bits(elem, items, out, ctx);
      },
      [elem, count](BitInput& in, Ctx& ctx) { return detail::decode_list_bits(elem, count, in, ctx); },
      [elem, count](const L& items, std::span<std::uint8_t> buf, BitCursor& cur, Ctx& ctx) -> Status {
        if (items.size() != count) return fail(Reason::constraint_violation, cur.bit_position());
        return detail::encode_list_aligned(elem, items, buf, cur, ctx);
      },
      [elem, count](std::span<const std::uint8_t> buf, BitCursor& cur, Ctx& ctx) {
        return detail::decode_list_aligned(elem, count, buf, cur, ctx);
      },
      std::move(relation));
}

// `count` raw bytes. Starts on a byte boundary; sequencing it after a format
// of unknown or unaligned length is rejected at construction.
template <class Ctx = Unit>
Format<std::vector<std::uint8_t>, Ctx> bytes_exact(std::size_t count) {
  using B = std::vector<std::uint8_t>;
  FormatMeta meta = leaf_meta("bytes(" + std::to_string(count) + ")", count * 8, count * 8);
  meta.needs_byte_alignment = count > 0;
  return Format<B, Ctx>(
      std::move(meta),
      [count](const B& bytes, BitString& out, Ctx&) -> Status {
        if (bytes.size() != count) return fail(Reason::constraint_violation, out.length_bits());
        return detail::encode_bytes_bits(bytes, out);
      },
      [count](BitInput& in, Ctx&) { return detail::decode_bytes_bits(count, in); },
      [count](const B& bytes, std::span<std::uint8_t> buf, BitCursor& cur, Ctx&) -> Status {
        if (bytes.size() != count) return fail(Reason::constraint_violation, cur.bit_position());
        if (!write_bytes(buf, cur, bytes)) return fail(Reason::buffer_overflow, cur.bit_position());
        return success();
      },
      [count](std::span<const std::uint8_t> buf, BitCursor& cur, Ctx&) -> Result<B> {
        const std::size_t start = cur.bit_position();
        B out;
        if (!read_bytes(buf, cur, count, out)) return fail(Reason::short_input, start);
        return out;
      },
      [count](const B& bytes) {
        if (bytes.size() != count) return std::vector<BitString>{};
        return std::vector<BitString>{from_bytes(bytes)};
      });
}

}  // namespace biformat
