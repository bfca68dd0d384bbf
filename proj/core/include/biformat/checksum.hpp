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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "biformat/bitstring.hpp"
#include "biformat/byte_buffer.hpp"
#include "biformat/format.hpp"

namespace biformat {

// Sums big-endian 16-bit words with end-around carry. An odd trailing byte
// is padded with a zero low byte. Returns the sum, not its complement.
std::uint16_t ones_complement_fold(std::span<const std::uint8_t> bytes);

// Running one's-complement sum over several byte runs. Runs may have odd
// length; word pairing continues across run boundaries.
class OnesComplementSum {
 public:
  void add(std::span<const std::uint8_t> bytes);
  void add_byte(std::uint8_t byte);
  std::uint16_t fold() const;

 private:
  std::uint64_t sum_ = 0;
  bool odd_ = false;
};

// Computes how many bytes the checksum covers by peeking at the input
// (never consuming it). Used by decoders to verify before parsing fields,
// and by encoders to check the emitted region length.
template <class Ctx = Unit>
struct CoveredLength {
  std::function<Result<std::size_t>(BitInput, Ctx)> bits;
  std::function<Result<std::size_t>(std::span<const std::uint8_t>, BitCursor, Ctx)> aligned;
};

namespace detail {

template <class N>
Result<std::size_t> covered_result(const N& n, std::size_t start) {
  if constexpr (requires { n.has_value(); }) {
    if (!n) return fail(Reason::constraint_violation, start);
    return static_cast<std::size_t>(*n);
  } else {
    return static_cast<std::size_t>(n);
  }
}

}  // namespace detail

// Covered byte count derived from a value read by `probe` at the start of
// the region. `bytes_of` maps that value to a byte count, or to an empty
// optional when the value admits no valid region (constraint-violation).
template <class V, class Ctx, class Fn>
CoveredLength<Ctx> covered_length(Format<V, Ctx> probe, Fn bytes_of) {
  return CoveredLength<Ctx>{
      [probe, bytes_of](BitInput in, Ctx ctx) -> Result<std::size_t> {
        const std::size_t start = in.offset;
        auto v = probe.decode_bits(in, ctx);
        if (!v) return v.failure();
        return detail::covered_result(bytes_of(*v), start);
      },
      [probe, bytes_of](std::span<const std::uint8_t> buf, BitCursor cur,
                        Ctx ctx) -> Result<std::size_t> {
        const std::size_t start = cur.bit_position();
        auto v = probe.decode_aligned(buf, cur, ctx);
        if (!v) return v.failure();
        return detail::covered_result(bytes_of(*v), start);
      }};
}

// Covered byte count known out of band (e.g. a pseudoheader length field).
template <class Ctx = Unit>
CoveredLength<Ctx> fixed_covered_length(std::size_t bytes) {
  return CoveredLength<Ctx>{
      [bytes](BitInput, Ctx) -> Result<std::size_t> { return bytes; },
      [bytes](std::span<const std::uint8_t>, BitCursor, Ctx) -> Result<std::size_t> {
        return bytes;
      }};
}

namespace detail {

inline void add_bits_as_bytes(OnesComplementSum& sum, BitString bits) {
  const BitString::Packed packed = to_bytes(bits);
  sum.add(packed.bytes);
}

// Bytes of a byte-multiple region starting at an arbitrary bit position.
inline void add_buffer_region(OnesComplementSum& sum, std::span<const std::uint8_t> buf,
                              BitCursor at, std::size_t count) {
  if (at.byte_aligned()) {
    sum.add(buf.subspan(at.byte_index(), count));
    return;
  }
  for (std::size_t i = 0; i < count; ++i) {
    sum.add_byte(static_cast<std::uint8_t>(*read_bits(buf, at, 8)));
  }
}

// Splits `bits` into its first `n` bits and the remainder.
inline std::pair<BitString, BitString> split_at(BitString bits, std::size_t n) {
  BitString front;
  for (std::size_t i = 0; i < n; ++i) {
    auto step = unfold(std::move(bits));
    front = snoc(std::move(front), step->first);
    bits = std::move(step->second);
  }
  return {std::move(front), std::move(bits)};
}

inline BitString word16_bits(std::uint16_t value) {
  BitString out;
  for (int i = 15; i >= 0; --i) out = snoc(std::move(out), ((value >> i) & 1u) != 0);
  return out;
}

}  // namespace detail

// Checksum over `pseudo ++ region`, where the region is the encoding of
// `body` and `pseudo` is never emitted. `body` must carry a 16-bit
// checksum slot (see FieldChain::checksum_slot) at a byte-aligned offset
// and encode to a whole number of bytes.
//
// Encoding writes the body with a zero slot and patches in the complement
// of the fold. Decoding reads the covered length, rejects with bad-checksum
// unless pseudo ++ region folds to 0xFFFF, and only then decodes the body.
template <class S, class Ctx>
Format<S, Ctx> pseudoheader_checksum_format(std::vector<std::uint8_t> pseudo, Format<S, Ctx> body,
                                            CoveredLength<Ctx> covered) {
  const FormatMeta& bm = body.meta();
  if (!bm.checksum_slot) {
    throw std::invalid_argument("checksum: " + bm.name + " has no checksum slot");
  }
  if (*bm.checksum_slot % 8 != 0 || bm.residue != 0u) {
    throw std::invalid_argument("checksum: " + bm.name + " is not byte-aligned around the slot");
  }
  if (pseudo.size() % 2 != 0) {
    throw std::invalid_argument("checksum: pseudoheader must be a whole number of words");
  }
  const std::size_t slot = *bm.checksum_slot;

  FormatMeta meta = bm;
  meta.name = (pseudo.empty() ? "ip_checksum(" : "pseudo_checksum(") + bm.name + ")";
  meta.sequence = {meta.name};
  meta.checksum_slot.reset();

  auto pseudo_sum = [pseudo] {
    OnesComplementSum sum;
    sum.add(pseudo);
    return sum;
  };

  typename Format<S, Ctx>::RelationFn relation;
  if (body.has_relation()) {
    relation = [body, covered, pseudo_sum](const S& s) {
      std::vector<BitString> kept;
      for (auto& t : body.relate(s)) {
        auto n = covered.bits(BitInput{t, 0}, Ctx{});
        if (!n || *n * 8 != t.length_bits()) continue;
        OnesComplementSum sum = pseudo_sum();
        detail::add_bits_as_bytes(sum, t);
        if (sum.fold() == 0xFFFF) kept.push_back(std::move(t));
      }
      return kept;
    };
  }

  return Format<S, Ctx>(
      std::move(meta),
      [body, covered, pseudo_sum, slot](const S& s, BitString& out, Ctx& ctx) -> Status {
        const std::size_t base = out.length_bits();
        BitString region;
        if (auto st = body.encode_bits(s, region, ctx); !st) {
          return fail(st.failure().reason, base + st.failure().bit_offset);
        }
        auto n = covered.bits(BitInput{region, 0}, ctx);
        if (!n || *n * 8 != region.length_bits()) {
          return fail(Reason::constraint_violation, base);
        }
        OnesComplementSum sum = pseudo_sum();
        detail::add_bits_as_bytes(sum, region);
        const auto check = static_cast<std::uint16_t>(~sum.fold());
        auto [front, rest] = detail::split_at(std::move(region), slot);
        auto after = detail::split_at(std::move(rest), 16).second;
        out = append(std::move(out), front);
        out = append(std::move(out), detail::word16_bits(check));
        out = append(std::move(out), after);
        return success();
      },
      [body, covered, pseudo_sum](BitInput& in, Ctx& ctx) -> Result<S> {
        const std::size_t start = in.offset;
        auto n = covered.bits(in, ctx);
        if (!n) return n.failure();
        if (*n * 8 > in.rest.length_bits()) return fail(Reason::short_input, start);
        OnesComplementSum sum = pseudo_sum();
        BitString scan = in.rest;
        for (std::size_t i = 0; i < *n; ++i) {
          unsigned byte = 0;
          for (int b = 0; b < 8; ++b) {
            auto step = unfold(std::move(scan));
            byte = (byte << 1) | (step->first ? 1u : 0u);
            scan = std::move(step->second);
          }
          sum.add_byte(static_cast<std::uint8_t>(byte));
        }
        if (sum.fold() != 0xFFFF) return fail(Reason::bad_checksum, start);
        auto v = body.decode_bits(in, ctx);
        if (v && in.offset - start != *n * 8) return fail(Reason::constraint_violation, start);
        return v;
      },
      [body, covered, pseudo_sum, slot](const S& s, std::span<std::uint8_t> buf, BitCursor& cur,
                                        Ctx& ctx) -> Status {
        const BitCursor start = cur;
        if (auto st = body.encode_aligned(s, buf, cur, ctx); !st) return st;
        const std::size_t written = cur.bit_position() - start.bit_position();
        auto n = covered.aligned(buf, start, ctx);
        if (!n || *n * 8 != written) return fail(Reason::constraint_violation, start.bit_position());
        OnesComplementSum sum = pseudo_sum();
        detail::add_buffer_region(sum, buf, start, *n);
        BitCursor at(start.bit_position() + slot);
        write_bits(buf, at, static_cast<std::uint16_t>(~sum.fold()), 16);
        return success();
      },
      [body, covered, pseudo_sum](std::span<const std::uint8_t> buf, BitCursor& cur,
                                  Ctx& ctx) -> Result<S> {
        const BitCursor start = cur;
        auto n = covered.aligned(buf, cur, ctx);
        if (!n) return n.failure();
        if (remaining_bits(buf, cur) < *n * 8) return fail(Reason::short_input, start.bit_position());
        OnesComplementSum sum = pseudo_sum();
        detail::add_buffer_region(sum, buf, start, *n);
        if (sum.fold() != 0xFFFF) return fail(Reason::bad_checksum, start.bit_position());
        auto v = body.decode_aligned(buf, cur, ctx);
        if (v && cur.bit_position() - start.bit_position() != *n * 8) {
          return fail(Reason::constraint_violation, start.bit_position());
        }
        return v;
      },
      std::move(relation));
}

// The IP header checksum: the pseudoheader variant with nothing prepended.
template <class S, class Ctx>
Format<S, Ctx> ip_checksum_format(Format<S, Ctx> body, CoveredLength<Ctx> covered) {
  return pseudoheader_checksum_format<S, Ctx>({}, std::move(body), std::move(covered));
}

}  // namespace biformat
