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
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "biformat/bitstring.hpp"
#include "biformat/byte_buffer.hpp"
#include "biformat/format.hpp"

namespace biformat {

// One disagreement between the bit-level and byte-aligned interpreters.
struct Divergence {
  // "encode-prefix", "encode-overflow", "encode-failure", "decode-agreement",
  // "decode-value", "decode-consumed", "decode-failure" or "decode-purity".
  std::string clause;
  // Index of the offending source or buffer in the caller's sample list.
  std::size_t sample = 0;
  std::string detail;
};

struct EquivalenceReport {
  std::size_t encodes_checked = 0;
  std::size_t decodes_checked = 0;
  std::vector<Divergence> divergences;

  bool ok() const { return divergences.empty(); }
};

struct EquivalenceOptions {
  // Extra capacities (in bytes, relative to the exact encoded size) tried
  // for every source; negative entries exercise the overflow clause.
  std::vector<int> capacity_deltas{-2, -1, 0, 3};
  // Stop collecting after this many divergences.
  std::size_t max_divergences = 16;
};

namespace detail {

inline bool same_prefix(std::span<const std::uint8_t> buffer, const BitString& reference) {
  const BitString::Packed packed = to_bytes(reference);
  if (buffer.size() < packed.bytes.size()) return false;
  const std::size_t full = packed.trailing_bits == 0 ? packed.bytes.size() : packed.bytes.size() - 1;
  if (!std::equal(packed.bytes.begin(), packed.bytes.begin() + static_cast<std::ptrdiff_t>(full),
                  buffer.begin())) {
    return false;
  }
  if (packed.trailing_bits == 0) return true;
  const auto mask = static_cast<std::uint8_t>(0xFF << (8 - packed.trailing_bits));
  return (buffer[full] & mask) == (packed.bytes[full] & mask);
}

inline std::string describe(const Failure& f) {
  return std::string(to_string(f.reason)) + "@" + std::to_string(f.bit_offset);
}

}  // namespace detail

// Differential check of the byte-aligned interpreters against the
// bit-level ones.
//
// Encoding, per source and capacity: when the reference encoder fails the
// fast one must fail too; when the reference output fits, the fast encoder
// must succeed, write the same number of bits and the same prefix; when it
// does not fit, the fast encoder must fail with buffer-overflow.
//
// Decoding, per buffer: both interpreters succeed or fail together; on
// success they agree on the value and the number of bits consumed, on
// failure on the reason and offset. The fast decoder must leave the buffer
// untouched.
template <class S, class Ctx>
EquivalenceReport equivalence_check(const Format<S, Ctx>& format, const std::vector<S>& sources,
                                    const std::vector<std::vector<std::uint8_t>>& buffers,
                                    const EquivalenceOptions& options = {}) {
  EquivalenceReport report;
  auto note = [&](std::string clause, std::size_t index, std::string detail) {
    if (report.divergences.size() < options.max_divergences) {
      report.divergences.push_back({std::move(clause), index, std::move(detail)});
    }
  };

  for (std::size_t i = 0; i < sources.size(); ++i) {
    auto reference = encode_bits(format, sources[i]);
    const std::size_t exact = reference ? (reference->bits.length_bits() + 7) / 8 : 0;
    for (int delta : options.capacity_deltas) {
      if (delta < 0 && static_cast<std::size_t>(-delta) > exact) continue;
      const std::size_t capacity = exact + static_cast<std::size_t>(static_cast<long>(delta));
      ByteBuffer buffer(capacity);
      auto fast = encode_aligned(format, sources[i], buffer.span());
      ++report.encodes_checked;
      if (!reference) {
        if (fast) note("encode-failure", i, "reference failed, fast succeeded");
        continue;
      }
      const std::size_t bits = reference->bits.length_bits();
      if (bits > capacity * 8) {
        if (fast) {
          note("encode-overflow", i, "fast encoder wrote past capacity " + std::to_string(capacity));
        } else if (fast.failure().reason != Reason::buffer_overflow) {
          note("encode-overflow", i, "expected buffer-overflow, got " + detail::describe(fast.failure()));
        }
        continue;
      }
      if (!fast) {
        note("encode-failure", i, "fast failed with " + detail::describe(fast.failure()));
        continue;
      }
      if (fast->written_bits != bits) {
        note("encode-prefix", i,
             "wrote " + std::to_string(fast->written_bits) + " bits, reference " + std::to_string(bits));
      } else if (!detail::same_prefix(buffer.span(), reference->bits)) {
        note("encode-prefix", i, "buffer prefix differs from reference bits");
      }
      if constexpr (std::equality_comparable<Ctx>) {
        if (!(fast->context == reference->context)) note("encode-prefix", i, "contexts differ");
      }
    }
  }

  for (std::size_t i = 0; i < buffers.size(); ++i) {
    const std::vector<std::uint8_t>& bytes = buffers[i];
    const std::vector<std::uint8_t> before = bytes;
    auto reference = decode_bits(format, from_bytes(bytes));
    auto fast = decode_aligned(format, std::span<const std::uint8_t>(bytes));
    ++report.decodes_checked;
    if (bytes != before) note("decode-purity", i, "fast decoder modified the buffer");
    if (reference.ok() != fast.ok()) {
      note("decode-agreement", i,
           reference ? "reference succeeded, fast failed with " + detail::describe(fast.failure())
                     : "reference failed with " + detail::describe(reference.failure()) +
                           ", fast succeeded");
      continue;
    }
    if (!reference) {
      if (!(reference.failure() == fast.failure())) {
        note("decode-failure", i,
             detail::describe(reference.failure()) + " vs " + detail::describe(fast.failure()));
      }
      continue;
    }
    if (reference->consumed_bits != fast->consumed_bits) {
      note("decode-consumed", i,
           std::to_string(reference->consumed_bits) + " vs " + std::to_string(fast->consumed_bits));
    }
    if constexpr (std::equality_comparable<S>) {
      if (!(reference->value == fast->value)) note("decode-value", i, "decoded values differ");
    }
  }
  return report;
}

// Every byte buffer of `length` bytes; for exhaustive checks of small formats.
std::vector<std::vector<std::uint8_t>> all_buffers(std::size_t length);

}  // namespace biformat
