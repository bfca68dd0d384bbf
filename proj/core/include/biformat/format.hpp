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
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "biformat/bitstring.hpp"
#include "biformat/byte_buffer.hpp"
#include "biformat/result.hpp"

namespace biformat {

// Decoder state for the bit-level interpreter: the unread suffix of the
// input and how many bits were consumed before it.
struct BitInput {
  BitString rest;
  std::size_t offset = 0;
};

// Static facts about a format, computed when it is constructed.
struct FormatMeta {
  std::string name;
  std::size_t min_bits = 0;
  // Empty when encodings have no upper bound.
  std::optional<std::size_t> max_bits;
  // Encoding length modulo 8, when every encoding agrees on it.
  std::optional<unsigned> residue;
  // The format copies whole bytes and must start on a byte boundary.
  bool needs_byte_alignment = false;
  // Bit offset of a 16-bit checksum placeholder, if the format has one.
  std::optional<std::size_t> checksum_slot;
  // Operands of a (flattened) sequence; a single entry for anything else.
  std::vector<std::string> sequence;

  bool constant_size() const { return max_bits && *max_bits == min_bits; }
  bool admits(std::size_t bits) const {
    return bits >= min_bits && (!max_bits || bits <= *max_bits);
  }
  // Right-nested rendering of the sequence structure, e.g. "a ++ (b ++ c)".
  std::string structure() const;
};

FormatMeta leaf_meta(std::string name, std::size_t min_bits, std::optional<std::size_t> max_bits);
FormatMeta sequence_meta(const FormatMeta& first, const FormatMeta& second);
FormatMeta alternative_meta(std::string name, const FormatMeta& left, const FormatMeta& right);

// Relations bigger than this are refused rather than enumerated.
inline constexpr std::size_t kMaxRelationSize = std::size_t{1} << 20;

class EnumerationTooLarge : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Every concatenation a ++ b for a in `firsts`, b in `seconds`.
std::vector<BitString> concat_product(const std::vector<BitString>& firsts,
                                      const std::vector<BitString>& seconds);

// A format description with its four interpretations: bit-level encoder and
// decoder over BitString, byte-aligned encoder and decoder over a fixed
// buffer with a bit cursor. `relate` optionally enumerates every target the
// format relates to a source (the relational meaning used by the oracle).
//
// Formats are immutable and cheap to copy.
template <class S, class Ctx = Unit>
class Format {
 public:
  using value_type = S;
  using context_type = Ctx;

  using BitEncodeFn = std::function<Status(const S&, BitString&, Ctx&)>;
  using BitDecodeFn = std::function<Result<S>(BitInput&, Ctx&)>;
  using AlignedEncodeFn =
      std::function<Status(const S&, std::span<std::uint8_t>, BitCursor&, Ctx&)>;
  using AlignedDecodeFn =
      std::function<Result<S>(std::span<const std::uint8_t>, BitCursor&, Ctx&)>;
  using RelationFn = std::function<std::vector<BitString>(const S&)>;

  Format(FormatMeta meta, BitEncodeFn encode_bits, BitDecodeFn decode_bits,
         AlignedEncodeFn encode_aligned, AlignedDecodeFn decode_aligned,
         RelationFn relation = {})
      : impl_(std::make_shared<const Impl>(Impl{std::move(meta), std::move(encode_bits),
                                                std::move(decode_bits), std::move(encode_aligned),
                                                std::move(decode_aligned), std::move(relation)})) {}

  const FormatMeta& meta() const { return impl_->meta; }

  // Appends the encoding of `s` to `out`.
  Status encode_bits(const S& s, BitString& out, Ctx& ctx) const {
    return impl_->encode_bits(s, out, ctx);
  }
  Result<S> decode_bits(BitInput& in, Ctx& ctx) const { return impl_->decode_bits(in, ctx); }
  Status encode_aligned(const S& s, std::span<std::uint8_t> buffer, BitCursor& cursor,
                        Ctx& ctx) const {
    return impl_->encode_aligned(s, buffer, cursor, ctx);
  }
  Result<S> decode_aligned(std::span<const std::uint8_t> buffer, BitCursor& cursor,
                           Ctx& ctx) const {
    return impl_->decode_aligned(buffer, cursor, ctx);
  }

  bool has_relation() const { return static_cast<bool>(impl_->relation); }
  std::vector<BitString> relate(const S& s) const {
    if (!impl_->relation) throw std::logic_error(meta().name + " has no relational meaning");
    return impl_->relation(s);
  }
  const RelationFn& relation() const { return impl_->relation; }

 private:
  struct Impl {
    FormatMeta meta;
    BitEncodeFn encode_bits;
    BitDecodeFn decode_bits;
    AlignedEncodeFn encode_aligned;
    AlignedDecodeFn decode_aligned;
    RelationFn relation;
  };
  std::shared_ptr<const Impl> impl_;
};

// ---------------------------------------------------------------------------
// Top-level entry points.

template <class Ctx>
struct Encoded {
  BitString bits;
  Ctx context;
};

template <class S, class Ctx>
struct Decoded {
  S value;
  BitString rest;
  std::size_t consumed_bits;
  Ctx context;
};

template <class S, class Ctx>
Result<Encoded<Ctx>> encode_bits(const Format<S, Ctx>& format, const S& source, Ctx ctx = {}) {
  BitString out;
  auto status = format.encode_bits(source, out, ctx);
  if (!status) return status.failure();
  return Encoded<Ctx>{std::move(out), std::move(ctx)};
}

template <class S, class Ctx>
Result<Decoded<S, Ctx>> decode_bits(const Format<S, Ctx>& format, BitString input, Ctx ctx = {}) {
  BitInput in{std::move(input), 0};
  auto value = format.decode_bits(in, ctx);
  if (!value) return value.failure();
  return Decoded<S, Ctx>{std::move(value).value(), std::move(in.rest), in.offset, std::move(ctx)};
}

template <class Ctx>
struct AlignedEncoded {
  std::size_t written_bits;
  Ctx context;
  std::size_t written_bytes() const { return (written_bits + 7) / 8; }
};

template <class S, class Ctx>
struct AlignedDecoded {
  S value;
  std::size_t consumed_bits;
  Ctx context;
  std::size_t consumed_bytes() const { return (consumed_bits + 7) / 8; }
};

template <class S, class Ctx>
Result<AlignedEncoded<Ctx>> encode_aligned(const Format<S, Ctx>& format, const S& source,
                                           std::span<std::uint8_t> buffer, Ctx ctx = {}) {
  BitCursor cursor;
  auto status = format.encode_aligned(source, buffer, cursor, ctx);
  if (!status) return status.failure();
  return AlignedEncoded<Ctx>{cursor.bit_position(), std::move(ctx)};
}

template <class S, class Ctx>
Result<AlignedDecoded<S, Ctx>> decode_aligned(const Format<S, Ctx>& format,
                                              std::span<const std::uint8_t> buffer,
                                              Ctx ctx = {}) {
  BitCursor cursor;
  auto value = format.decode_aligned(buffer, cursor, ctx);
  if (!value) return value.failure();
  return AlignedDecoded<S, Ctx>{std::move(value).value(), cursor.bit_position(), std::move(ctx)};
}

// The byte-aligned encoder/decoder pair of a format. Construction already
// normalized and composed the interpreters, so deriving is a selection.
template <class S, class Ctx = Unit>
class AlignedCodec {
 public:
  explicit AlignedCodec(Format<S, Ctx> format) : format_(std::move(format)) {}

  Result<AlignedEncoded<Ctx>> encode(const S& source, std::span<std::uint8_t> buffer,
                                     Ctx ctx = {}) const {
    return encode_aligned(format_, source, buffer, std::move(ctx));
  }
  Result<AlignedDecoded<S, Ctx>> decode(std::span<const std::uint8_t> buffer,
                                        Ctx ctx = {}) const {
    return decode_aligned(format_, buffer, std::move(ctx));
  }

 private:
  Format<S, Ctx> format_;
};

template <class S, class Ctx>
AlignedCodec<S, Ctx> derive(const Format<S, Ctx>& format) {
  return AlignedCodec<S, Ctx>(format);
}

// ---------------------------------------------------------------------------
// Combinators.

// The empty format: relates unit to the empty bitstring.
template <class Ctx = Unit>
Format<Unit, Ctx> epsilon() {
  return Format<Unit, Ctx>(
      leaf_meta("epsilon", 0, 0), [](const Unit&, BitString&, Ctx&) { return success(); },
      [](BitInput&, Ctx&) -> Result<Unit> { return Unit{}; },
      [](const Unit&, std::span<std::uint8_t>, BitCursor&, Ctx&) { return success(); },
      [](std::span<const std::uint8_t>, BitCursor&, Ctx&) -> Result<Unit> { return Unit{}; },
      [](const Unit&) { return std::vector<BitString>{BitString{}}; });
}

// Sequencing: the encoding of the pair is first's encoding followed by
// second's.
template <class A, class B, class Ctx>
Format<std::pair<A, B>, Ctx> seq(Format<A, Ctx> first, Format<B, Ctx> second) {
  using P = std::pair<A, B>;
  if (second.meta().needs_byte_alignment && first.meta().residue != 0u) {
    throw std::invalid_argument("seq: " + second.meta().name +
                                " needs a byte boundary that " + first.meta().name +
                                " does not guarantee");
  }
  typename Format<P, Ctx>::RelationFn relation;
  if (first.has_relation() && second.has_relation()) {
    relation = [first, second](const P& p) {
      return concat_product(first.relate(p.first), second.relate(p.second));
    };
  }
  return Format<P, Ctx>(
      sequence_meta(first.meta(), second.meta()),
      [first, second](const P& p, BitString& out, Ctx& ctx) -> Status {
        if (auto s = first.encode_bits(p.first, out, ctx); !s) return s;
        return second.encode_bits(p.second, out, ctx);
      },
      [first, second](BitInput& in, Ctx& ctx) -> Result<P> {
        auto a = first.decode_bits(in, ctx);
        if (!a) return a.failure();
        auto b = second.decode_bits(in, ctx);
        if (!b) return b.failure();
        return P{std::move(a).value(), std::move(b).value()};
      },
      [first, second](const P& p, std::span<std::uint8_t> buf, BitCursor& cur,
                      Ctx& ctx) -> Status {
        if (auto s = first.encode_aligned(p.first, buf, cur, ctx); !s) return s;
        return second.encode_aligned(p.second, buf, cur, ctx);
      },
      [first, second](std::span<const std::uint8_t> buf, BitCursor& cur,
                      Ctx& ctx) -> Result<P> {
        auto a = first.decode_aligned(buf, cur, ctx);
        if (!a) return a.failure();
        auto b = second.decode_aligned(buf, cur, ctx);
        if (!b) return b.failure();
        return P{std::move(a).value(), std::move(b).value()};
      },
      std::move(relation));
}

// Restriction: only sources satisfying `pred` are in the format. Encoding
// an excluded source fails; decoding a value that violates `pred` fails.
template <class S, class Ctx, class Pred>
Format<S, Ctx> restrict(Format<S, Ctx> inner, Pred pred, std::string label = "pred") {
  FormatMeta meta = inner.meta();
  meta.name = inner.meta().name + " | " + label;
  meta.sequence = {meta.name};
  typename Format<S, Ctx>::RelationFn relation;
  if (inner.has_relation()) {
    relation = [inner, pred](const S& s) {
      return pred(s) ? inner.relate(s) : std::vector<BitString>{};
    };
  }
  return Format<S, Ctx>(
      std::move(meta),
      [inner, pred](const S& s, BitString& out, Ctx& ctx) -> Status {
        if (!pred(s)) return fail(Reason::constraint_violation, out.length_bits());
        return inner.encode_bits(s, out, ctx);
      },
      [inner, pred](BitInput& in, Ctx& ctx) -> Result<S> {
        const std::size_t start = in.offset;
        auto v = inner.decode_bits(in, ctx);
        if (v && !pred(*v)) return fail(Reason::constraint_violation, start);
        return v;
      },
      [inner, pred](const S& s, std::span<std::uint8_t> buf, BitCursor& cur, Ctx& ctx) -> Status {
        if (!pred(s)) return fail(Reason::constraint_violation, cur.bit_position());
        return inner.encode_aligned(s, buf, cur, ctx);
      },
      [inner, pred](std::span<const std::uint8_t> buf, BitCursor& cur, Ctx& ctx) -> Result<S> {
        const std::size_t start = cur.bit_position();
        auto v = inner.decode_aligned(buf, cur, ctx);
        if (v && !pred(*v)) return fail(Reason::constraint_violation, start);
        return v;
      },
      std::move(relation));
}

// A projection of the source formatted by `inner` (format COMPOSE proj).
// Decoding recovers only the view; record() rebuilds whole sources.
template <class S, class V, class Ctx = Unit>
class Projected {
 public:
  using source_type = S;
  using view_type = V;
  using ProjectionFn = std::function<V(const S&)>;

  Projected(Format<V, Ctx> inner, ProjectionFn projection)
      : inner_(std::move(inner)), projection_(std::move(projection)) {}

  const Format<V, Ctx>& inner() const { return inner_; }
  V project(const S& s) const { return projection_(s); }
  const FormatMeta& meta() const { return inner_.meta(); }

  Status encode_bits(const S& s, BitString& out, Ctx& ctx) const {
    return inner_.encode_bits(projection_(s), out, ctx);
  }
  Status encode_aligned(const S& s, std::span<std::uint8_t> buf, BitCursor& cur, Ctx& ctx) const {
    return inner_.encode_aligned(projection_(s), buf, cur, ctx);
  }
  Result<V> decode_bits(BitInput& in, Ctx& ctx) const { return inner_.decode_bits(in, ctx); }
  Result<V> decode_aligned(std::span<const std::uint8_t> buf, BitCursor& cur, Ctx& ctx) const {
    return inner_.decode_aligned(buf, cur, ctx);
  }

  bool has_relation() const { return inner_.has_relation(); }
  std::vector<BitString> relate(const S& s) const { return inner_.relate(projection_(s)); }

 private:
  Format<V, Ctx> inner_;
  ProjectionFn projection_;
};

template <class S, class V, class Ctx, class Proj>
Projected<S, V, Ctx> project(Format<V, Ctx> inner, Proj projection) {
  return Projected<S, V, Ctx>(std::move(inner), std::move(projection));
}

// ---------------------------------------------------------------------------
// Unions.

enum class Branch : std::uint8_t { left, right };

// Prefix decoder that names the union branch which produced an input. It
// runs on copies of the decoder state, so it never commits consumption.
template <class Ctx = Unit>
struct Discriminator {
  std::function<Result<Branch>(BitInput, Ctx)> bits;
  std::function<Result<Branch>(std::span<const std::uint8_t>, BitCursor, Ctx)> aligned;
};

// Peeks with `probe`, then maps the peeked value to a branch. `classify`
// returns an empty optional for values that belong to neither branch.
template <class V, class Ctx, class Classify>
Discriminator<Ctx> discriminate(Format<V, Ctx> probe, Classify classify) {
  return Discriminator<Ctx>{
      [probe, classify](BitInput in, Ctx ctx) -> Result<Branch> {
        const std::size_t start = in.offset;
        auto v = probe.decode_bits(in, ctx);
        if (!v) return v.failure();
        std::optional<Branch> b = classify(*v);
        if (!b) return fail(Reason::no_union_branch, start);
        return *b;
      },
      [probe, classify](std::span<const std::uint8_t> buf, BitCursor cur,
                        Ctx ctx) -> Result<Branch> {
        const std::size_t start = cur.bit_position();
        auto v = probe.decode_aligned(buf, cur, ctx);
        if (!v) return v.failure();
        std::optional<Branch> b = classify(*v);
        if (!b) return fail(Reason::no_union_branch, start);
        return *b;
      }};
}

// Union of two formats over the same source type. Encoding dispatches on
// `index`; decoding peeks with `discriminator` and re-reads the input from
// the same position with the chosen branch.
template <class S, class Ctx, class Index>
Format<S, Ctx> union_of(Format<S, Ctx> left, Format<S, Ctx> right, Index index,
                        Discriminator<Ctx> discriminator) {
  typename Format<S, Ctx>::RelationFn relation;
  if (left.has_relation() && right.has_relation()) {
    relation = [left, right](const S& s) {
      auto targets = left.relate(s);
      for (auto& t : right.relate(s)) {
        bool seen = false;
        for (const auto& u : targets) seen = seen || u == t;
        if (!seen) targets.push_back(std::move(t));
      }
      return targets;
    };
  }
  auto pick = [left, right](Branch b) -> const Format<S, Ctx>& {
    return b == Branch::left ? left : right;
  };
  return Format<S, Ctx>(
      alternative_meta("(" + left.meta().name + " | " + right.meta().name + ")", left.meta(),
                       right.meta()),
      [pick, index](const S& s, BitString& out, Ctx& ctx) -> Status {
        return pick(index(s)).encode_bits(s, out, ctx);
      },
      [pick, discriminator](BitInput& in, Ctx& ctx) -> Result<S> {
        auto b = discriminator.bits(in, ctx);
        if (!b) return b.failure();
        return pick(*b).decode_bits(in, ctx);
      },
      [pick, index](const S& s, std::span<std::uint8_t> buf, BitCursor& cur, Ctx& ctx) -> Status {
        return pick(index(s)).encode_aligned(s, buf, cur, ctx);
      },
      [pick, discriminator](std::span<const std::uint8_t> buf, BitCursor& cur,
                            Ctx& ctx) -> Result<S> {
        auto b = discriminator.aligned(buf, cur, ctx);
        if (!b) return b.failure();
        return pick(*b).decode_aligned(buf, cur, ctx);
      },
      std::move(relation));
}

}  // namespace biformat
