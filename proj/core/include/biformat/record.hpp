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
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <type_traits>
#include <utility>
#include <vector>

#include "biformat/base_formats.hpp"
#include "biformat/format.hpp"

namespace biformat {

// Read-only access to the views decoded by steps [0, Bound) of a chain.
// Reading a later view is a compile error.
template <class Tuple, std::size_t Bound>
class BoundViews {
 public:
  explicit BoundViews(const Tuple& views) : views_(&views) {}

  template <std::size_t I>
  const auto& get() const {
    static_assert(I < Bound, "a step may only read views bound by earlier steps");
    return std::get<I>(*views_);
  }

 private:
  const Tuple* views_;
};

template <std::size_t I, class Tuple, std::size_t Bound>
const auto& view(const BoundViews<Tuple, Bound>& views) {
  return views.template get<I>();
}

namespace detail {

struct NoProjection {
  template <class R>
  Unit operator()(const R&) const {
    return {};
  }
};

template <class R, class V, class Ctx, class Proj>
struct FieldStep {
  using view_type = V;

  Format<V, Ctx> format;
  Proj projection;
  bool checksum_slot = false;

  V view_of(const R& r) const { return std::invoke(projection, r); }
  template <class Bound>
  bool admits(const Bound&, const V&) const {
    return true;
  }
  Status encode_bits(const V& v, BitString& out, Ctx& ctx) const {
    return format.encode_bits(v, out, ctx);
  }
  Status encode_aligned(const V& v, std::span<std::uint8_t> buf, BitCursor& cur, Ctx& ctx) const {
    return format.encode_aligned(v, buf, cur, ctx);
  }
  template <class Bound>
  Result<V> decode_bits(BitInput& in, Ctx& ctx, const Bound&) const {
    return format.decode_bits(in, ctx);
  }
  template <class Bound>
  Result<V> decode_aligned(std::span<const std::uint8_t> buf, BitCursor& cur, Ctx& ctx,
                           const Bound&) const {
    return format.decode_aligned(buf, cur, ctx);
  }
  bool has_relation() const { return format.has_relation(); }
  std::vector<BitString> relate(const V& v) const { return format.relate(v); }
  FormatMeta meta() const { return format.meta(); }
};

// List whose length is computed from views bound earlier in the chain.
template <class R, class E, class Ctx, class CountFn, class Proj>
struct CountedStep {
  using view_type = std::vector<E>;

  Format<E, Ctx> elem;
  CountFn count;
  Proj projection;
  std::optional<std::size_t> max_count;

  view_type view_of(const R& r) const { return std::invoke(projection, r); }
  template <class Bound>
  bool admits(const Bound& views, const view_type& items) const {
    std::optional<std::size_t> n = count(views);
    return n && *n == items.size();
  }
  Status encode_bits(const view_type& items, BitString& out, Ctx& ctx) const {
    return encode_list_bits(elem, items, out, ctx);
  }
  Status encode_aligned(const view_type& items, std::span<std::uint8_t> buf, BitCursor& cur,
                        Ctx& ctx) const {
    return encode_list_aligned(elem, items, buf, cur, ctx);
  }
  template <class Bound>
  Result<view_type> decode_bits(BitInput& in, Ctx& ctx, const Bound& views) const {
    std::optional<std::size_t> n = count(views);
    if (!n) return fail(Reason::constraint_violation, in.offset);
    return decode_list_bits(elem, *n, in, ctx);
  }
  template <class Bound>
  Result<view_type> decode_aligned(std::span<const std::uint8_t> buf, BitCursor& cur, Ctx& ctx,
                                   const Bound& views) const {
    std::optional<std::size_t> n = count(views);
    if (!n) return fail(Reason::constraint_violation, cur.bit_position());
    return decode_list_aligned(elem, *n, buf, cur, ctx);
  }
  bool has_relation() const { return elem.has_relation(); }
  std::vector<BitString> relate(const view_type& items) const { return relate_list(elem, items); }
  FormatMeta meta() const {
    const auto& e = elem.meta();
    std::optional<std::size_t> max;
    if (max_count && e.max_bits) max = *max_count * *e.max_bits;
    FormatMeta m = leaf_meta("list(" + e.name + ", <view>)", 0, max);
    m.residue = e.residue == 0u ? std::optional<unsigned>(0) : std::nullopt;
    m.needs_byte_alignment = e.needs_byte_alignment;
    return m;
  }
};

// Byte string whose length is computed from earlier views.
template <class R, class Ctx, class CountFn, class Proj>
struct BytesStep {
  using view_type = std::vector<std::uint8_t>;

  CountFn count;
  Proj projection;
  std::optional<std::size_t> max_count;

  view_type view_of(const R& r) const { return std::invoke(projection, r); }
  template <class Bound>
  bool admits(const Bound& views, const view_type& bytes) const {
    std::optional<std::size_t> n = count(views);
    return n && *n == bytes.size();
  }
  Status encode_bits(const view_type& bytes, BitString& out, Ctx&) const {
    return encode_bytes_bits(bytes, out);
  }
  Status encode_aligned(const view_type& bytes, std::span<std::uint8_t> buf, BitCursor& cur,
                        Ctx&) const {
    if (!write_bytes(buf, cur, bytes)) return fail(Reason::buffer_overflow, cur.bit_position());
    return success();
  }
  template <class Bound>
  Result<view_type> decode_bits(BitInput& in, Ctx&, const Bound& views) const {
    std::optional<std::size_t> n = count(views);
    if (!n) return fail(Reason::constraint_violation, in.offset);
    return decode_bytes_bits(*n, in);
  }
  template <class Bound>
  Result<view_type> decode_aligned(std::span<const std::uint8_t> buf, BitCursor& cur, Ctx&,
                                   const Bound& views) const {
    const std::size_t start = cur.bit_position();
    std::optional<std::size_t> n = count(views);
    if (!n) return fail(Reason::constraint_violation, start);
    view_type out;
    if (!read_bytes(buf, cur, *n, out)) return fail(Reason::short_input, start);
    return out;
  }
  bool has_relation() const { return true; }
  std::vector<BitString> relate(const view_type& bytes) const { return {from_bytes(bytes)}; }
  FormatMeta meta() const {
    std::optional<std::size_t> max;
    if (max_count) max = *max_count * 8;
    FormatMeta m = leaf_meta("bytes(<view>)", 0, max);
    m.residue = 0;
    m.needs_byte_alignment = true;
    return m;
  }
};

template <class Step>
bool marks_checksum_slot(const Step& step) {
  if constexpr (requires { step.checksum_slot; }) {
    return step.checksum_slot;
  } else {
    return false;
  }
}

}  // namespace detail

// Ordered field steps describing how a record R is written and read back.
// Steps encode and decode in declaration order. Each step binds a view,
// which later steps (counts) and the closing assemble/validate can read.
template <class R, class Ctx = Unit, class... Steps>
class FieldChain {
 public:
  using record_type = R;
  using views_type = std::tuple<typename Steps::view_type...>;
  static constexpr std::size_t size = sizeof...(Steps);

  FieldChain() = default;
  explicit FieldChain(std::tuple<Steps...> steps) : steps_(std::move(steps)) {}

  // Formats a projection of the record and binds it as a view.
  template <class V, class Proj>
  auto field(Format<V, Ctx> format, Proj projection) && {
    return std::move(*this).extend(detail::FieldStep<R, V, Ctx, Proj>{std::move(format), std::move(projection)});
  }

  template <class V>
  auto field(Projected<R, V, Ctx> projected) && {
    auto fn = [projected](const R& r) { return projected.project(r); };
    return std::move(*this).extend(detail::FieldStep<R, V, Ctx, decltype(fn)>{projected.inner(), std::move(fn)});
  }

  // Formats data that the record does not store (constants, padding).
  auto field(Format<Unit, Ctx> format) && {
    return std::move(*this).extend(detail::FieldStep<R, Unit, Ctx, detail::NoProjection>{std::move(format), {}});
  }

  // 16 unused bits reserved for a checksum; see ip_checksum_format.
  auto checksum_slot() && {
    return std::move(*this).extend(detail::FieldStep<R, Unit, Ctx, detail::NoProjection>{unused<Ctx>(16), {}, true});
  }

  // List of `elem` whose length is `count(views)`, where `views` exposes the
  // views bound so far. `count` returns an empty optional when the earlier
  // views admit no valid length.
  template <class E, class CountFn, class Proj>
  auto counted(CountFn count, Format<E, Ctx> elem, Proj projection,
               std::optional<std::size_t> max_count = std::nullopt) && {
    return std::move(*this).extend(detail::CountedStep<R, E, Ctx, CountFn, Proj>{
        std::move(elem), std::move(count), std::move(projection), max_count});
  }

  // Raw bytes whose length is `count(views)`.
  template <class CountFn, class Proj>
  auto bytes(CountFn count, Proj projection,
             std::optional<std::size_t> max_count = std::nullopt) && {
    return std::move(*this).extend(detail::BytesStep<R, Ctx, CountFn, Proj>{std::move(count), std::move(projection),
                                                           max_count});
  }

  const std::tuple<Steps...>& steps() const { return steps_; }

 private:
  template <class Step>
  FieldChain<R, Ctx, Steps..., Step> extend(Step step) && {
    return FieldChain<R, Ctx, Steps..., Step>(
        std::tuple_cat(std::move(steps_), std::make_tuple(std::move(step))));
  }

  std::tuple<Steps...> steps_;
};

namespace detail {

template <class... Steps>
FormatMeta chain_meta(const std::string& name, const std::tuple<Steps...>& steps) {
  FormatMeta acc = leaf_meta(name, 0, 0);
  bool needs_alignment = false;
  std::apply(
      [&](const auto&... step) {
        auto add = [&](const auto& s) {
          const FormatMeta m = s.meta();
          if (m.needs_byte_alignment && acc.residue != 0u) {
            throw std::invalid_argument(name + ": " + m.name + " does not start on a byte boundary");
          }
          needs_alignment = needs_alignment || m.needs_byte_alignment;
          if (marks_checksum_slot(s)) {
            if (acc.checksum_slot) throw std::invalid_argument(name + ": more than one checksum slot");
            if (!acc.constant_size()) {
              throw std::invalid_argument(name + ": checksum slot after a variable-size prefix");
            }
            acc.checksum_slot = acc.min_bits;
          }
          acc.min_bits += m.min_bits;
          acc.max_bits = acc.max_bits && m.max_bits
                             ? std::optional<std::size_t>(*acc.max_bits + *m.max_bits)
                             : std::nullopt;
          acc.residue = acc.residue && m.residue
                            ? std::optional<unsigned>((*acc.residue + *m.residue) % 8)
                            : std::nullopt;
        };
        (add(step), ...);
      },
      steps);
  acc.needs_byte_alignment = needs_alignment;
  acc.name = name;
  acc.sequence = {name};
  return acc;
}

}  // namespace detail

// Closes a chain. `validate(views)` states which combinations of views
// belong to the format: decoding rejects inputs whose views fail it, and
// encoding rejects records whose projected views fail it. Counted steps
// also require their list lengths to match the count computed from the
// earlier views. Decoding builds the record with `assemble(views)`.
template <class R, class Ctx, class... Steps, class Assemble, class Validate>
  requires(sizeof...(Steps) > 0)
Format<R, Ctx> record(std::string name, FieldChain<R, Ctx, Steps...> chain, Assemble assemble,
                      Validate validate) {
  using Chain = FieldChain<R, Ctx, Steps...>;
  using Views = typename Chain::views_type;
  using Index = std::index_sequence_for<Steps...>;
  auto steps = std::make_shared<const std::tuple<Steps...>>(chain.steps());
  FormatMeta meta = detail::chain_meta(name, *steps);

  auto project = [steps](const R& r) {
    return std::apply([&](const auto&... s) { return Views{s.view_of(r)...}; }, *steps);
  };
  auto admissible = [steps, validate](const Views& views) {
    const bool counts = [&]<std::size_t... I>(std::index_sequence<I...>) {
      return (std::get<I>(*steps).admits(BoundViews<Views, I>(views), std::get<I>(views)) && ...);
    }(Index{});
    return counts && validate(views);
  };

  bool relational = std::apply([](const auto&... s) { return (s.has_relation() && ...); }, *steps);
  typename Format<R, Ctx>::RelationFn relation;
  if (relational) {
    relation = [steps, project, admissible](const R& r) {
      const Views views = project(r);
      if (!admissible(views)) return std::vector<BitString>{};
      std::vector<BitString> targets{BitString{}};
      [&]<std::size_t... I>(std::index_sequence<I...>) {
        ((targets = concat_product(targets, std::get<I>(*steps).relate(std::get<I>(views)))), ...);
      }(Index{});
      return targets;
    };
  }

  auto encode_with = [steps, project, admissible](const R& r, auto&& run_step,
                                                  std::size_t start) -> Status {
    const Views views = project(r);
    if (!admissible(views)) return fail(Reason::constraint_violation, start);
    std::optional<Failure> failure;
    [&]<std::size_t... I>(std::index_sequence<I...>) {
      (run_step(std::get<I>(*steps), std::get<I>(views), failure) && ...);
    }(Index{});
    if (failure) return *failure;
    return success();
  };

  auto decode_with = [steps, assemble, validate](auto&& run_step, std::size_t start) -> Result<R> {
    Views views;
    std::optional<Failure> failure;
    [&]<std::size_t... I>(std::index_sequence<I...>) {
      (run_step(std::get<I>(*steps), BoundViews<Views, I>(views), std::get<I>(views), failure) &&
       ...);
    }(Index{});
    if (failure) return *failure;
    if (!validate(std::as_const(views))) return fail(Reason::constraint_violation, start);
    return assemble(std::move(views));
  };

  return Format<R, Ctx>(
      std::move(meta),
      [encode_with](const R& r, BitString& out, Ctx& ctx) -> Status {
        return encode_with(
            r,
            [&](const auto& step, const auto& v, std::optional<Failure>& failure) {
              auto st = step.encode_bits(v, out, ctx);
              if (!st) failure = st.failure();
              return st.ok();
            },
            out.length_bits());
      },
      [decode_with](BitInput& in, Ctx& ctx) -> Result<R> {
        return decode_with(
            [&](const auto& step, const auto& bound, auto& slot, std::optional<Failure>& failure) {
              auto v = step.decode_bits(in, ctx, bound);
              if (!v) {
                failure = v.failure();
                return false;
              }
              slot = std::move(v).value();
              return true;
            },
            in.offset);
      },
      [encode_with](const R& r, std::span<std::uint8_t> buf, BitCursor& cur, Ctx& ctx) -> Status {
        return encode_with(
            r,
            [&](const auto& step, const auto& v, std::optional<Failure>& failure) {
              auto st = step.encode_aligned(v, buf, cur, ctx);
              if (!st) failure = st.failure();
              return st.ok();
            },
            cur.bit_position());
      },
      [decode_with](std::span<const std::uint8_t> buf, BitCursor& cur, Ctx& ctx) -> Result<R> {
        return decode_with(
            [&](const auto& step, const auto& bound, auto& slot, std::optional<Failure>& failure) {
              auto v = step.decode_aligned(buf, cur, ctx, bound);
              if (!v) {
                failure = v.failure();
                return false;
              }
              slot = std::move(v).value();
              return true;
            },
            cur.bit_position());
      },
      std::move(relation));
}

template <class R, class Ctx, class... Steps, class Assemble>
  requires(sizeof...(Steps) > 0)
Format<R, Ctx> record(std::string name, FieldChain<R, Ctx, Steps...> chain, Assemble assemble) {
  return record(std::move(name), std::move(chain), std::move(assemble),
                [](const auto&) { return true; });
}

}  // namespace biformat
