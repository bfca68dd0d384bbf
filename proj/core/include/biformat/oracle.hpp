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

#include <concepts>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "biformat/bitstring.hpp"
#include "biformat/format.hpp"

namespace biformat {

// One member of a format's relational meaning: `source` in context
// `ctx_in` may be written as `target`, leaving `ctx_out`.
template <class S, class Ctx = Unit>
struct RelationSample {
  S source;
  Ctx ctx_in;
  BitString target;
  Ctx ctx_out;
};

namespace detail {

// Source type of a Format (value_type) or a Projected fragment (source_type).
template <class F>
struct SourceOf {
  using type = typename F::value_type;
};
template <class F>
  requires requires { typename F::source_type; }
struct SourceOf<F> {
  using type = typename F::source_type;
};

}  // namespace detail

template <class F>
using source_of_t = typename detail::SourceOf<F>::type;

// Every bitstring of length <= max_bits, shortest first.
std::vector<BitString> all_bitstrings(std::size_t max_bits);

// Enumerates the relation restricted to `sources` and to targets of at most
// `max_bits` bits. Throws EnumerationTooLarge past kMaxRelationSize samples.
template <class F, class S = source_of_t<F>, class Ctx = Unit>
std::vector<RelationSample<S, Ctx>> enumerate_relation(const F& format,
                                                       const std::vector<S>& sources,
                                                       std::size_t max_bits) {
  std::vector<RelationSample<S, Ctx>> samples;
  for (const S& s : sources) {
    for (auto& t : format.relate(s)) {
      if (t.length_bits() > max_bits) continue;
      if (samples.size() == kMaxRelationSize) {
        throw EnumerationTooLarge("enumerate_relation: more than 2^20 samples");
      }
      samples.push_back({s, Ctx{}, std::move(t), Ctx{}});
    }
  }
  return samples;
}

template <class S>
struct Counterexample {
  // "encoder-membership", "encoder-absence", "decoder-completeness",
  // "decoder-soundness", "decode-inverts-encode" or "encode-inverts-decode".
  std::string clause;
  S source;
  BitString target;
  std::string note;
};

template <class S>
struct Verdict {
  bool passed = true;
  std::size_t checked = 0;
  std::vector<Counterexample<S>> counterexamples;

  explicit operator bool() const { return passed; }
  void reject(Counterexample<S> c) {
    passed = false;
    if (counterexamples.size() < 32) counterexamples.push_back(std::move(c));
  }
};

template <class S>
using EncoderFn = std::function<std::optional<BitString>(const S&)>;

// Returns the decoded value and the unconsumed rest of the input.
template <class S>
using DecoderFn = std::function<std::optional<std::pair<S, BitString>>(const BitString&)>;

template <class S, class Ctx>
EncoderFn<S> bit_encoder(const Format<S, Ctx>& format) {
  return [format](const S& s) -> std::optional<BitString> {
    auto e = encode_bits(format, s);
    if (!e) return std::nullopt;
    return std::move(e->bits);
  };
}

template <class S, class Ctx>
DecoderFn<S> bit_decoder(const Format<S, Ctx>& format) {
  return [format](const BitString& input) -> std::optional<std::pair<S, BitString>> {
    auto d = decode_bits(format, input);
    if (!d) return std::nullopt;
    return std::pair<S, BitString>{std::move(d->value), std::move(d->rest)};
  };
}

namespace detail {

inline bool contains(const std::vector<BitString>& targets, const BitString& t) {
  for (const auto& u : targets) {
    if (u == t) return true;
  }
  return false;
}

// The prefix of `input` that precedes `rest`, or empty when `rest` is not a
// suffix of `input`.
inline std::optional<BitString> consumed_prefix(const BitString& input, const BitString& rest) {
  if (rest.length_bits() > input.length_bits()) return std::nullopt;
  BitString prefix;
  BitString scan = input;
  for (std::size_t i = rest.length_bits(); i < input.length_bits(); ++i) {
    auto step = unfold(std::move(scan));
    prefix = snoc(std::move(prefix), step->first);
    scan = std::move(step->second);
  }
  if (!(scan == rest)) return std::nullopt;
  return prefix;
}

}  // namespace detail

// Encoder correctness: every output is a member of the relation, and the
// encoder fails only on sources the relation leaves without targets.
template <class F, class S = source_of_t<F>>
Verdict<S> check_encoder_refines(const F& format, const EncoderFn<S>& encoder,
                                 const std::vector<S>& sources) {
  Verdict<S> verdict;
  for (const S& s : sources) {
    ++verdict.checked;
    const std::vector<BitString> targets = format.relate(s);
    std::optional<BitString> t = encoder(s);
    if (t && !detail::contains(targets, *t)) {
      verdict.reject({"encoder-membership", s, *t, "encoding is not related to the source"});
    } else if (!t && !targets.empty()) {
      verdict.reject({"encoder-absence", s, targets.front(), "encoder failed on an included source"});
    }
  }
  return verdict;
}

template <class S, class Ctx>
Verdict<S> check_encoder_refines(const Format<S, Ctx>& format, const std::vector<S>& sources) {
  return check_encoder_refines(format, bit_encoder(format), sources);
}

// Decoder correctness.
//  completeness: every related target, followed by any tail of up to
//  `tail_bits` bits, decodes to its source and leaves exactly the tail.
//  soundness: every input of at most `max_bits` bits that the decoder
//  accepts has a consumed prefix related to the decoded value.
template <class S, class Ctx>
Verdict<S> check_decoder_correct(const Format<S, Ctx>& format, const DecoderFn<S>& decoder,
                                 const std::vector<S>& sources, std::size_t max_bits,
                                 std::size_t tail_bits = 3) {
  Verdict<S> verdict;
  const std::vector<BitString> tails = all_bitstrings(tail_bits);
  for (const auto& sample : enumerate_relation(format, sources, max_bits)) {
    for (const auto& tail : tails) {
      ++verdict.checked;
      const BitString input = append(sample.target, tail);
      auto d = decoder(input);
      if (!d) {
        verdict.reject({"decoder-completeness", sample.source, input, "related target rejected"});
      } else if (!(d->second == tail)) {
        verdict.reject({"decoder-completeness", sample.source, input, "consumed the wrong prefix"});
      } else if constexpr (std::equality_comparable<S>) {
        if (!(d->first == sample.source)) {
          verdict.reject({"decoder-completeness", sample.source, input, "decoded another source"});
        }
      }
    }
  }
  for (const auto& input : all_bitstrings(max_bits)) {
    ++verdict.checked;
    auto d = decoder(input);
    if (!d) continue;
    auto prefix = detail::consumed_prefix(input, d->second);
    if (!prefix) {
      verdict.reject({"decoder-soundness", d->first, input, "rest is not a suffix of the input"});
    } else if (!detail::contains(format.relate(d->first), *prefix)) {
      verdict.reject({"decoder-soundness", d->first, input, "accepted an unrelated input"});
    }
  }
  return verdict;
}

template <class S, class Ctx>
Verdict<S> check_decoder_correct(const Format<S, Ctx>& format, const std::vector<S>& sources,
                                 std::size_t max_bits, std::size_t tail_bits = 3) {
  return check_decoder_correct(format, bit_decoder(format), sources, max_bits, tail_bits);
}

// Both round-trip properties on the enumerated instance: decoding an encoding
// (with any short tail) returns the source, and re-encoding any accepted
// input yields a target that decodes to the same value.
template <class S, class Ctx>
Verdict<S> check_round_trips(const Format<S, Ctx>& format, const std::vector<S>& sources,
                             std::size_t max_bits, std::size_t tail_bits = 3) {
  Verdict<S> verdict;
  const std::vector<BitString> tails = all_bitstrings(tail_bits);
  const auto encode = bit_encoder(format);
  const auto decode = bit_decoder(format);
  for (const S& s : sources) {
    auto t = encode(s);
    if (!t) continue;
    for (const auto& tail : tails) {
      ++verdict.checked;
      auto d = decode(append(*t, tail));
      bool ok = d && d->second == tail;
      if constexpr (std::equality_comparable<S>) ok = ok && d->first == s;
      if (!ok) verdict.reject({"decode-inverts-encode", s, *t, ""});
    }
  }
  for (const auto& input : all_bitstrings(max_bits)) {
    auto d = decode(input);
    if (!d) continue;
    ++verdict.checked;
    auto t = encode(d->first);
    auto again = t ? decode(*t) : std::nullopt;
    bool ok = again && again->second.is_empty();
    if constexpr (std::equality_comparable<S>) ok = ok && again->first == d->first;
    if (!ok) verdict.reject({"encode-inverts-decode", d->first, input, ""});
  }
  return verdict;
}

template <class S>
struct Collision {
  S first;
  S second;
  BitString target;
};

template <class S>
struct InjectivityVerdict {
  bool injective = true;
  std::vector<Collision<S>> collisions;

  explicit operator bool() const { return injective; }
};

// A format is injective on `sources` when no two distinct sources share a
// target. Lists every colliding pair (in source order).
template <class F, class S = source_of_t<F>>
InjectivityVerdict<S> check_injectivity(const F& format, const std::vector<S>& sources) {
  InjectivityVerdict<S> verdict;
  std::vector<std::vector<BitString>> targets;
  targets.reserve(sources.size());
  for (const S& s : sources) targets.push_back(format.relate(s));
  for (std::size_t i = 0; i < sources.size(); ++i) {
    for (std::size_t j = i + 1; j < sources.size(); ++j) {
      if constexpr (std::equality_comparable<S>) {
        if (sources[i] == sources[j]) continue;
      }
      for (const auto& t : targets[i]) {
        if (detail::contains(targets[j], t)) {
          verdict.injective = false;
          verdict.collisions.push_back({sources[i], sources[j], t});
          break;
        }
      }
    }
  }
  return verdict;
}

}  // namespace biformat
