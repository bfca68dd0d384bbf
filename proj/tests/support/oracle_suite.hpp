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

// A fixed suite of small formats checked exhaustively against their
// relational meaning.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "biformat/base_formats.hpp"
#include "biformat/format.hpp"
#include "biformat/oracle.hpp"
#include "biformat/record.hpp"

namespace biformat::testing {

struct SuiteResult {
  bool encoder = false;
  bool decoder = false;
  bool round_trips = false;
  std::size_t checked = 0;
  std::string first_problem;

  bool ok() const { return encoder && decoder && round_trips; }
};

struct SuiteEntry {
  std::string name;
  std::function<SuiteResult()> run;
};

template <class S>
std::string first_problem(const Verdict<S>& v) {
  if (v.counterexamples.empty()) return "";
  const auto& c = v.counterexamples.front();
  return c.clause + " on target " + c.target.to_digits() + ": " + c.note;
}

// `sources` feed the encoder check (they may include values outside the
// format); `decodable` are the in-format sources used for decoder checks.
template <class S>
SuiteResult run_entry(const Format<S>& format, const std::vector<S>& sources,
                      const std::vector<S>& decodable, std::size_t max_bits) {
  SuiteResult r;
  auto enc = check_encoder_refines(format, sources);
  auto dec = check_decoder_correct(format, decodable, max_bits);
  auto rt = check_round_trips(format, decodable, max_bits);
  r.encoder = enc.passed;
  r.decoder = dec.passed;
  r.round_trips = rt.passed;
  r.checked = enc.checked + dec.checked + rt.checked;
  for (const std::string& p : {first_problem(enc), first_problem(dec), first_problem(rt)}) {
    if (r.first_problem.empty()) r.first_problem = p;
  }
  return r;
}

inline std::vector<std::uint64_t> range(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(i);
  return out;
}

enum class Tag { temp, humidity };

struct Small {
  std::uint64_t x = 0;  // 2 bits
  bool y = false;
  friend bool operator==(const Small&, const Small&) = default;
};

inline std::vector<Small> all_small() {
  std::vector<Small> out;
  for (std::uint64_t x = 0; x < 5; ++x) {
    out.push_back({x, false});
    out.push_back({x, true});
  }
  return out;
}

inline std::vector<Small> valid_small() {
  std::vector<Small> out;
  for (const auto& s : all_small()) {
    if (s.x < 4) out.push_back(s);
  }
  return out;
}

inline std::vector<std::vector<std::uint64_t>> bit_lists(std::size_t max_len, std::uint64_t values) {
  std::vector<std::vector<std::uint64_t>> out{{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (std::uint64_t v = 0; v < values; ++v) {
        auto l = out[i];
        l.push_back(v);
        out.push_back(l);
      }
    }
    begin = end;
  }
  return out;
}

inline std::vector<SuiteEntry> oracle_suite() {
  using U64 = std::uint64_t;
  std::vector<SuiteEntry> suite;
  auto add = [&](std::string name, std::function<SuiteResult()> run) {
    suite.push_back({std::move(name), std::move(run)});
  };

  add("word(3)", [] { return run_entry(word(3), range(10), range(8), 6); });
  add("word(0)", [] { return run_entry(word(0), range(2), range(1), 3); });
  add("nat(2)", [] { return run_entry(nat(2), range(4), range(4), 5); });
  add("const(2, 0b01)", [] { return run_entry(constant(2, 0b01), {Unit{}}, {Unit{}}, 5); });
  add("unused(2)", [] { return run_entry(unused(2), {Unit{}}, {Unit{}}, 5); });
  add("bool", [] { return run_entry(bool_bit(), {false, true}, {false, true}, 4); });
  add("epsilon", [] { return run_entry(epsilon(), {Unit{}}, {Unit{}}, 3); });
  add("enum(2){TEMP,HUM}", [] {
    auto f = enum_format<Tag>(2, {{Tag::temp, 0b00}, {Tag::humidity, 0b01}});
    return run_entry(f, {Tag::temp, Tag::humidity}, {Tag::temp, Tag::humidity}, 5);
  });
  add("seq(word(1), word(2))", [] {
    std::vector<std::pair<U64, U64>> src, ok;
    for (U64 a = 0; a < 3; ++a) {
      for (U64 b = 0; b < 5; ++b) {
        src.emplace_back(a, b);
        if (a < 2 && b < 4) ok.emplace_back(a, b);
      }
    }
    return run_entry(seq(word(1), word(2)), src, ok, 5);
  });
  add("seq(enum(2), word(2))", [] {
    auto f = seq(enum_format<Tag>(2, {{Tag::temp, 0b00}, {Tag::humidity, 0b01}}), word(2));
    std::vector<std::pair<Tag, U64>> src;
    for (Tag t : {Tag::temp, Tag::humidity}) {
      for (U64 b = 0; b < 4; ++b) src.emplace_back(t, b);
    }
    return run_entry(f, src, src, 4);
  });
  add("restrict(word(3), v<5)", [] {
    auto f = restrict(word(3), [](U64 v) { return v < 5; });
    return run_entry(f, range(8), range(5), 5);
  });
  add("record{project(word(2), x), project(bool, y)}", [] {
    auto chain = FieldChain<Small>{}.field(word(2), &Small::x).field(bool_bit(), &Small::y);
    auto f = record("small", std::move(chain),
                    [](auto&& v) { return Small{std::get<0>(v), std::get<1>(v)}; });
    return run_entry(f, all_small(), valid_small(), 5);
  });
  add("record{word(2), unused(1), const(1, 1)}", [] {
    auto chain = FieldChain<U64>{}
                     .field(word(2), [](U64 v) { return v; })
                     .field(unused(1))
                     .field(constant(1, 1));
    auto f = record("padded", std::move(chain), [](auto&& v) { return std::get<0>(v); });
    return run_entry(f, range(5), range(4), 6);
  });
  add("union(0·bit | 1·bit)", [] {
    auto branch = [](U64 tag, U64 lo) {
      auto chain = FieldChain<U64>{}
                       .field(constant(1, tag))
                       .field(word(1), [lo](U64 v) { return v - lo; });
      auto f = record("branch", std::move(chain), [lo](auto&& v) { return std::get<1>(v) + lo; });
      return restrict(f, [lo](U64 v) { return v >= lo && v < lo + 2; });
    };
    auto f = union_of(branch(0, 0), branch(1, 2), [](U64 v) { return v < 2 ? Branch::left : Branch::right; },
                      discriminate(word(1), [](U64 b) -> std::optional<Branch> {
                        return b == 0 ? Branch::left : Branch::right;
                      }));
    return run_entry(f, range(5), range(4), 5);
  });
  add("fixed_list(word(2), 2)", [] {
    auto lists = bit_lists(3, 4);
    std::vector<std::vector<U64>> pairs;
    for (const auto& l : lists) {
      if (l.size() == 2) pairs.push_back(l);
    }
    return run_entry(fixed_list(word(2), 2), lists, pairs, 6);
  });
  add("fixed_list(bool, 2)", [] {
    std::vector<std::vector<bool>> all{{}, {false}, {false, false}, {false, true}, {true, false},
                                       {true, true}, {true, true, true}};
    std::vector<std::vector<bool>> ok(all.begin() + 2, all.begin() + 6);
    return run_entry(fixed_list(bool_bit(), 2), all, ok, 4);
  });
  add("record{nat(2) = |l|, dep_count(l, word(1))}", [] {
    using L = std::vector<U64>;
    auto chain = FieldChain<L>{}
                     .field(nat(2), [](const L& l) { return U64{l.size()}; })
                     .counted([](const auto& v) { return std::optional<std::size_t>(view<0>(v)); },
                              word(1), [](const L& l) { return l; });
    auto f = record("counted", std::move(chain), [](auto&& v) { return std::move(std::get<1>(v)); });
    return run_entry(f, bit_lists(2, 3), bit_lists(2, 2), 6);
  });
  add("restrict(seq(word(2), word(2)), a != b)", [] {
    auto f = restrict(seq(word(2), word(2)), [](const std::pair<U64, U64>& p) { return p.first != p.second; });
    std::vector<std::pair<U64, U64>> all, ok;
    for (U64 a = 0; a < 4; ++a) {
      for (U64 b = 0; b < 4; ++b) {
        all.emplace_back(a, b);
        if (a != b) ok.emplace_back(a, b);
      }
    }
    return run_entry(f, all, ok, 5);
  });
  return suite;
}

}  // namespace biformat::testing
