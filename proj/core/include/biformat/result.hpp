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
#include <string_view>
#include <utility>
#include <variant>

namespace biformat {

// Source type of formats that carry no information (constants, padding).
struct Unit {
  friend bool operator==(Unit, Unit) = default;
};

// Why an encoder or decoder produced no result. Values are stable: the CLI
// prints them and scripts match on them.
enum class Reason : std::uint8_t {
  short_input,
  constraint_violation,
  bad_constant,
  bad_checksum,
  unknown_enum,
  no_union_branch,
  buffer_overflow,
};

std::string_view to_string(Reason reason);

struct Failure {
  Reason reason;
  // Position (in bits from the start of the encode/decode call) of the
  // element that failed.
  std::size_t bit_offset;

  friend bool operator==(const Failure&, const Failure&) = default;
};

// Value-or-failure. Plays the role of the option monad in encoders and
// decoders, with a reason attached to the failure side.
template <class T>
class [[nodiscard]] Result {
 public:
  Result(T value) : state_(std::in_place_index<0>, std::move(value)) {}
  Result(Failure failure) : state_(std::in_place_index<1>, failure) {}

  bool ok() const { return state_.index() == 0; }
  explicit operator bool() const { return ok(); }

  T& value() & { return std::get<0>(state_); }
  const T& value() const& { return std::get<0>(state_); }
  T&& value() && { return std::get<0>(std::move(state_)); }

  T* operator->() { return &value(); }
  const T* operator->() const { return &value(); }
  T& operator*() & { return value(); }
  const T& operator*() const& { return value(); }

  const Failure& failure() const { return std::get<1>(state_); }

 private:
  std::variant<T, Failure> state_;
};

using Status = Result<Unit>;

inline Status success() { return Unit{}; }

inline Failure fail(Reason reason, std::size_t bit_offset) {
  return Failure{reason, bit_offset};
}

}  // namespace biformat
