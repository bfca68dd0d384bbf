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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace biformat::cli {

enum ExitCode : int {
  kExitOk = 0,
  // Decode or encode absence, or a round-trip mismatch.
  kExitFailure = 1,
  // Bad flags, unknown format names, malformed hex or field text.
  kExitUsage = 2,
};

inline constexpr std::size_t kDefaultBufferSize = 2048;

// Runs one command line (without the program name) against the given
// streams. The `biformat` executable is a thin wrapper around this.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

// Median nanoseconds per packet for each path.
struct BenchResult {
  std::string format;
  std::size_t packet_bytes = 0;
  std::size_t iterations = 0;
  double fast_encode_ns = 0;
  double fast_decode_ns = 0;
  double reference_decode_ns = 0;

  double speedup() const { return reference_decode_ns / fast_decode_ns; }
};

// The timing loop behind `biformat bench`. `size` is the packet size in
// bytes (ignored for arp, clamped to each format's limits). Returns nothing
// for unknown formats or zero iterations.
std::optional<BenchResult> run_bench(const std::string& format, std::size_t size,
                                     std::size_t iterations);

}  // namespace biformat::cli
