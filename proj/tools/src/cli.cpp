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

#include "biformat_cli/cli.hpp"

#include <CLI11/CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>

#include "biformat/format.hpp"
#include "biformat/net/fields.hpp"
#include "biformat/net/formats.hpp"

namespace biformat::cli {

namespace {

using json = nlohmann::ordered_json;
using Bytes = std::vector<std::uint8_t>;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string format;
  std::vector<std::string> hex;
  std::string raw;
  std::string out_file;
  bool json = false;
  bool stacked = false;
  std::string src_ip;
  std::string dst_ip;
  std::optional<std::size_t> frame_length;
  std::optional<std::size_t> buffer_size;
  std::size_t size = 1500;
  std::size_t iterations = 100000;
};

const std::vector<std::string>& format_names() {
  static const std::vector<std::string> kNames{"ethernet", "arp", "ipv4", "udp", "tcp"};
  return kNames;
}

// ---------------------------------------------------------------------------
// Input.

Bytes read_input(const Options& o, std::istream& in) {
  if (!o.raw.empty()) {
    std::ifstream file(o.raw, std::ios::binary);
    if (!file) throw UsageError("cannot read " + o.raw);
    return Bytes(std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>());
  }
  std::string text;
  if (o.hex.empty()) {
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  } else {
    for (const auto& h : o.hex) text += h + " ";
  }
  try {
    return net::parse_hex(text);
  } catch (const net::FieldError& e) {
    throw UsageError(std::string("bad hex input: ") + e.what());
  }
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// key=value lines (blank lines and '#' comments skipped) or a JSON object.
net::FieldText read_fields(std::istream& in) {
  const std::string text(std::istreambuf_iterator<char>(in), {});
  net::FieldText fields;
  if (trim(text).starts_with("{")) {
    json doc;
    try {
      doc = json::parse(text);
    } catch (const json::exception& e) {
      throw UsageError(std::string("bad JSON input: ") + e.what());
    }
    const json& body = doc.contains("fields") ? doc["fields"] : doc;
    if (!body.is_object()) throw UsageError("JSON input must be an object");
    for (const auto& [key, value] : body.items()) {
      if (value.is_string()) {
        fields[key] = value.get<std::string>();
      } else if (value.is_boolean()) {
        fields[key] = value.get<bool>() ? "true" : "false";
      } else if (value.is_number_unsigned()) {
        fields[key] = std::to_string(value.get<std::uint64_t>());
      } else {
        throw UsageError("field " + key + ": expected a string, boolean or unsigned number");
      }
    }
    return fields;
  }
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError("expected key=value, got: " + line);
    fields[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return fields;
}

std::uint32_t address_flag(const std::string& flag, const std::string& text) {
  try {
    return net::parse_ipv4_address(text);
  } catch (const net::FieldError&) {
    throw UsageError(flag + ": not an IPv4 address: " + text);
  }
}

std::size_t buffer_size(const Options& o) {
  if (o.buffer_size) return *o.buffer_size;
  if (const char* env = std::getenv("BIFORMAT_BUFFER_SIZE")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') throw UsageError("BIFORMAT_BUFFER_SIZE is not a number");
    return static_cast<std::size_t>(v);
  }
  return kDefaultBufferSize;
}

// ---------------------------------------------------------------------------
// Output.

std::string failure_text(const Failure& f) {
  return "reason=" + std::string(to_string(f.reason)) + " bit_offset=" + std::to_string(f.bit_offset);
}

json to_json(const net::FieldValue& v) {
  if (const auto* n = std::get_if<std::uint64_t>(&v)) return *n;
  if (const auto* b = std::get_if<bool>(&v)) return *b;
  return std::get<std::string>(v);
}

void print_fields(std::ostream& out, const net::Fields& fields, const std::string& prefix = "") {
  for (const auto& f : fields) out << prefix << f.name << '=' << net::render(f.value) << '\n';
}

json fields_json(const net::Fields& fields) {
  json obj = json::object();
  for (const auto& f : fields) obj[f.name] = to_json(f.value);
  return obj;
}

int report_failure(const Options& o, const std::string& what, const Failure& f, std::ostream& out,
                   std::ostream& err) {
  if (o.json) {
    out << json{{"error", {{"operation", what},
                           {"reason", std::string(to_string(f.reason))},
                           {"bit_offset", f.bit_offset}}}}
               .dump()
        << '\n';
  }
  err << "error: " << what << " failed: " << failure_text(f) << '\n';
  return kExitFailure;
}

// ---------------------------------------------------------------------------
// Format selection.

// One decoded layer: the record, where it starts and how long it is.
template <class S>
struct Layer {
  Format<S> format;
  S value;
  std::size_t offset = 0;  // bytes into the input
  std::size_t length = 0;  // bytes consumed
};

struct ByteMask {
  std::size_t byte;
  std::uint8_t mask;
};

template <class S>
std::vector<ByteMask> masks_of(const Layer<S>&) {
  std::vector<ByteMask> out;
  auto add_unused = [&](const std::vector<net::UnusedBits>& bits) {
    for (const auto& b : bits) out.push_back({b.byte, b.mask});
  };
  auto add_slot = [&](std::size_t slot) {
    out.push_back({slot, 0xFF});
    out.push_back({slot + 1, 0xFF});
  };
  if constexpr (std::is_same_v<S, net::Ipv4Header>) {
    add_unused(net::ipv4_unused_bits());
    add_slot(10);
  } else if constexpr (std::is_same_v<S, net::TcpSegment>) {
    add_unused(net::tcp_unused_bits());
    add_slot(16);
  } else if constexpr (std::is_same_v<S, net::UdpDatagram>) {
    add_slot(6);
  }
  return out;
}

net::Pseudoheader flag_pseudo(const Options& o, net::IpProtocol protocol, std::size_t length) {
  if (o.src_ip.empty() || o.dst_ip.empty()) {
    throw UsageError(o.format + " needs --src-ip and --dst-ip, or --stacked");
  }
  return {address_flag("--src-ip", o.src_ip), address_flag("--dst-ip", o.dst_ip), protocol,
          static_cast<std::uint16_t>(length)};
}

// Length the UDP pseudoheader carries: the datagram's own length field.
std::size_t udp_length_hint(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 6) return bytes.size();
  return static_cast<std::size_t>(bytes[4]) << 8 | bytes[5];
}

template <class S>
Result<Layer<S>> decode_layer(const Format<S>& format, std::span<const std::uint8_t> bytes,
                              std::size_t offset) {
  auto d = decode_aligned(format, bytes.subspan(offset));
  if (!d) return fail(d.failure().reason, d.failure().bit_offset + 8 * offset);
  return Layer<S>{format, std::move(d->value), offset, d->consumed_bytes()};
}

// Decodes `bytes` as the requested format (after an IPv4 header when
// stacked) and hands the decoded layers to `fn(ip_layer_or_null, layer)`.
constexpr const Layer<net::Ipv4Header>* kNoIp = nullptr;

template <class Fn>
auto with_decoded(const Options& o, std::span<const std::uint8_t> bytes, Fn&& fn)
    -> Result<decltype(fn(kNoIp, std::declval<const Layer<net::ArpPacket>&>()))> {
  const std::string& name = o.format;
  if (name == "ethernet") {
    auto l = decode_layer(net::ethernet_format(o.frame_length.value_or(bytes.size())), bytes, 0);
    if (!l) return l.failure();
    return fn(kNoIp, *l);
  }
  if (name == "arp") {
    auto l = decode_layer(net::arp_format(), bytes, 0);
    if (!l) return l.failure();
    return fn(kNoIp, *l);
  }
  if (name == "ipv4") {
    auto l = decode_layer(net::ipv4_format(), bytes, 0);
    if (!l) return l.failure();
    return fn(kNoIp, *l);
  }
  const auto protocol = name == "udp" ? net::IpProtocol::udp : net::IpProtocol::tcp;
  std::optional<Layer<net::Ipv4Header>> ip;
  std::size_t start = 0;
  net::Pseudoheader pseudo;
  std::size_t segment = 0;
  if (o.stacked) {
    auto l = decode_layer(net::ipv4_format(), bytes, 0);
    if (!l) return l.failure();
    ip = std::move(*l);
    // The protocol byte sits 72 bits into the header.
    if (ip->value.protocol != protocol) return fail(Reason::constraint_violation, 72);
    start = ip->length;
    const std::size_t total = ip->value.total_length;
    segment = total >= ip->length ? total - ip->length : 0;
    pseudo = net::pseudoheader_for(ip->value, segment);
  } else {
    segment = name == "udp" ? udp_length_hint(bytes) : bytes.size();
    pseudo = flag_pseudo(o, protocol, segment);
  }
  const Layer<net::Ipv4Header>* outer = ip ? &*ip : nullptr;
  if (name == "udp") {
    auto l = decode_layer(net::udp_format(pseudo), bytes, start);
    if (!l) return l.failure();
    return fn(outer, *l);
  }
  auto l = decode_layer(net::tcp_format(pseudo, segment), bytes, start);
  if (!l) return l.failure();
  return fn(outer, *l);
}

// ---------------------------------------------------------------------------
// Commands.

int cmd_decode(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  const Bytes bytes = read_input(o, in);
  std::ostringstream text;
  json doc;
  auto result = with_decoded(o, bytes, [&](const auto* ip, const auto& layer) -> std::size_t {
    const std::size_t end = layer.offset + layer.length;
    const Bytes leftover(bytes.begin() + static_cast<long>(end), bytes.end());
    doc["format"] = o.format;
    if (ip) {
      doc["ip"] = fields_json(net::to_fields(ip->value));
      print_fields(text, net::to_fields(ip->value), "ip.");
    }
    doc["fields"] = fields_json(net::to_fields(layer.value));
    doc["consumed_bytes"] = end;
    doc["leftover"] = net::to_hex(leftover);
    print_fields(text, net::to_fields(layer.value));
    text << "consumed_bytes=" << end << '\n' << "leftover=" << net::to_hex(leftover) << '\n';
    return end;
  });
  if (!result) return report_failure(o, "decode", result.failure(), out, err);
  if (o.json) {
    out << doc.dump() << '\n';
  } else {
    out << text.str();
  }
  return kExitOk;
}

template <class S>
int emit_encoding(const Options& o, const Format<S>& format, const S& value, std::ostream& out,
                  std::ostream& err) {
  Bytes buffer(buffer_size(o));
  auto e = encode_aligned(format, value, buffer);
  if (!e) return report_failure(o, "encode", e.failure(), out, err);
  buffer.resize(e->written_bytes());
  if (!o.out_file.empty()) {
    std::ofstream file(o.out_file, std::ios::binary);
    if (!file) throw UsageError("cannot write " + o.out_file);
    file.write(reinterpret_cast<const char*>(buffer.data()), static_cast<std::streamsize>(buffer.size()));
    if (o.json) out << json{{"bytes", buffer.size()}, {"file", o.out_file}}.dump() << '\n';
    return kExitOk;
  }
  if (o.json) {
    out << json{{"bytes", buffer.size()}, {"hex", net::to_hex(buffer)}}.dump() << '\n';
  } else {
    out << net::to_hex(buffer) << '\n';
  }
  return kExitOk;
}

int cmd_encode(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  if (o.stacked) throw UsageError("--stacked applies to decode and roundtrip only");
  const net::FieldText fields = read_fields(in);
  try {
    if (o.format == "ethernet") {
      const auto frame = net::ethernet_from_fields(fields);
      const std::size_t length =
          o.frame_length.value_or(net::kEthernetHeaderBytes + frame.payload.size());
      return emit_encoding(o, net::ethernet_format(length), frame, out, err);
    }
    if (o.format == "arp") return emit_encoding(o, net::arp_format(), net::arp_from_fields(fields), out, err);
    if (o.format == "ipv4") {
      return emit_encoding(o, net::ipv4_format(), net::ipv4_from_fields(fields), out, err);
    }
    if (o.format == "udp") {
      const auto d = net::udp_from_fields(fields);
      return emit_encoding(o, net::udp_format(flag_pseudo(o, net::IpProtocol::udp, d.length())), d,
                           out, err);
    }
    const auto s = net::tcp_from_fields(fields);
    return emit_encoding(o, net::tcp_format(flag_pseudo(o, net::IpProtocol::tcp, s.length()), s.length()),
                         s, out, err);
  } catch (const net::FieldError& e) {
    throw UsageError(e.what());
  }
}

struct Difference {
  std::size_t offset;
  std::uint8_t original;
  std::uint8_t reencoded;
  bool masked;
};

template <class S>
std::optional<std::vector<Difference>> compare_layer(const Layer<S>& layer,
                                                     std::span<const std::uint8_t> input,
                                                     std::size_t capacity) {
  Bytes again(capacity);
  auto e = encode_aligned(layer.format, layer.value, again);
  if (!e || e->written_bytes() != layer.length) return std::nullopt;
  const auto masks = masks_of(layer);
  std::vector<Difference> diffs;
  for (std::size_t i = 0; i < layer.length; ++i) {
    const std::uint8_t a = input[layer.offset + i];
    const std::uint8_t b = again[i];
    if (a == b) continue;
    std::uint8_t ignore = 0;
    for (const auto& m : masks) {
      if (m.byte == i) ignore |= m.mask;
    }
    diffs.push_back({layer.offset + i, a, b, ((a ^ b) & ~ignore) == 0});
  }
  return diffs;
}

std::string hex_byte(std::uint8_t b) { return net::to_hex({b}); }

int cmd_roundtrip(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  const Bytes bytes = read_input(o, in);
  const std::size_t capacity = buffer_size(o);
  bool reencoded = true;
  std::vector<Difference> diffs;
  auto result = with_decoded(o, bytes, [&](const auto* ip, const auto& layer) -> std::size_t {
    for (auto part : {ip ? compare_layer(*ip, bytes, capacity) : std::optional<std::vector<Difference>>{std::vector<Difference>{}},
                      compare_layer(layer, bytes, capacity)}) {
      if (!part) {
        reencoded = false;
        continue;
      }
      diffs.insert(diffs.end(), part->begin(), part->end());
    }
    return layer.offset + layer.length;
  });
  if (!result) return report_failure(o, "decode", result.failure(), out, err);
  std::size_t masked = 0;
  for (const auto& d : diffs) masked += d.masked ? 1 : 0;
  const bool match = reencoded && masked == diffs.size();
  if (o.json) {
    json list = json::array();
    for (const auto& d : diffs) {
      list.push_back({{"offset", d.offset},
                      {"original", hex_byte(d.original)},
                      {"reencoded", hex_byte(d.reencoded)},
                      {"masked", d.masked}});
    }
    out << json{{"match", match}, {"bytes", *result}, {"masked_differences", masked},
                {"differences", list}}
               .dump()
        << '\n';
  } else {
    out << "match=" << (match ? "true" : "false") << '\n'
        << "bytes=" << *result << '\n'
        << "masked_differences=" << masked << '\n';
    for (const auto& d : diffs) {
      out << (d.masked ? "masked=" : "mismatch=") << d.offset << ':' << hex_byte(d.original)
          << "->" << hex_byte(d.reencoded) << '\n';
    }
  }
  if (!reencoded) err << "error: decoded record did not re-encode to the same length\n";
  return match ? kExitOk : kExitFailure;
}

int cmd_bench(const Options& o, std::ostream& out) {
  if (o.iterations == 0) throw UsageError("--iters must be positive");
  auto r = run_bench(o.format, o.size, o.iterations);
  if (!r) throw UsageError("cannot benchmark " + o.format);
  if (o.json) {
    out << json{{"format", r->format},
                {"packet_bytes", r->packet_bytes},
                {"iterations", r->iterations},
                {"fast_encode_ns", r->fast_encode_ns},
                {"fast_decode_ns", r->fast_decode_ns},
                {"reference_decode_ns", r->reference_decode_ns},
                {"speedup", r->speedup()}}
               .dump()
        << '\n';
    return kExitOk;
  }
  out << std::fixed << std::setprecision(1);
  out << "format=" << r->format << '\n'
      << "packet_bytes=" << r->packet_bytes << '\n'
      << "iterations=" << r->iterations << '\n'
      << "fast_encode_ns=" << r->fast_encode_ns << '\n'
      << "fast_decode_ns=" << r->fast_decode_ns << '\n'
      << "reference_decode_ns=" << r->reference_decode_ns << '\n'
      << std::setprecision(2) << "speedup=" << r->speedup() << '\n';
  return kExitOk;
}

constexpr const char* kFooter = R"(Exit codes:
  0  success
  1  decode or encode failure, or round-trip mismatch
  2  usage error (bad flags, format name, hex or field text)

Failure reasons:
  short-input, constraint-violation, bad-constant, bad-checksum,
  unknown-enum, no-union-branch, buffer-overflow

Environment:
  BIFORMAT_BUFFER_SIZE  encode capacity in bytes when --buffer-size is absent)";

void add_format(CLI::App* cmd, Options& o) {
  cmd->add_option("format", o.format, "Packet format")
      ->required()
      ->check(CLI::IsMember(format_names()));
}

void add_layer_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--src-ip", o.src_ip, "Pseudoheader source address (udp, tcp)");
  cmd->add_option("--dst-ip", o.dst_ip, "Pseudoheader destination address (udp, tcp)");
  cmd->add_option("--frame-length", o.frame_length,
                  "Ethernet frame length in bytes (default: the input or payload size)");
  cmd->add_flag("--json", o.json, "Machine-readable JSON output");
}

void add_input_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("hex", o.hex, "Input bytes as hex (default: read hex from stdin)");
  cmd->add_option("--raw", o.raw, "Read binary input from a file");
  cmd->add_flag("--stacked", o.stacked, "udp/tcp input starts with its IPv4 header");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
  Options o;
  CLI::App app{"Encode, decode and check network packets with biformat codecs", "biformat"};
  app.footer(kFooter);
  app.require_subcommand(1);

  auto* decode = app.add_subcommand("decode", "Decode bytes and print the record's fields");
  add_format(decode, o);
  add_input_flags(decode, o);
  add_layer_flags(decode, o);

  auto* encode = app.add_subcommand("encode", "Encode key=value (or JSON) fields from stdin");
  add_format(encode, o);
  add_layer_flags(encode, o);
  encode->add_option("--buffer-size", o.buffer_size, "Output buffer capacity in bytes (default 2048)");
  encode->add_option("--out", o.out_file, "Write raw bytes to a file instead of hex to stdout");
  encode->add_flag("--stacked", o.stacked, "Not supported for encode");

  auto* roundtrip = app.add_subcommand("roundtrip", "Decode, re-encode and compare");
  add_format(roundtrip, o);
  add_input_flags(roundtrip, o);
  add_layer_flags(roundtrip, o);
  roundtrip->add_option("--buffer-size", o.buffer_size, "Re-encode buffer capacity in bytes");

  auto* bench = app.add_subcommand("bench", "Time fast and reference codecs");
  add_format(bench, o);
  bench->add_option("--size", o.size, "Packet size in bytes")->capture_default_str();
  bench->add_option("--iters", o.iterations, "Iterations per timed path")->capture_default_str();
  bench->add_flag("--json", o.json, "Machine-readable JSON output");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*decode) return cmd_decode(o, in, out, err);
    if (*encode) return cmd_encode(o, in, out, err);
    if (*roundtrip) return cmd_roundtrip(o, in, out, err);
    return cmd_bench(o, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace biformat::cli
