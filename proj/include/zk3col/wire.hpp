// Copyright 2026 The zk3col Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ZK3COL_WIRE_HPP_
#define ZK3COL_WIRE_HPP_

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "zk3col/engine.hpp"
#include "zk3col/f3.hpp"

namespace zk3col {

// Newline-delimited ASCII frames with space-separated fields; the first token
// is the frame tag. Bit-exact, debuggable, and trivially portable.

/// 64-bit FNV-1a over arbitrary bytes; applied to the canonical graph text to
/// detect graph mismatches between coordinator and provers.
inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001B3ULL;
  }
  return h;
}

struct HelloMsg {
  Protocol protocol = Protocol::kLoc2;
  std::uint64_t graph_digest = 0;
  std::string role;  // "verifier" or "prover"
  friend bool operator==(const HelloMsg&, const HelloMsg&) = default;
};

struct QMsg {
  int i = 0;
  int j = 0;
  NonzeroTrit r{1};
  NonzeroTrit s{1};
  friend bool operator==(const QMsg&, const QMsg&) = default;
};

struct AMsg {
  Trit w1;
  Trit w2;
  friend bool operator==(const AMsg&, const AMsg&) = default;
};

struct ARefuseMsg {
  friend bool operator==(const ARefuseMsg&, const ARefuseMsg&) = default;
};

struct VerdictMsg {
  bool accepted = false;
  VerdictReason reason = VerdictReason::kAllPassed;
  friend bool operator==(const VerdictMsg&, const VerdictMsg&) = default;
};

struct ErrorMsg {
  std::string text;
  friend bool operator==(const ErrorMsg&, const ErrorMsg&) = default;
};

using WireMessage = std::variant<HelloMsg, QMsg, AMsg, ARefuseMsg, VerdictMsg, ErrorMsg>;

namespace detail {

inline std::string digest_hex(std::uint64_t digest) {
  static const char* kHex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kHex[digest & 0xF];
    digest >>= 4;
  }
  return out;
}

inline std::uint64_t parse_digest_hex(const std::string& hex) {
  if (hex.size() != 16) throw std::invalid_argument("wire: malformed digest");
  std::uint64_t v = 0;
  for (char c : hex) {
    v <<= 4;
    if (c >= '0' && c <= '9') v |= static_cast<std::uint64_t>(c - '0');
    else if (c >= 'a' && c <= 'f') v |= static_cast<std::uint64_t>(c - 'a' + 10);
    else throw std::invalid_argument("wire: malformed digest");
  }
  return v;
}

}  // namespace detail

/// One frame, newline terminated.
inline std::string encode(const WireMessage& msg) {
  struct Visitor {
    std::string operator()(const HelloMsg& m) const {
      return "HELLO " + protocol_name(m.protocol) + " " + detail::digest_hex(m.graph_digest) +
             " " + m.role;
    }
    std::string operator()(const QMsg& m) const {
      return "Q " + std::to_string(m.i) + " " + std::to_string(m.j) + " " +
             std::to_string(m.r.value()) + " " + std::to_string(m.s.value());
    }
    std::string operator()(const AMsg& m) const {
      return "A " + std::to_string(m.w1.value()) + " " + std::to_string(m.w2.value());
    }
    std::string operator()(const ARefuseMsg&) const { return "A-REFUSE"; }
    std::string operator()(const VerdictMsg& m) const {
      return std::string("VERDICT ") + (m.accepted ? "1" : "0") + " " +
             reason_name(m.reason);
    }
    std::string operator()(const ErrorMsg& m) const { return "ERR " + m.text; }
  };
  return std::visit(Visitor{}, msg) + "\n";
}

/// Decodes one frame (without its terminating newline). Throws
/// std::invalid_argument on any malformed input.
inline WireMessage decode(std::string_view line) {
  std::istringstream in{std::string(line)};
  std::string tag;
  if (!(in >> tag)) throw std::invalid_argument("wire: empty frame");

  auto expect_end = [&in](const char* what) {
    std::string extra;
    if (in >> extra) {
      throw std::invalid_argument(std::string("wire: trailing fields in ") + what);
    }
  };

  if (tag == "HELLO") {
    std::string proto, digest, role;
    if (!(in >> proto >> digest >> role)) throw std::invalid_argument("wire: malformed HELLO");
    expect_end("HELLO");
    if (role != "verifier" && role != "prover") {
      throw std::invalid_argument("wire: unknown role in HELLO");
    }
    return HelloMsg{parse_protocol(proto), detail::parse_digest_hex(digest), role};
  }
  if (tag == "Q") {
    long long i = 0, j = 0;
    int r = 0, s = 0;
    if (!(in >> i >> j >> r >> s)) throw std::invalid_argument("wire: malformed Q");
    expect_end("Q");
    if (i < 1 || j < 1 || i > INT32_MAX || j > INT32_MAX || (r != 1 && r != 2) ||
        (s != 1 && s != 2)) {
      throw std::invalid_argument("wire: Q fields out of range");
    }
    return QMsg{static_cast<int>(i), static_cast<int>(j), NonzeroTrit(r), NonzeroTrit(s)};
  }
  if (tag == "A") {
    int w1 = 0, w2 = 0;
    if (!(in >> w1 >> w2)) throw std::invalid_argument("wire: malformed A");
    expect_end("A");
    if (w1 < 0 || w1 > 2 || w2 < 0 || w2 > 2) {
      throw std::invalid_argument("wire: A fields out of range");
    }
    return AMsg{Trit(w1), Trit(w2)};
  }
  if (tag == "A-REFUSE") {
    expect_end("A-REFUSE");
    return ARefuseMsg{};
  }
  if (tag == "VERDICT") {
    int accepted = 0;
    std::string reason;
    if (!(in >> accepted >> reason)) throw std::invalid_argument("wire: malformed VERDICT");
    expect_end("VERDICT");
    if (accepted != 0 && accepted != 1) {
      throw std::invalid_argument("wire: VERDICT fields out of range");
    }
    return VerdictMsg{accepted == 1, parse_reason(reason)};
  }
  if (tag == "ERR") {
    std::string rest;
    std::getline(in, rest);
    if (!rest.empty() && rest.front() == ' ') rest.erase(rest.begin());
    return ErrorMsg{rest};
  }
  throw std::invalid_argument("wire: unknown frame tag '" + tag + "'");
}

inline std::uint64_t graph_digest(const Graph& g) { return fnv1a64(g.canonical_text()); }

}  // namespace zk3col

#endif  // ZK3COL_WIRE_HPP_
