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

#ifndef ZK3COL_RATIONAL_HPP_
#define ZK3COL_RATIONAL_HPP_

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace zk3col {

// Exact probability arithmetic. cpp_rational keeps values reduced with a
// positive denominator, which is exactly the invariant we need.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses "p/q" or a bare integer "p".
inline Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) {
      return Rational(BigInt(std::string(text)));
    }
    BigInt num{std::string(text.substr(0, slash))};
    BigInt den{std::string(text.substr(slash + 1))};
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("parse_rational: malformed rational '" +
                                std::string(text) + "'");
  }
}

/// Formats as "p/q", or "p" when the denominator is 1.
inline std::string format_rational(const Rational& r) {
  std::string s = numerator(r).convert_to<std::string>();
  if (denominator(r) != 1) {
    s += '/';
    s += denominator(r).convert_to<std::string>();
  }
  return s;
}

/// Converts to uint64, throwing when the value does not fit.
inline std::uint64_t to_u64_checked(const BigInt& v) {
  if (v < 0 || v > BigInt(UINT64_MAX)) {
    throw std::overflow_error("value does not fit in 64 bits");
  }
  return v.convert_to<std::uint64_t>();
}

inline std::int64_t to_i64_checked(const BigInt& v) {
  if (v < BigInt(INT64_MIN) || v > BigInt(INT64_MAX)) {
    throw std::overflow_error("value does not fit in signed 64 bits");
  }
  return v.convert_to<std::int64_t>();
}

}  // namespace zk3col

#endif  // ZK3COL_RATIONAL_HPP_
