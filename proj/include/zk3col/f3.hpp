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

#ifndef ZK3COL_F3_HPP_
#define ZK3COL_F3_HPP_

#include <array>
#include <cassert>
#include <compare>
#include <cstdint>
#include <stdexcept>

namespace zk3col {

/// An element of F3, the field with three elements {0, 1, 2}.
class Trit {
 public:
  constexpr Trit() = default;
  constexpr explicit Trit(int v) : v_(static_cast<std::uint8_t>(v)) {
    assert(v >= 0 && v <= 2);
  }

  /// Reduces an arbitrary integer mod 3.
  static constexpr Trit wrap(int v) { return Trit(((v % 3) + 3) % 3); }

  constexpr int value() const { return v_; }

  friend constexpr auto operator<=>(Trit, Trit) = default;

 private:
  std::uint8_t v_ = 0;
};

inline constexpr std::array<Trit, 3> kAllTrits = {Trit(0), Trit(1), Trit(2)};

constexpr Trit f3_add(Trit a, Trit b) { return Trit::wrap(a.value() + b.value()); }
constexpr Trit f3_sub(Trit a, Trit b) { return Trit::wrap(a.value() - b.value()); }
constexpr Trit f3_mul(Trit a, Trit b) { return Trit::wrap(a.value() * b.value()); }
constexpr Trit f3_neg(Trit a) { return Trit::wrap(-a.value()); }

/// Multiplicative inverse in F3. Both nonzero elements are self-inverse.
inline Trit f3_inv(Trit a) {
  if (a.value() == 0) throw std::domain_error("f3_inv: zero is not invertible");
  return a;
}

/// An element of F3* = {1, 2}, the nonzero trits.
class NonzeroTrit {
 public:
  constexpr explicit NonzeroTrit(int v) : v_(static_cast<std::uint8_t>(v)) {
    assert(v == 1 || v == 2);
  }

  constexpr int value() const { return v_; }
  constexpr Trit as_trit() const { return Trit(v_); }
  /// The other nonzero trit: -1 = 2 and -2 = 1.
  constexpr NonzeroTrit negated() const { return NonzeroTrit(3 - v_); }

  friend constexpr auto operator<=>(NonzeroTrit, NonzeroTrit) = default;

 private:
  std::uint8_t v_ = 1;
};

inline constexpr std::array<NonzeroTrit, 2> kNonzeroTrits = {NonzeroTrit(1),
                                                             NonzeroTrit(2)};

/// A permutation of the three colours, i.e. a bijection F3 -> F3.
class ColorPerm {
 public:
  constexpr ColorPerm() = default;  // identity
  constexpr explicit ColorPerm(std::array<std::uint8_t, 3> images) : map_(images) {}

  constexpr Trit apply(Trit t) const { return Trit(map_[t.value()]); }

  /// All six permutations, in lexicographic order of their image tuples.
  static const std::array<ColorPerm, 6>& all() {
    static const std::array<ColorPerm, 6> perms = {
        ColorPerm({0, 1, 2}), ColorPerm({0, 2, 1}), ColorPerm({1, 0, 2}),
        ColorPerm({1, 2, 0}), ColorPerm({2, 0, 1}), ColorPerm({2, 1, 0})};
    return perms;
  }

  friend constexpr auto operator<=>(const ColorPerm&, const ColorPerm&) = default;

 private:
  std::array<std::uint8_t, 3> map_ = {0, 1, 2};
};

}  // namespace zk3col

#endif  // ZK3COL_F3_HPP_
