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

#ifndef ZK3COL_RNG_HPP_
#define ZK3COL_RNG_HPP_

#include <cstdint>
#include <random>

#include "zk3col/f3.hpp"
#include "zk3col/rational.hpp"

namespace zk3col {

// Seeded deterministic generator. mt19937_64 output is fully specified by the
// standard, and all bounded draws below avoid std::uniform_int_distribution
// (whose mapping is implementation defined), so identical seeds give
// identical streams on every platform and build.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  static constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

  /// Derives an independent stream seed, e.g. for per-round or per-worker rngs.
  static constexpr std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(seed ^ splitmix64(stream));
  }

  std::uint64_t next_u64() { return gen_(); }

  /// Unbiased uniform draw from [0, n) by rejection.
  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t min = (0 - n) % n;  // 2^64 mod n
    std::uint64_t v;
    do {
      v = gen_();
    } while (v < min);
    return v % n;
  }

  bool coin() { return below(2) == 1; }
  Trit trit() { return Trit(static_cast<int>(below(3))); }
  NonzeroTrit nonzero_trit() { return NonzeroTrit(1 + static_cast<int>(below(2))); }
  ColorPerm color_perm() { return ColorPerm::all()[below(6)]; }

  /// True with probability exactly p (an exact rational in [0, 1]).
  bool bernoulli(const Rational& p) {
    if (p < 0 || p > 1) throw std::invalid_argument("bernoulli: p outside [0,1]");
    const std::uint64_t den = to_u64_checked(denominator(p));
    const std::uint64_t num = to_u64_checked(numerator(p));
    return below(den) < num;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace zk3col

#endif  // ZK3COL_RNG_HPP_
