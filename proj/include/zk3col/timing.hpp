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

#ifndef ZK3COL_TIMING_HPP_
#define ZK3COL_TIMING_HPP_

#include <cstdint>
#include <stdexcept>

#include "zk3col/engine.hpp"
#include "zk3col/rational.hpp"

namespace zk3col {

// Relativistic feasibility arithmetic. The binding constraint is that each
// verifier-prover exchange finishes before a light-speed signal could cross
// between the verifier sites, so the pre-challenge traffic volume sets the
// minimum separation for a given link rate.

/// Trits travel as 2 bits on the wire (values 0..2; the fourth code is
/// reserved). One question names two vertices plus a nonzero trit per slot;
/// one reply is two trits regardless of the protocol or graph size.
struct MessageBits {
  std::int64_t to_prover = 0;
  std::int64_t from_prover = 0;

  std::int64_t total() const { return to_prover + from_prover; }
};

inline std::int64_t ceil_log2(std::int64_t n) {
  std::int64_t bits = 0;
  std::int64_t v = 1;
  while (v < n) {
    v *= 2;
    ++bits;
  }
  return bits;
}

inline MessageBits message_bits(Protocol /*protocol*/, std::int64_t n) {
  if (n < 2) throw std::invalid_argument("message_bits: need at least two vertices");
  return MessageBits{2 * ceil_log2(n) + 4, 4};
}

/// Communication estimate for the quadratic-cost baseline protocol: 200 n^2
/// bits must flow before the unveiling challenge may be announced.
inline std::uint64_t cl17_bits(std::uint64_t n) {
  if (n < 1) throw std::invalid_argument("cl17_bits: need at least one vertex");
  return 200 * n * n;
}

inline constexpr std::uint64_t kSignalSpeedMps = 299'800'000;

struct TimingScenario {
  std::uint64_t bits_per_exchange = 0;
  std::uint64_t link_rate_bps = 0;
  std::uint64_t signal_speed_mps = kSignalSpeedMps;
};

/// Minimum verifier separation in meters: the distance light covers while the
/// pre-challenge bits are in flight, d = c * bits / rate. Propagation delay of
/// the answer itself is not charged; the diagrams bound the commit-phase
/// duration only.
inline Rational min_separation_m(const TimingScenario& s) {
  if (s.link_rate_bps == 0) throw std::invalid_argument("min_separation: zero link rate");
  return Rational(BigInt(s.signal_speed_mps) * s.bits_per_exchange, BigInt(s.link_rate_bps));
}

}  // namespace zk3col

#endif  // ZK3COL_TIMING_HPP_
