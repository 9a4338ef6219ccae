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

#ifndef ZK3COL_COMMIT_HPP_
#define ZK3COL_COMMIT_HPP_

#include <optional>
#include <stdexcept>
#include <vector>

#include "zk3col/f3.hpp"
#include "zk3col/graph.hpp"
#include "zk3col/rng.hpp"

namespace zk3col {

// Two-prover commitment over F3 in the original BGKW form: the committed
// value sits in the degree-zero term, the pre-agreed mask in the degree-one
// term, and the verifier supplies the nonzero evaluation point.

/// w = b*r + c.
constexpr Trit commit(Trit mask, NonzeroTrit r, Trit value) {
  return f3_add(f3_mul(mask, r.as_trit()), value);
}

/// Recovers c from two commitments to the same (b, c) under r and -r:
/// c = 2^{-1} (w + w'). Over F3* the only distinct pair is (r, -r), so the
/// general-field form (w r' - w' r)(r' - r)^{-1} agrees; see tests.
inline Trit implicit_unveil(Trit w, NonzeroTrit r, Trit w2, NonzeroTrit r2) {
  if (r == r2) {
    throw std::invalid_argument("implicit_unveil: equal randomness is not an unveiling pair");
  }
  return f3_mul(f3_inv(Trit(2)), f3_add(w, w2));
}

/// The provers' pre-agreed state: a proper colouring plus one mask per vertex.
struct ProverSecret {
  Coloring coloring;
  std::vector<Trit> masks;  // masks[v-1] is b_v

  Trit mask(int v) const { return masks.at(static_cast<std::size_t>(v - 1)); }

  /// Draws a random proper colouring and uniform masks. Consumes the rng in
  /// that order. Returns nullopt when G is not 3-colourable.
  static std::optional<ProverSecret> generate(const Graph& g, Rng& rng) {
    auto coloring = find_coloring(g, rng);
    if (!coloring) return std::nullopt;
    std::vector<Trit> masks;
    masks.reserve(static_cast<std::size_t>(g.vertex_count()));
    for (int v = 1; v <= g.vertex_count(); ++v) masks.push_back(rng.trit());
    return ProverSecret{std::move(*coloring), std::move(masks)};
  }
};

}  // namespace zk3col

#endif  // ZK3COL_COMMIT_HPP_
