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

#ifndef ZK3COL_DIST_HPP_
#define ZK3COL_DIST_HPP_

#include <array>
#include <stdexcept>
#include <string>

#include "zk3col/f3.hpp"
#include "zk3col/graph.hpp"
#include "zk3col/pmf.hpp"
#include "zk3col/rational.hpp"
#include "zk3col/rng.hpp"

namespace zk3col {

/// One verifier question in the committed protocols: an ordered vertex pair
/// plus one nonzero trit per slot. r masks the lower vertex, s the higher.
/// The pair need not be an edge of the graph; honest provers refuse non-edges.
struct Question {
  Edge edge;
  NonzeroTrit r{1};
  NonzeroTrit s{1};

  friend auto operator<=>(const Question&, const Question&) = default;
};

using EdgePair = std::array<Edge, 2>;
using QuestionPair = std::array<Question, 2>;
using QuestionTriple = std::array<Question, 3>;

inline std::string question_token(const Question& q) {
  return edge_token(q.edge) + ":" + std::to_string(q.r.value()) + ":" +
         std::to_string(q.s.value());
}

/// The test weight epsilon: exact rational in (0, 1), default 1/3.
class Epsilon {
 public:
  Epsilon() : value_(1, 3) {}
  explicit Epsilon(Rational v) : value_(std::move(v)) {
    if (value_ <= 0 || value_ >= 1) {
      throw std::invalid_argument("epsilon must lie strictly between 0 and 1");
    }
  }

  const Rational& value() const { return value_; }

 private:
  Rational value_;
};

// The four (r, s) pairs in canonical order. Samplers and pmf builders must
// iterate in this exact order for seed reproducibility.
inline constexpr std::array<std::array<NonzeroTrit, 2>, 4> kRsPairs = {{
    {NonzeroTrit(1), NonzeroTrit(1)},
    {NonzeroTrit(1), NonzeroTrit(2)},
    {NonzeroTrit(2), NonzeroTrit(1)},
    {NonzeroTrit(2), NonzeroTrit(2)},
}};

namespace detail {

inline void require_questionable(const Graph& g) {
  if (g.edge_count() == 0) {
    throw std::invalid_argument("question distribution: graph has no edges");
  }
}

}  // namespace detail

/// Question-pair distribution for the plain two-prover protocol.
///
/// The first edge is uniform. With probability eps the second edge repeats it
/// (edge verification); otherwise the second edge is drawn for a
/// well-definition test: uniformly from the edges at the first edge's lower
/// endpoint with probability 1/2, else uniformly from the edges at its higher
/// endpoint. Disjoint pairs never occur.
inline Pmf<EdgePair> pmf_base(const Graph& g, const Epsilon& eps) {
  detail::require_questionable(g);
  const Rational e = eps.value();
  const int m = g.edge_count();
  typename Pmf<EdgePair>::Builder b;
  for (const Edge& first : g.edges()) {
    const Rational pick_first(1, m);
    b.add({first, first}, pick_first * e);
    for (int v : {first.lo, first.hi}) {
      const Rational side = pick_first * (1 - e) / 2 / g.degree(v);
      for (const Edge& second : g.edges_of(v)) {
        b.add({first, second}, side);
      }
    }
  }
  return std::move(b).build();
}

/// Question-pair distribution for the committed two-prover protocol.
///
/// Draw (e, r, s) with e uniform and (r, s) uniform over (F3*)^2. With
/// probability eps the partner question is (e, -r, -s), the edge-verification
/// event. Otherwise the partner edge follows the well-definition rule of
/// pmf_base and its randomness is uniform, except that when the partner edge
/// equals e the pair (-r, -s) is excluded (uniform over the remaining three):
/// the well-definition branch never reproduces the edge-verification
/// signature, so the latter's total mass is exactly eps and the check phase
/// stays condition driven. Marginalizing out the randomness gives pmf_base.
inline Pmf<QuestionPair> pmf_committed(const Graph& g, const Epsilon& eps) {
  detail::require_questionable(g);
  const Rational e = eps.value();
  const int m = g.edge_count();
  typename Pmf<QuestionPair>::Builder b;
  for (const Edge& first : g.edges()) {
    for (const auto& [r, s] : kRsPairs) {
      const Question q1{first, r, s};
      const Rational pick(Rational(1, m) / 4);
      b.add({q1, Question{first, r.negated(), s.negated()}}, pick * e);
      for (int v : {first.lo, first.hi}) {
        const Rational side = pick * (1 - e) / 2 / g.degree(v);
        for (const Edge& second : g.edges_of(v)) {
          if (second == first) {
            for (const auto& [r2, s2] : kRsPairs) {
              if (r2 == r.negated() && s2 == s.negated()) continue;
              b.add({q1, Question{second, r2, s2}}, side / 3);
            }
          } else {
            for (const auto& [r2, s2] : kRsPairs) {
              b.add({q1, Question{second, r2, s2}}, side / 4);
            }
          }
        }
      }
    }
  }
  return std::move(b).build();
}

/// Question-triple distribution for the three-prover protocol: draw a pair
/// from pmf_committed, then repeat the first or the second question to the
/// third prover with probability 1/2 each.
inline Pmf<QuestionTriple> pmf_triple(const Graph& g, const Epsilon& eps) {
  auto pairs = pmf_committed(g, eps);
  typename Pmf<QuestionTriple>::Builder b;
  for (const auto& [qp, p] : pairs.entries()) {
    b.add({qp[0], qp[1], qp[0]}, p / 2);
    b.add({qp[0], qp[1], qp[1]}, p / 2);
  }
  return std::move(b).build();
}

// Samplers. These are two-stage procedural draws whose induced distribution
// is exactly the corresponding pmf; they never materialize the support, so
// they scale to large graphs. The rng consumption order is part of the
// reproducibility contract.

inline EdgePair sample_base(const Graph& g, const Epsilon& eps, Rng& rng) {
  detail::require_questionable(g);
  const Edge first = g.edges()[rng.below(static_cast<std::uint64_t>(g.edge_count()))];
  if (rng.bernoulli(eps.value())) return {first, first};
  const int v = rng.coin() ? first.hi : first.lo;
  const auto& at_v = g.edges_of(v);
  const Edge second = at_v[rng.below(at_v.size())];
  return {first, second};
}

inline QuestionPair sample_committed(const Graph& g, const Epsilon& eps, Rng& rng) {
  detail::require_questionable(g);
  const Edge first = g.edges()[rng.below(static_cast<std::uint64_t>(g.edge_count()))];
  const NonzeroTrit r = rng.nonzero_trit();
  const NonzeroTrit s = rng.nonzero_trit();
  const Question q1{first, r, s};
  if (rng.bernoulli(eps.value())) {
    return {q1, Question{first, r.negated(), s.negated()}};
  }
  const int v = rng.coin() ? first.hi : first.lo;
  const auto& at_v = g.edges_of(v);
  const Edge second = at_v[rng.below(at_v.size())];
  if (second == first) {
    // Uniform over the three (r2, s2) pairs other than (-r, -s), in kRsPairs
    // order.
    std::uint64_t pick = rng.below(3);
    for (const auto& [r2, s2] : kRsPairs) {
      if (r2 == r.negated() && s2 == s.negated()) continue;
      if (pick == 0) return {q1, Question{second, r2, s2}};
      --pick;
    }
    throw std::logic_error("sample_committed: unreachable");
  }
  const NonzeroTrit r2 = rng.nonzero_trit();
  const NonzeroTrit s2 = rng.nonzero_trit();
  return {q1, Question{second, r2, s2}};
}

inline QuestionTriple sample_triple(const Graph& g, const Epsilon& eps, Rng& rng) {
  const QuestionPair qp = sample_committed(g, eps, rng);
  const Question repeat = rng.coin() ? qp[1] : qp[0];
  return {qp[0], qp[1], repeat};
}

}  // namespace zk3col

#endif  // ZK3COL_DIST_HPP_
