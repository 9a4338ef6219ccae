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

#ifndef ZK3COL_ADVERSARY_HPP_
#define ZK3COL_ADVERSARY_HPP_

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "zk3col/commit.hpp"
#include "zk3col/dist.hpp"
#include "zk3col/engine.hpp"
#include "zk3col/graph.hpp"
#include "zk3col/pmf.hpp"
#include "zk3col/rng.hpp"

namespace zk3col {

// Deterministic cheating strategies. A strategy is a total answer table over
// the protocol's question domain; randomized adversaries add nothing here
// because each prover can fix the answer that maximizes its success per
// question.

using StrategyAnswer = std::array<Trit, 2>;  // (lower slot, higher slot)

inline constexpr int kAnswerCount = 9;

inline StrategyAnswer decode_answer(int code) {
  return {Trit(code / 3), Trit(code % 3)};
}

inline int encode_answer(const StrategyAnswer& a) {
  return a[0].value() * 3 + a[1].value();
}

/// Answer table for the plain protocol, indexed by graph edge index.
struct Std2Strategy {
  std::vector<StrategyAnswer> by_edge;

  friend bool operator==(const Std2Strategy&, const Std2Strategy&) = default;
};

inline int rs_index(NonzeroTrit r, NonzeroTrit s) {
  return (r.value() - 1) * 2 + (s.value() - 1);
}

/// Answer table for the committed protocols, indexed by
/// edge_index * 4 + rs_index.
struct LocStrategy {
  std::vector<StrategyAnswer> by_question;

  friend bool operator==(const LocStrategy&, const LocStrategy&) = default;
};

inline Std2Strategy honest_std2_strategy(const Graph& g, const ProverSecret& secret) {
  Std2Strategy w;
  w.by_edge.reserve(g.edges().size());
  for (const Edge& e : g.edges()) {
    w.by_edge.push_back({secret.coloring.at(e.lo), secret.coloring.at(e.hi)});
  }
  return w;
}

inline LocStrategy honest_loc_strategy(const Graph& g, const ProverSecret& secret) {
  LocStrategy w;
  w.by_question.reserve(g.edges().size() * 4);
  for (const Edge& e : g.edges()) {
    for (const auto& [r, s] : kRsPairs) {
      w.by_question.push_back({commit(secret.mask(e.lo), r, secret.coloring.at(e.lo)),
                               commit(secret.mask(e.hi), s, secret.coloring.at(e.hi))});
    }
  }
  return w;
}

/// The strategy a well-defined table family induces: commitments derived from
/// an arbitrary (not necessarily proper) colouring and masks. Both provers
/// using the same table of this shape pass every consistency test.
inline LocStrategy colored_loc_strategy(const Graph& g, const Coloring& coloring,
                                        const std::vector<Trit>& masks) {
  ProverSecret s{coloring, masks};
  return honest_loc_strategy(g, s);
}

inline Std2Strategy random_std2_strategy(const Graph& g, Rng& rng) {
  Std2Strategy w;
  w.by_edge.reserve(g.edges().size());
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    w.by_edge.push_back({rng.trit(), rng.trit()});
  }
  return w;
}

inline LocStrategy random_loc_strategy(const Graph& g, Rng& rng) {
  LocStrategy w;
  w.by_question.reserve(g.edges().size() * 4);
  for (std::size_t i = 0; i < g.edges().size() * 4; ++i) {
    w.by_question.push_back({rng.trit(), rng.trit()});
  }
  return w;
}

namespace detail {

// Acceptance predicates precompiled per ordered question pair. These must
// agree with the engine's check functions; a property test enforces it.
struct CompiledCheck {
  enum class Kind : std::uint8_t {
    kAlwaysAccept,
    kStd2Same,       // equal per-vertex colours, distinct across the edge
    kLocEdgeVerify,  // unveiled sums must differ
    kLocWdSame,      // per-slot equality where randomness matches
    kShared,         // equality of the shared vertex's commitments
  };
  Kind kind = Kind::kAlwaysAccept;
  bool test_lo = false;
  bool test_hi = false;
  std::uint8_t slot1 = 0;
  std::uint8_t slot2 = 0;
};

inline bool compiled_accept(const CompiledCheck& c, const StrategyAnswer& a1,
                            const StrategyAnswer& a2) {
  using Kind = CompiledCheck::Kind;
  switch (c.kind) {
    case Kind::kAlwaysAccept:
      return true;
    case Kind::kStd2Same:
      return a1[0] == a2[0] && a1[1] == a2[1] && a1[0] != a1[1];
    case Kind::kLocEdgeVerify:
      return f3_add(a1[0], a2[0]) != f3_add(a1[1], a2[1]);
    case Kind::kLocWdSame:
      return (!c.test_lo || a1[0] == a2[0]) && (!c.test_hi || a1[1] == a2[1]);
    case Kind::kShared:
      return a1[c.slot1] == a2[c.slot2];
  }
  return true;
}

inline CompiledCheck compile_std2(Edge e1, Edge e2) {
  const EdgeRelation rel = edge_relation(e1, e2);
  CompiledCheck c;
  switch (rel.kind) {
    case EdgeRelation::Kind::kSame:
      c.kind = CompiledCheck::Kind::kStd2Same;
      return c;
    case EdgeRelation::Kind::kSharedVertex:
      c.kind = CompiledCheck::Kind::kShared;
      c.slot1 = (rel.vertex == e1.lo) ? 0 : 1;
      c.slot2 = (rel.vertex == e2.lo) ? 0 : 1;
      return c;
    case EdgeRelation::Kind::kDisjoint:
      return c;
  }
  return c;
}

inline CompiledCheck compile_loc2(const Question& q1, const Question& q2) {
  const EdgeRelation rel = edge_relation(q1.edge, q2.edge);
  CompiledCheck c;
  switch (rel.kind) {
    case EdgeRelation::Kind::kSame: {
      if (q1.r != q2.r && q1.s != q2.s) {
        c.kind = CompiledCheck::Kind::kLocEdgeVerify;
      } else {
        c.kind = CompiledCheck::Kind::kLocWdSame;
        c.test_lo = (q1.r == q2.r);
        c.test_hi = (q1.s == q2.s);
      }
      return c;
    }
    case EdgeRelation::Kind::kSharedVertex: {
      const NonzeroTrit r1 = (rel.vertex == q1.edge.lo) ? q1.r : q1.s;
      const NonzeroTrit r2 = (rel.vertex == q2.edge.lo) ? q2.r : q2.s;
      if (r1 != r2) return c;  // no test
      c.kind = CompiledCheck::Kind::kShared;
      c.slot1 = (rel.vertex == q1.edge.lo) ? 0 : 1;
      c.slot2 = (rel.vertex == q2.edge.lo) ? 0 : 1;
      return c;
    }
    case EdgeRelation::Kind::kDisjoint:
      return c;
  }
  return c;
}

// Rescales a pmf to integer weights over the least common denominator.
template <typename Outcome>
std::pair<std::vector<std::int64_t>, std::int64_t> integer_weights(
    const Pmf<Outcome>& pmf) {
  BigInt denom = 1;
  for (const auto& [o, p] : pmf.entries()) {
    denom = boost::multiprecision::lcm(denom, BigInt(denominator(p)));
  }
  std::vector<std::int64_t> weights;
  weights.reserve(pmf.size());
  for (const auto& [o, p] : pmf.entries()) {
    weights.push_back(to_i64_checked(BigInt(numerator(p)) * (denom / denominator(p))));
  }
  return {std::move(weights), to_i64_checked(denom)};
}

}  // namespace detail

/// Exact acceptance evaluation and best responses for the plain game.
class Std2Evaluator {
 public:
  Std2Evaluator(const Graph& g, const Epsilon& eps) : graph_(&g) {
    const auto pmf = pmf_base(g, eps);
    auto [weights, denom] = detail::integer_weights(pmf);
    denom_ = denom;
    const int m = g.edge_count();
    by_responder_.assign(static_cast<std::size_t>(m), {});
    by_first_.assign(static_cast<std::size_t>(m), {});
    std::size_t k = 0;
    for (const auto& [pair, p] : pmf.entries()) {
      Outcome o;
      o.q1 = g.edge_index(pair[0]);
      o.q2 = g.edge_index(pair[1]);
      o.weight = weights[k++];
      o.check = detail::compile_std2(pair[0], pair[1]);
      if (o.check.kind == detail::CompiledCheck::Kind::kAlwaysAccept) {
        always_weight_ += o.weight;
        continue;
      }
      by_responder_[static_cast<std::size_t>(o.q2)].push_back(o);
      by_first_[static_cast<std::size_t>(o.q1)].push_back(o);
      outcomes_.push_back(o);
    }
  }

  std::int64_t denom() const { return denom_; }
  const Graph& graph() const { return *graph_; }

  std::int64_t accepted_weight(const Std2Strategy& w1, const Std2Strategy& w2) const {
    validate(w1);
    validate(w2);
    std::int64_t acc = always_weight_;
    for (const Outcome& o : outcomes_) {
      if (detail::compiled_accept(o.check, w1.by_edge[static_cast<std::size_t>(o.q1)],
                                  w2.by_edge[static_cast<std::size_t>(o.q2)])) {
        acc += o.weight;
      }
    }
    return acc;
  }

  Rational accept_prob(const Std2Strategy& w1, const Std2Strategy& w2) const {
    return Rational(accepted_weight(w1, w2), denom_);
  }

  /// Exact best response for one slot against a fixed opponent. Ties break
  /// toward the lexicographically smallest (w_lo, w_hi).
  Std2Strategy best_response(const Std2Strategy& opponent, int slot) const {
    validate(opponent);
    if (slot != 1 && slot != 2) throw std::invalid_argument("best_response: slot must be 1 or 2");
    const auto& buckets = (slot == 2) ? by_responder_ : by_first_;
    Std2Strategy out;
    out.by_edge.resize(buckets.size());
    for (std::size_t q = 0; q < buckets.size(); ++q) {
      std::int64_t best = -1;
      int best_code = 0;
      for (int code = 0; code < kAnswerCount; ++code) {
        const StrategyAnswer a = decode_answer(code);
        std::int64_t score = 0;
        for (const Outcome& o : buckets[q]) {
          const bool ok =
              (slot == 2)
                  ? detail::compiled_accept(
                        o.check, opponent.by_edge[static_cast<std::size_t>(o.q1)], a)
                  : detail::compiled_accept(
                        o.check, a, opponent.by_edge[static_cast<std::size_t>(o.q2)]);
          if (ok) score += o.weight;
        }
        if (score > best) {
          best = score;
          best_code = code;
        }
      }
      out.by_edge[q] = decode_answer(best_code);
    }
    return out;
  }

  /// accepted_weight(w1, best_response(w1, 2)) computed without materializing
  /// the response; used by the exhaustive outer enumeration.
  std::int64_t best_response_weight(const Std2Strategy& w1) const {
    std::int64_t total = always_weight_;
    for (const auto& bucket : by_responder_) {
      std::int64_t best = 0;
      for (int code = 0; code < kAnswerCount; ++code) {
        const StrategyAnswer a = decode_answer(code);
        std::int64_t score = 0;
        for (const Outcome& o : bucket) {
          if (detail::compiled_accept(o.check,
                                      w1.by_edge[static_cast<std::size_t>(o.q1)], a)) {
            score += o.weight;
          }
        }
        best = std::max(best, score);
      }
      total += best;
    }
    return total;
  }

 private:
  struct Outcome {
    int q1 = 0;
    int q2 = 0;
    std::int64_t weight = 0;
    detail::CompiledCheck check;
  };

  void validate(const Std2Strategy& w) const {
    if (w.by_edge.size() != static_cast<std::size_t>(graph_->edge_count())) {
      throw std::invalid_argument("strategy not total on the edge domain");
    }
  }

  const Graph* graph_;
  std::int64_t denom_ = 1;
  std::int64_t always_weight_ = 0;
  std::vector<Outcome> outcomes_;
  std::vector<std::vector<Outcome>> by_responder_;  // keyed by q2
  std::vector<std::vector<Outcome>> by_first_;      // keyed by q1
};

/// Exact acceptance evaluation and best responses for the committed game.
class Loc2Evaluator {
 public:
  Loc2Evaluator(const Graph& g, const Epsilon& eps) : graph_(&g) {
    const auto pmf = pmf_committed(g, eps);
    auto [weights, denom] = detail::integer_weights(pmf);
    denom_ = denom;
    const int q_count = g.edge_count() * 4;
    by_responder_.assign(static_cast<std::size_t>(q_count), {});
    by_first_.assign(static_cast<std::size_t>(q_count), {});
    std::size_t k = 0;
    for (const auto& [pair, p] : pmf.entries()) {
      Outcome o;
      o.q1 = question_index(g, pair[0]);
      o.q2 = question_index(g, pair[1]);
      o.weight = weights[k++];
      o.check = detail::compile_loc2(pair[0], pair[1]);
      if (o.check.kind == detail::CompiledCheck::Kind::kAlwaysAccept) {
        always_weight_ += o.weight;
        continue;
      }
      by_responder_[static_cast<std::size_t>(o.q2)].push_back(o);
      by_first_[static_cast<std::size_t>(o.q1)].push_back(o);
      outcomes_.push_back(o);
    }
  }

  static int question_index(const Graph& g, const Question& q) {
    return g.edge_index(q.edge) * 4 + rs_index(q.r, q.s);
  }

  std::int64_t denom() const { return denom_; }
  const Graph& graph() const { return *graph_; }
  int question_count() const { return graph_->edge_count() * 4; }

  std::int64_t accepted_weight(const LocStrategy& w1, const LocStrategy& w2) const {
    validate(w1);
    validate(w2);
    std::int64_t acc = always_weight_;
    for (const Outcome& o : outcomes_) {
      if (detail::compiled_accept(o.check,
                                  w1.by_question[static_cast<std::size_t>(o.q1)],
                                  w2.by_question[static_cast<std::size_t>(o.q2)])) {
        acc += o.weight;
      }
    }
    return acc;
  }

  Rational accept_prob(const LocStrategy& w1, const LocStrategy& w2) const {
    return Rational(accepted_weight(w1, w2), denom_);
  }

  LocStrategy best_response(const LocStrategy& opponent, int slot) const {
    validate(opponent);
    if (slot != 1 && slot != 2) throw std::invalid_argument("best_response: slot must be 1 or 2");
    const auto& buckets = (slot == 2) ? by_responder_ : by_first_;
    LocStrategy out;
    out.by_question.resize(buckets.size());
    for (std::size_t q = 0; q < buckets.size(); ++q) {
      std::int64_t best = -1;
      int best_code = 0;
      for (int code = 0; code < kAnswerCount; ++code) {
        const StrategyAnswer a = decode_answer(code);
        std::int64_t score = 0;
        for (const Outcome& o : buckets[q]) {
          const bool ok =
              (slot == 2)
                  ? detail::compiled_accept(
                        o.check, opponent.by_question[static_cast<std::size_t>(o.q1)], a)
                  : detail::compiled_accept(
                        o.check, a,
                        opponent.by_question[static_cast<std::size_t>(o.q2)]);
          if (ok) score += o.weight;
        }
        if (score > best) {
          best = score;
          best_code = code;
        }
      }
      out.by_question[q] = decode_answer(best_code);
    }
    return out;
  }

 private:
  struct Outcome {
    int q1 = 0;
    int q2 = 0;
    std::int64_t weight = 0;
    detail::CompiledCheck check;
  };

  void validate(const LocStrategy& w) const {
    if (w.by_question.size() != static_cast<std::size_t>(question_count())) {
      throw std::invalid_argument("strategy not total on the question domain");
    }
  }

  const Graph* graph_;
  std::int64_t denom_ = 1;
  std::int64_t always_weight_ = 0;
  std::vector<Outcome> outcomes_;
  std::vector<std::vector<Outcome>> by_responder_;
  std::vector<std::vector<Outcome>> by_first_;
};

/// Exact acceptance for the three-prover game. The classical third prover is
/// just another answer table; the natural optimum copies one of the first two.
class Qnl3Evaluator {
 public:
  Qnl3Evaluator(const Graph& g, const Epsilon& eps) : graph_(&g) {
    const auto pmf = pmf_triple(g, eps);
    auto [weights, denom] = detail::integer_weights(pmf);
    denom_ = denom;
    std::size_t k = 0;
    for (const auto& [triple, p] : pmf.entries()) {
      Outcome o;
      o.q1 = Loc2Evaluator::question_index(g, triple[0]);
      o.q2 = Loc2Evaluator::question_index(g, triple[1]);
      o.q3 = Loc2Evaluator::question_index(g, triple[2]);
      o.matches_first = (triple[2] == triple[0]);
      o.matches_second = (triple[2] == triple[1]);
      o.weight = weights[k++];
      o.check = detail::compile_loc2(triple[0], triple[1]);
      outcomes_.push_back(o);
    }
  }

  std::int64_t denom() const { return denom_; }

  std::int64_t accepted_weight(const LocStrategy& w1, const LocStrategy& w2,
                               const LocStrategy& w3) const {
    const int q_count = graph_->edge_count() * 4;
    for (const LocStrategy* w : {&w1, &w2, &w3}) {
      if (w->by_question.size() != static_cast<std::size_t>(q_count)) {
        throw std::invalid_argument("strategy not total on the question domain");
      }
    }
    std::int64_t acc = 0;
    for (const Outcome& o : outcomes_) {
      const StrategyAnswer& a1 = w1.by_question[static_cast<std::size_t>(o.q1)];
      const StrategyAnswer& a2 = w2.by_question[static_cast<std::size_t>(o.q2)];
      const StrategyAnswer& a3 = w3.by_question[static_cast<std::size_t>(o.q3)];
      if (o.matches_first && a3 != a1) continue;
      if (o.matches_second && a3 != a2) continue;
      if (!detail::compiled_accept(o.check, a1, a2)) continue;
      acc += o.weight;
    }
    return acc;
  }

  Rational accept_prob(const LocStrategy& w1, const LocStrategy& w2,
                       const LocStrategy& w3) const {
    return Rational(accepted_weight(w1, w2, w3), denom_);
  }

 private:
  struct Outcome {
    int q1 = 0;
    int q2 = 0;
    int q3 = 0;
    bool matches_first = false;
    bool matches_second = false;
    std::int64_t weight = 0;
    detail::CompiledCheck check;
  };

  const Graph* graph_;
  std::int64_t denom_ = 1;
  std::vector<Outcome> outcomes_;
};

// One-shot wrappers over the evaluators.

inline Rational strategy_accept_prob(const Graph& g, const Epsilon& eps,
                                     const Std2Strategy& w1, const Std2Strategy& w2) {
  return Std2Evaluator(g, eps).accept_prob(w1, w2);
}

inline Rational strategy_accept_prob(const Graph& g, const Epsilon& eps,
                                     const LocStrategy& w1, const LocStrategy& w2) {
  return Loc2Evaluator(g, eps).accept_prob(w1, w2);
}

inline Rational strategy_accept_prob(const Graph& g, const Epsilon& eps,
                                     const LocStrategy& w1, const LocStrategy& w2,
                                     const LocStrategy& w3) {
  return Qnl3Evaluator(g, eps).accept_prob(w1, w2, w3);
}

inline Std2Strategy best_response(const Graph& g, const Epsilon& eps,
                                  const Std2Strategy& opponent, int slot) {
  return Std2Evaluator(g, eps).best_response(opponent, slot);
}

inline LocStrategy best_response(const Graph& g, const Epsilon& eps,
                                 const LocStrategy& opponent, int slot) {
  return Loc2Evaluator(g, eps).best_response(opponent, slot);
}

// Soundness bound formulas.

/// Classical soundness bound for the committed two-prover game on a graph
/// that is not 3-colourable: 1 - 1/(12 m).
inline Rational classical_bound(std::int64_t m) {
  if (m < 1) throw std::invalid_argument("classical_bound: need at least one edge");
  return 1 - Rational(1, 12 * BigInt(m));
}

/// Entangled-prover bound for the three-prover game, with the intermediate
/// chain it is derived from: each prover sees |Q| = 4 m possible questions,
/// the detection probability delta satisfies
/// sqrt(delta) >= 1/(12 m + 576 m^2) >= 1/(588 m^2), and the final bound is
/// 1 - (1/(25 m))^4.
struct QuantumBoundReport {
  Rational bound;
  BigInt question_count;
  Rational sqrt_delta_chain;
  Rational sqrt_delta_floor;
};

inline QuantumBoundReport quantum_bound(std::int64_t m) {
  if (m < 1) throw std::invalid_argument("quantum_bound: need at least one edge");
  const BigInt mm(m);
  QuantumBoundReport r;
  r.question_count = 4 * mm;
  r.sqrt_delta_chain = Rational(1, 12 * mm + 576 * mm * mm);
  r.sqrt_delta_floor = Rational(1, 588 * mm * mm);
  Rational base(1, 25 * mm);
  r.bound = 1 - base * base * base * base;
  return r;
}

// Game value search.

enum class ValueMethod { kExhaustive, kEnumBestResponse, kLocalSearch };

inline std::string value_method_name(ValueMethod m) {
  switch (m) {
    case ValueMethod::kExhaustive: return "exhaustive";
    case ValueMethod::kEnumBestResponse: return "enum-best-response";
    case ValueMethod::kLocalSearch: return "local-search";
  }
  throw std::logic_error("value_method_name: bad method");
}

/// A computed game value plus the witnesses that achieve it. Local search
/// values are lower bounds only.
struct GameValueReport {
  Rational value;
  ValueMethod method = ValueMethod::kLocalSearch;
  Protocol protocol = Protocol::kLoc2;
  int restarts = 0;
  std::uint64_t iterations = 0;
  std::vector<Std2Strategy> std2_witness;  // two tables when protocol is std2
  std::vector<LocStrategy> loc_witness;    // two tables otherwise

  std::string serialize(const Graph& g) const {
    std::string out = "method=" + value_method_name(method) +
                      " value=" + format_rational(value) +
                      " restarts=" + std::to_string(restarts) +
                      " iterations=" + std::to_string(iterations);
    auto answer_text = [](const StrategyAnswer& a) {
      return std::to_string(a[0].value()) + " " + std::to_string(a[1].value());
    };
    for (std::size_t w = 0; w < std2_witness.size(); ++w) {
      for (std::size_t i = 0; i < g.edges().size(); ++i) {
        const Edge e = g.edges()[i];
        out += "\nW" + std::to_string(w + 1) + " e=(" + std::to_string(e.lo) + "," +
               std::to_string(e.hi) + ") : " + answer_text(std2_witness[w].by_edge[i]);
      }
    }
    for (std::size_t w = 0; w < loc_witness.size(); ++w) {
      for (std::size_t i = 0; i < g.edges().size(); ++i) {
        const Edge e = g.edges()[i];
        for (const auto& [r, s] : kRsPairs) {
          const auto qi = static_cast<std::size_t>(
              Loc2Evaluator::question_index(g, Question{e, r, s}));
          out += "\nW" + std::to_string(w + 1) + " e=(" + std::to_string(e.lo) + "," +
                 std::to_string(e.hi) + ") " + std::to_string(r.value()) + " " +
                 std::to_string(s.value()) + " : " +
                 answer_text(loc_witness[w].by_question[qi]);
        }
      }
    }
    return out;
  }
};

namespace detail {

inline Std2Strategy std2_strategy_from_digits(const Graph& g, std::uint64_t index) {
  Std2Strategy w;
  w.by_edge.resize(g.edges().size());
  for (std::size_t i = 0; i < w.by_edge.size(); ++i) {
    w.by_edge[i] = decode_answer(static_cast<int>(index % kAnswerCount));
    index /= kAnswerCount;
  }
  return w;
}

}  // namespace detail

inline constexpr int kExactValueEdgeLimit = 8;

/// Exact classical value of the plain game: enumerate every first-prover
/// table and pair it with the exact best response. Feasible up to |E| = 8.
/// The outer loop partitions across workers; the maximum merges
/// deterministically (greater weight wins, then the smaller table index).
inline GameValueReport exact_value_std2(const Graph& g, const Epsilon& eps,
                                        int jobs = 1) {
  const int m = g.edge_count();
  if (m > kExactValueEdgeLimit) {
    throw std::length_error("exact_value_std2: graph too large for enumeration");
  }
  if (jobs < 1) jobs = 1;
  const Std2Evaluator ev(g, eps);
  std::uint64_t table_count = 1;
  for (int i = 0; i < m; ++i) table_count *= kAnswerCount;

  struct Best {
    std::int64_t weight = -1;
    std::uint64_t index = 0;
  };
  std::vector<Best> results(static_cast<std::size_t>(jobs));
  auto worker = [&](int wid) {
    Best local;
    for (std::uint64_t idx = static_cast<std::uint64_t>(wid); idx < table_count;
         idx += static_cast<std::uint64_t>(jobs)) {
      const Std2Strategy w1 = detail::std2_strategy_from_digits(g, idx);
      const std::int64_t weight = ev.best_response_weight(w1);
      if (weight > local.weight ||
          (weight == local.weight && idx < local.index)) {
        local = {weight, idx};
      }
    }
    results[static_cast<std::size_t>(wid)] = local;
  };
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(jobs));
    for (int wjob = 0; wjob < jobs; ++wjob) threads.emplace_back(worker, wjob);
    for (auto& t : threads) t.join();
  }
  Best best;
  for (const Best& b : results) {
    if (b.weight > best.weight || (b.weight == best.weight && b.index < best.index)) {
      best = b;
    }
  }

  GameValueReport report;
  report.value = Rational(best.weight, ev.denom());
  report.method = ValueMethod::kEnumBestResponse;
  report.protocol = Protocol::kStd2;
  report.iterations = table_count;
  Std2Strategy w1 = detail::std2_strategy_from_digits(g, best.index);
  Std2Strategy w2 = ev.best_response(w1, 2);
  report.std2_witness = {std::move(w1), std::move(w2)};
  return report;
}

/// Alternating best response from random initial tables until the value stops
/// improving; the maximum over restarts is a lower bound on the game value.
/// For the three-prover game the pair dynamics run on the two-prover game and
/// the reported value gives the third prover the better copy of the two
/// tables, the optimal classical copy policy.
inline GameValueReport local_search_value(const Graph& g, const Epsilon& eps,
                                          Protocol protocol, int restarts,
                                          std::uint64_t seed, int jobs = 1) {
  if (restarts < 1) throw std::invalid_argument("local_search_value: need restarts >= 1");
  if (jobs < 1) jobs = 1;

  GameValueReport report;
  report.method = ValueMethod::kLocalSearch;
  report.protocol = protocol;
  report.restarts = restarts;

  if (protocol == Protocol::kStd2) {
    const Std2Evaluator ev(g, eps);
    struct Best {
      std::int64_t weight = -1;
      int restart = 0;
      Std2Strategy w1, w2;
      std::uint64_t iters = 0;
    };
    std::vector<Best> results(static_cast<std::size_t>(jobs));
    auto worker = [&](int wid) {
      Best local;
      for (int k = wid; k < restarts; k += jobs) {
        Rng rng(Rng::mix(seed, static_cast<std::uint64_t>(k)));
        Std2Strategy w1 = random_std2_strategy(g, rng);
        Std2Strategy w2 = random_std2_strategy(g, rng);
        std::int64_t value = ev.accepted_weight(w1, w2);
        std::uint64_t iters = 0;
        while (true) {
          Std2Strategy w2n = ev.best_response(w1, 2);
          Std2Strategy w1n = ev.best_response(w2n, 1);
          const std::int64_t next = ev.accepted_weight(w1n, w2n);
          ++iters;
          if (next <= value) break;
          value = next;
          w1 = std::move(w1n);
          w2 = std::move(w2n);
        }
        if (value > local.weight || (value == local.weight && k < local.restart)) {
          local = {value, k, w1, w2, iters};
        }
      }
      results[static_cast<std::size_t>(wid)] = local;
    };
    if (jobs == 1) {
      worker(0);
    } else {
      std::vector<std::thread> threads;
      for (int wjob = 0; wjob < jobs; ++wjob) threads.emplace_back(worker, wjob);
      for (auto& t : threads) t.join();
    }
    Best best;
    for (Best& b : results) {
      if (b.weight > best.weight || (b.weight == best.weight && b.restart < best.restart)) {
        best = std::move(b);
      }
    }
    report.value = Rational(best.weight, ev.denom());
    report.iterations = best.iters;
    report.std2_witness = {std::move(best.w1), std::move(best.w2)};
    return report;
  }

  const Loc2Evaluator ev(g, eps);
  const bool triple = (protocol == Protocol::kQnl3);
  const Qnl3Evaluator* ev3 = nullptr;
  std::optional<Qnl3Evaluator> ev3_storage;
  if (triple) {
    ev3_storage.emplace(g, eps);
    ev3 = &*ev3_storage;
  }

  struct Best {
    Rational value = -1;
    int restart = 0;
    LocStrategy w1, w2;
    std::uint64_t iters = 0;
  };
  std::vector<Best> results(static_cast<std::size_t>(jobs));
  auto final_value = [&](const LocStrategy& w1, const LocStrategy& w2) -> Rational {
    if (!triple) return ev.accept_prob(w1, w2);
    return std::max(ev3->accept_prob(w1, w2, w1), ev3->accept_prob(w1, w2, w2));
  };
  auto worker = [&](int wid) {
    Best local;
    for (int k = wid; k < restarts; k += jobs) {
      Rng rng(Rng::mix(seed, static_cast<std::uint64_t>(k)));
      LocStrategy w1 = random_loc_strategy(g, rng);
      LocStrategy w2 = random_loc_strategy(g, rng);
      std::int64_t value = ev.accepted_weight(w1, w2);
      std::uint64_t iters = 0;
      while (true) {
        LocStrategy w2n = ev.best_response(w1, 2);
        LocStrategy w1n = ev.best_response(w2n, 1);
        const std::int64_t next = ev.accepted_weight(w1n, w2n);
        ++iters;
        if (next <= value) break;
        value = next;
        w1 = std::move(w1n);
        w2 = std::move(w2n);
      }
      const Rational v = final_value(w1, w2);
      if (v > local.value || (v == local.value && k < local.restart)) {
        local = {v, k, w1, w2, iters};
      }
    }
    results[static_cast<std::size_t>(wid)] = local;
  };
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> threads;
    for (int wjob = 0; wjob < jobs; ++wjob) threads.emplace_back(worker, wjob);
    for (auto& t : threads) t.join();
  }
  Best best;
  for (Best& b : results) {
    if (b.value > best.value || (b.value == best.value && b.restart < best.restart)) {
      best = std::move(b);
    }
  }
  report.value = best.value;
  report.iterations = best.iters;
  report.loc_witness = {std::move(best.w1), std::move(best.w2)};
  return report;
}

}  // namespace zk3col

#endif  // ZK3COL_ADVERSARY_HPP_
