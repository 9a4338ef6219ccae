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

#ifndef ZK3COL_ZK_HPP_
#define ZK3COL_ZK_HPP_

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "zk3col/commit.hpp"
#include "zk3col/dist.hpp"
#include "zk3col/engine.hpp"
#include "zk3col/graph.hpp"
#include "zk3col/pmf.hpp"
#include "zk3col/rng.hpp"

namespace zk3col {

// The simulator reproduces the three provers' answers to an arbitrary fixed
// question triple without ever seeing a colouring. It draws a uniform colour
// permutation up front; fresh commitments are uniform trits, and the second
// commitment for a vertex under the opposite randomness is chosen so that
// implicit unveiling recovers the next unused colour of the permutation.

namespace detail {

template <typename FreshFn>
AnswerTriple simulate_core(const Graph& g, const QuestionTriple& questions,
                           const ColorPerm& col, FreshFn&& fresh) {
  const int n = g.vertex_count();
  std::vector<std::array<bool, 2>> mark(static_cast<std::size_t>(n), {false, false});
  std::vector<std::uint8_t> count(static_cast<std::size_t>(n), 0);
  std::vector<std::array<Trit, 2>> table(static_cast<std::size_t>(n));
  int next_color = 0;

  auto handle = [&](int v, NonzeroTrit r) {
    const auto vi = static_cast<std::size_t>(v - 1);
    const auto ri = static_cast<std::size_t>(r.value() - 1);
    if (mark[vi][ri]) return;
    if (count[vi] == 0) {
      table[vi][ri] = fresh();
    } else {
      // count == 1: the opposite randomness is already committed; pick the
      // value whose implicit unveiling yields the next colour.
      const Trit other = table[vi][static_cast<std::size_t>(r.negated().value() - 1)];
      table[vi][ri] = f3_sub(f3_neg(col.apply(Trit(next_color))), other);
      ++next_color;
    }
    ++count[vi];
  };

  AnswerTriple out;
  for (std::size_t l = 0; l < 3; ++l) {
    const Question& q = questions[l];
    if (q.edge.hi > n) {
      throw std::out_of_range("simulate: question vertex outside the graph");
    }
    if (!g.has_edge(q.edge)) {
      out[l] = Answer::refuse();
      continue;
    }
    handle(q.edge.lo, q.r);
    handle(q.edge.hi, q.s);
    mark[static_cast<std::size_t>(q.edge.lo - 1)][static_cast<std::size_t>(q.r.value() - 1)] = true;
    mark[static_cast<std::size_t>(q.edge.hi - 1)][static_cast<std::size_t>(q.s.value() - 1)] = true;
    out[l] = Answer::committed(
        table[static_cast<std::size_t>(q.edge.lo - 1)][static_cast<std::size_t>(q.r.value() - 1)],
        table[static_cast<std::size_t>(q.edge.hi - 1)][static_cast<std::size_t>(q.s.value() - 1)]);
  }
  return out;
}

/// Number of fresh uniform draws the simulator consumes for a question
/// triple. Depends on the questions only, never on drawn values.
inline int count_fresh_draws(const Graph& g, const QuestionTriple& questions) {
  int draws = 0;
  simulate_core(g, questions, ColorPerm(), [&]() {
    ++draws;
    return Trit(0);
  });
  return draws;
}

}  // namespace detail

/// Runs the simulator on a question triple. Note the interface: no colouring
/// and no prover secret ever enter.
inline AnswerTriple simulate(const Graph& g, const QuestionTriple& questions, Rng& rng) {
  const ColorPerm col = rng.color_perm();
  return detail::simulate_core(g, questions, col, [&rng]() { return rng.trit(); });
}

enum class LeakagePattern { kEmpty, kSingle, kEdge, kTriangle };

inline std::string leakage_pattern_name(LeakagePattern p) {
  switch (p) {
    case LeakagePattern::kEmpty: return "EMPTY";
    case LeakagePattern::kSingle: return "SINGLE";
    case LeakagePattern::kEdge: return "EDGE";
    case LeakagePattern::kTriangle: return "TRIANGLE";
  }
  throw std::logic_error("leakage_pattern_name: bad pattern");
}

/// Which vertices a question triple unveils. A vertex's colour is recoverable
/// exactly when commitments for it were issued under both nonzero randomness
/// values; commitments are issued only for questions that are edges of G.
struct LeakageReport {
  std::vector<int> unveiled;  // ascending vertex ids
  LeakagePattern pattern = LeakagePattern::kEmpty;

  std::string token() const {
    std::string out = "pattern=" + leakage_pattern_name(pattern);
    out += " unveiled=";
    for (std::size_t i = 0; i < unveiled.size(); ++i) {
      if (i > 0) out += ',';
      out += std::to_string(unveiled[i]);
    }
    return out;
  }
};

inline LeakageReport leakage(const Graph& g, const QuestionTriple& questions) {
  const int n = g.vertex_count();
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(n), 0);  // bit per randomness
  for (const Question& q : questions) {
    if (q.edge.hi > n || !g.has_edge(q.edge)) continue;
    seen[static_cast<std::size_t>(q.edge.lo - 1)] |= static_cast<std::uint8_t>(q.r.value());
    seen[static_cast<std::size_t>(q.edge.hi - 1)] |= static_cast<std::uint8_t>(q.s.value());
  }
  LeakageReport report;
  for (int v = 1; v <= n; ++v) {
    if (seen[static_cast<std::size_t>(v - 1)] == 3) report.unveiled.push_back(v);
  }
  switch (report.unveiled.size()) {
    case 0: report.pattern = LeakagePattern::kEmpty; break;
    case 1: report.pattern = LeakagePattern::kSingle; break;
    case 2: report.pattern = LeakagePattern::kEdge; break;
    case 3: report.pattern = LeakagePattern::kTriangle; break;
    default:
      throw std::logic_error("leakage: more than three vertices unveiled");
  }
  return report;
}

inline constexpr int kViewEnumerationLimit = 10;

/// Exact distribution of the honest three provers' answers to a fixed
/// question triple, by enumerating the shared secret: 6 colour permutations
/// of the deterministic base colouring times 3^n mask vectors, all
/// equiprobable.
inline Pmf<AnswerTriple> exact_view_dist(const Graph& g, const QuestionTriple& questions) {
  const int n = g.vertex_count();
  if (n > kViewEnumerationLimit) {
    throw std::length_error("exact_view_dist: graph too large for enumeration");
  }
  const auto base = first_proper_coloring(g);
  if (!base) {
    throw std::domain_error("exact_view_dist: graph is not 3-colourable");
  }
  std::uint64_t mask_count = 1;
  for (int i = 0; i < n; ++i) mask_count *= 3;
  const Rational each(1, BigInt(6) * mask_count);

  typename Pmf<AnswerTriple>::Builder b;
  std::vector<Trit> masks(static_cast<std::size_t>(n));
  for (const ColorPerm& perm : ColorPerm::all()) {
    const Coloring colored = base->permuted(perm);
    for (std::uint64_t mi = 0; mi < mask_count; ++mi) {
      std::uint64_t rest = mi;
      for (int v = 0; v < n; ++v) {
        masks[static_cast<std::size_t>(v)] = Trit(static_cast<int>(rest % 3));
        rest /= 3;
      }
      const ProverSecret secret{colored, masks};
      AnswerTriple answers;
      for (std::size_t l = 0; l < 3; ++l) {
        answers[l] = honest_answer_committed(g, secret, questions[l]);
      }
      b.add(answers, each);
    }
  }
  return std::move(b).build();
}

/// Exact distribution of the simulator's output for a fixed question triple,
/// by enumerating its randomness: 6 permutations times every assignment of
/// the fresh uniform draws it actually consumes.
inline Pmf<AnswerTriple> exact_sim_dist(const Graph& g, const QuestionTriple& questions) {
  if (g.vertex_count() > kViewEnumerationLimit) {
    throw std::length_error("exact_sim_dist: graph too large for enumeration");
  }
  const int draws = detail::count_fresh_draws(g, questions);
  std::uint64_t tape_count = 1;
  for (int i = 0; i < draws; ++i) tape_count *= 3;
  const Rational each(1, BigInt(6) * tape_count);

  typename Pmf<AnswerTriple>::Builder b;
  for (const ColorPerm& perm : ColorPerm::all()) {
    for (std::uint64_t ti = 0; ti < tape_count; ++ti) {
      std::uint64_t rest = ti;
      auto fresh = [&]() {
        const Trit t(static_cast<int>(rest % 3));
        rest /= 3;
        return t;
      };
      b.add(detail::simulate_core(g, questions, perm, fresh), each);
    }
  }
  return std::move(b).build();
}

inline std::string answer_triple_token(const AnswerTriple& answers) {
  return answer_token(answers[0]) + "|" + answer_token(answers[1]) + "|" +
         answer_token(answers[2]);
}

}  // namespace zk3col

#endif  // ZK3COL_ZK_HPP_
