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

#include <catch2/catch_amalgamated.hpp>

#include "support/test_support.hpp"
#include "zk3col/adversary.hpp"

using namespace zk3col;
using namespace zk3col::testing;

namespace {

ProverSecret some_secret(const Graph& g, std::uint64_t seed) {
  Rng rng(seed);
  auto s = ProverSecret::generate(g, rng);
  REQUIRE(s.has_value());
  return *s;
}

}  // namespace

TEST_CASE("compiled predicates agree with the engine checks") {
  const Graph g = c5();
  std::vector<Question> questions;
  for (const Edge& e : g.edges()) {
    for (const auto& [r, s] : kRsPairs) questions.push_back(Question{e, r, s});
  }
  Rng rng(21);
  for (int trial = 0; trial < 20000; ++trial) {
    const Question& q1 = questions[rng.below(questions.size())];
    const Question& q2 = questions[rng.below(questions.size())];
    const StrategyAnswer a1 = {rng.trit(), rng.trit()};
    const StrategyAnswer a2 = {rng.trit(), rng.trit()};
    const bool engine_says =
        check_loc2(g, q1, q2, Answer::committed(a1[0], a1[1]),
                   Answer::committed(a2[0], a2[1]))
            .accepted;
    const bool compiled_says =
        detail::compiled_accept(detail::compile_loc2(q1, q2), a1, a2);
    CHECK(engine_says == compiled_says);

    const bool engine_std = check_std2(g, q1.edge, q2.edge, Answer::committed(a1[0], a1[1]),
                                       Answer::committed(a2[0], a2[1]))
                                .accepted;
    const bool compiled_std =
        detail::compiled_accept(detail::compile_std2(q1.edge, q2.edge), a1, a2);
    CHECK(engine_std == compiled_std);
  }
}

TEST_CASE("honest strategies achieve value 1") {
  for (const Graph& g : {k3(), c5()}) {
    const ProverSecret s = some_secret(g, 4);
    const LocStrategy w = honest_loc_strategy(g, s);
    CHECK(strategy_accept_prob(g, Epsilon{}, w, w) == 1);
    CHECK(strategy_accept_prob(g, Epsilon{}, w, w, w) == 1);
    const Std2Strategy w2 = honest_std2_strategy(g, s);
    CHECK(strategy_accept_prob(g, Epsilon{}, w2, w2) == 1);
  }
}

TEST_CASE("all-zero strategy on K4 accepts with probability exactly 2/3") {
  const Graph g = k4();
  const Coloring zero(std::vector<Trit>(4, Trit(0)));
  for (std::uint64_t mseed : {1ULL, 2ULL}) {
    Rng rng(mseed);
    std::vector<Trit> masks;
    for (int v = 0; v < 4; ++v) masks.push_back(rng.trit());
    const LocStrategy w = colored_loc_strategy(g, zero, masks);
    CHECK(strategy_accept_prob(g, Epsilon{}, w, w) == Rational(2, 3));
  }
}

TEST_CASE("well-defined improper tables accept at exactly 1 - eps*mono/|E|") {
  const Graph g = k4();
  const Loc2Evaluator ev(g, Epsilon{});
  const std::vector<Trit> masks = {Trit(0), Trit(1), Trit(2), Trit(1)};
  for (const Coloring& c : all_colorings(4)) {
    int mono = 0;
    for (const Edge& e : g.edges()) mono += (c.at(e.lo) == c.at(e.hi)) ? 1 : 0;
    const LocStrategy w = colored_loc_strategy(g, c, masks);
    CHECK(ev.accept_prob(w, w) == 1 - Rational(1, 3) * mono / 6);
    // Detection at least eps/(4|E|), comfortably: every K4 colouring has a
    // monochromatic edge.
    CHECK(ev.accept_prob(w, w) <= 1 - Rational(1, 3) / (4 * 6));
  }
}

TEST_CASE("single-point well-definedness violations are detected") {
  const Graph g = k4();
  const Epsilon eps;
  const Loc2Evaluator ev(g, eps);
  const Coloring zero(std::vector<Trit>(4, Trit(0)));
  const std::vector<Trit> masks = {Trit(1), Trit(0), Trit(2), Trit(2)};
  const LocStrategy base = colored_loc_strategy(g, zero, masks);
  const Rational wdt_bound = 1 - (1 - eps.value()) / (8 * 6);

  for (int v = 1; v <= 4; ++v) {
    for (NonzeroTrit r : kNonzeroTrits) {
      // Corrupt the second prover's commitment for (v, r) on every edge at v.
      LocStrategy bad = base;
      for (const Edge& e : g.edges_of(v)) {
        for (const auto& [qr, qs] : kRsPairs) {
          const auto qi = static_cast<std::size_t>(
              Loc2Evaluator::question_index(g, Question{e, qr, qs}));
          if (e.lo == v && qr == r) bad.by_question[qi][0] = f3_add(bad.by_question[qi][0], Trit(1));
          if (e.hi == v && qs == r) bad.by_question[qi][1] = f3_add(bad.by_question[qi][1], Trit(1));
        }
      }
      CHECK(ev.accept_prob(base, bad) <= wdt_bound);
    }
  }
}

TEST_CASE("best_response against honest play recovers value 1") {
  const Graph g = k3();
  const ProverSecret s = some_secret(g, 12);
  const Loc2Evaluator ev(g, Epsilon{});
  const LocStrategy honest = honest_loc_strategy(g, s);
  const LocStrategy response = ev.best_response(honest, 2);
  CHECK(ev.accept_prob(honest, response) == 1);
  const Std2Evaluator evs(g, Epsilon{});
  const Std2Strategy honest_std = honest_std2_strategy(g, s);
  CHECK(evs.accept_prob(honest_std, evs.best_response(honest_std, 2)) == 1);
}

TEST_CASE("responding identically to the all-zero table achieves at least 2/3") {
  const Graph g = k4();
  const Loc2Evaluator ev(g, Epsilon{});
  const Coloring zero(std::vector<Trit>(4, Trit(0)));
  const LocStrategy w = colored_loc_strategy(g, zero, std::vector<Trit>(4, Trit(2)));
  const LocStrategy response = ev.best_response(w, 2);
  CHECK(ev.accept_prob(w, response) >= Rational(2, 3));
}

TEST_CASE("best_response never lowers the value and is idempotent in value") {
  const Graph g = k4();
  const Loc2Evaluator ev(g, Epsilon{});
  Rng rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    const LocStrategy w1 = random_loc_strategy(g, rng);
    const LocStrategy w2 = random_loc_strategy(g, rng);
    const LocStrategy br = ev.best_response(w1, 2);
    CHECK(ev.accept_prob(w1, br) >= ev.accept_prob(w1, w2));
    const LocStrategy br1 = ev.best_response(br, 1);
    CHECK(ev.accept_prob(br1, br) >= ev.accept_prob(w1, br));
  }
}

TEST_CASE("strategy validation rejects non-total tables") {
  const Graph g = k3();
  const Loc2Evaluator ev(g, Epsilon{});
  LocStrategy too_small;
  too_small.by_question.resize(3);
  Rng rng(1);
  const LocStrategy ok = random_loc_strategy(g, rng);
  CHECK_THROWS_AS(ev.accept_prob(too_small, ok), std::invalid_argument);
}

TEST_CASE("exact_value_std2 equals joint enumeration on control graphs") {
  // Single edge: 3-colourable, value 1.
  const Graph one = single_edge();
  const GameValueReport via_br = exact_value_std2(one, Epsilon{});
  const GameValueReport via_joint = joint_enumeration_value_std2(one, Epsilon{});
  CHECK(via_br.value == 1);
  CHECK(via_br.value == via_joint.value);

  // K3: 3-colourable, value 1, and the two routes agree.
  const GameValueReport k3_br = exact_value_std2(k3(), Epsilon{});
  const GameValueReport k3_joint = joint_enumeration_value_std2(k3(), Epsilon{});
  CHECK(k3_br.value == 1);
  CHECK(k3_br.value == k3_joint.value);
}

TEST_CASE("exact_value_std2 witness reproduces the value") {
  const GameValueReport r = exact_value_std2(k3(), Epsilon{});
  REQUIRE(r.std2_witness.size() == 2);
  CHECK(strategy_accept_prob(k3(), Epsilon{}, r.std2_witness[0], r.std2_witness[1]) ==
        r.value);
  CHECK(r.method == ValueMethod::kEnumBestResponse);
}

TEST_CASE("exact_value_std2 rejects graphs beyond the enumeration limit") {
  CHECK_THROWS_AS(exact_value_std2(petersen(), Epsilon{}), std::length_error);
}

TEST_CASE("local search reaches 1 on K3 and never exceeds it") {
  const GameValueReport r = local_search_value(k3(), Epsilon{}, Protocol::kLoc2, 100, 42);
  CHECK(r.value == 1);
  REQUIRE(r.loc_witness.size() == 2);
  CHECK(strategy_accept_prob(k3(), Epsilon{}, r.loc_witness[0], r.loc_witness[1]) == 1);
}

TEST_CASE("local search on the triple game reaches 1 on K3") {
  const GameValueReport r = local_search_value(k3(), Epsilon{}, Protocol::kQnl3, 100, 7);
  CHECK(r.value == 1);
}

TEST_CASE("alternating best response values are non-decreasing") {
  const Graph g = k4();
  const Loc2Evaluator ev(g, Epsilon{});
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    LocStrategy w1 = random_loc_strategy(g, rng);
    LocStrategy w2 = random_loc_strategy(g, rng);
    Rational prev = ev.accept_prob(w1, w2);
    for (int step = 0; step < 6; ++step) {
      w2 = ev.best_response(w1, 2);
      const Rational after2 = ev.accept_prob(w1, w2);
      CHECK(after2 >= prev);
      w1 = ev.best_response(w2, 1);
      const Rational after1 = ev.accept_prob(w1, w2);
      CHECK(after1 >= after2);
      prev = after1;
    }
  }
}

TEST_CASE("classical_bound") {
  CHECK(classical_bound(6) == Rational(71, 72));
  CHECK(classical_bound(3) == Rational(35, 36));
  CHECK_THROWS_AS(classical_bound(0), std::invalid_argument);
  Rational prev = 0;
  for (int m = 1; m <= 100; ++m) {
    const Rational b = classical_bound(m);
    CHECK(b > prev);
    prev = b;
  }
}

TEST_CASE("quantum_bound") {
  const QuantumBoundReport r6 = quantum_bound(6);
  CHECK(r6.bound == 1 - Rational(1, BigInt(150) * 150 * 150 * 150));
  CHECK(r6.question_count == 24);
  const QuantumBoundReport r1 = quantum_bound(1);
  CHECK(r1.bound == 1 - Rational(1, 390625));
  CHECK_THROWS_AS(quantum_bound(0), std::invalid_argument);
}

TEST_CASE("quantum_bound chain consistency over a wide range") {
  // sqrt(delta) >= 1/(12m + 576 m^2) >= 1/(588 m^2), and squaring the chain
  // lower bound dominates (1/(25m))^4. Checked sparsely here; the acceptance
  // suite sweeps every m up to a million.
  for (std::int64_t m : {1, 2, 3, 6, 10, 100, 10000, 1000000}) {
    const QuantumBoundReport r = quantum_bound(m);
    CHECK(r.sqrt_delta_chain >= r.sqrt_delta_floor);
    const Rational delta = r.sqrt_delta_chain * r.sqrt_delta_chain;
    CHECK(1 - delta <= r.bound);
  }
}

TEST_CASE("report serialization carries method, value and witness tables") {
  const GameValueReport r = local_search_value(k3(), Epsilon{}, Protocol::kLoc2, 2, 11);
  const std::string text = r.serialize(k3());
  CHECK(text.find("method=local-search") != std::string::npos);
  CHECK(text.find("value=" + format_rational(r.value)) != std::string::npos);
  CHECK(text.find("restarts=2") != std::string::npos);
  CHECK(text.find("W1 e=(1,2) 1 1 : ") != std::string::npos);
  CHECK(text.find("W2 e=(2,3) 2 2 : ") != std::string::npos);
}
