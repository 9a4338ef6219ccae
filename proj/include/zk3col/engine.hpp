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

#ifndef ZK3COL_ENGINE_HPP_
#define ZK3COL_ENGINE_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "zk3col/commit.hpp"
#include "zk3col/dist.hpp"
#include "zk3col/f3.hpp"
#include "zk3col/graph.hpp"

namespace zk3col {

/// A prover's reply: two committed trits, or a refusal (the honest reaction
/// to a question that is not an edge of the graph).
struct Answer {
  bool refused = false;
  Trit lo;  // component for the question's lower vertex
  Trit hi;  // component for the higher vertex

  static Answer committed(Trit lo, Trit hi) { return Answer{false, lo, hi}; }
  static Answer refuse() { return Answer{true, Trit(0), Trit(0)}; }

  friend auto operator<=>(const Answer&, const Answer&) = default;
};

using AnswerPair = std::array<Answer, 2>;
using AnswerTriple = std::array<Answer, 3>;

inline std::string answer_token(const Answer& a) {
  if (a.refused) return "REFUSE";
  return std::to_string(a.lo.value()) + "," + std::to_string(a.hi.value());
}

enum class Protocol { kStd2, kLoc2, kQnl3 };

inline int prover_count(Protocol p) { return p == Protocol::kQnl3 ? 3 : 2; }

inline std::string protocol_name(Protocol p) {
  switch (p) {
    case Protocol::kStd2: return "std2";
    case Protocol::kLoc2: return "loc2";
    case Protocol::kQnl3: return "qnl3";
  }
  throw std::logic_error("protocol_name: bad protocol");
}

inline Protocol parse_protocol(std::string_view name) {
  if (name == "std2" || name == "STD2") return Protocol::kStd2;
  if (name == "loc2" || name == "LOC2") return Protocol::kLoc2;
  if (name == "qnl3" || name == "QNL3") return Protocol::kQnl3;
  throw std::invalid_argument("unknown protocol '" + std::string(name) + "'");
}

enum class VerdictReason {
  kAllPassed,
  kEdgeVerificationFailed,
  kWellDefinitionFailed,
  kConsistencyFailed,
  kProverRefused,
};

inline std::string reason_name(VerdictReason r) {
  switch (r) {
    case VerdictReason::kAllPassed: return "AllPassed";
    case VerdictReason::kEdgeVerificationFailed: return "EdgeVerificationFailed";
    case VerdictReason::kWellDefinitionFailed: return "WellDefinitionFailed";
    case VerdictReason::kConsistencyFailed: return "ConsistencyFailed";
    case VerdictReason::kProverRefused: return "ProverRefused";
  }
  throw std::logic_error("reason_name: bad reason");
}

inline VerdictReason parse_reason(std::string_view name) {
  for (VerdictReason r :
       {VerdictReason::kAllPassed, VerdictReason::kEdgeVerificationFailed,
        VerdictReason::kWellDefinitionFailed, VerdictReason::kConsistencyFailed,
        VerdictReason::kProverRefused}) {
    if (reason_name(r) == name) return r;
  }
  throw std::invalid_argument("unknown verdict reason '" + std::string(name) + "'");
}

struct Verdict {
  bool accepted = true;
  VerdictReason reason = VerdictReason::kAllPassed;

  static Verdict accept() { return {true, VerdictReason::kAllPassed}; }
  static Verdict reject(VerdictReason r) { return {false, r}; }

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

// Honest prover behaviour. Both provers act on the same pre-agreed secret;
// they reply only when the asked pair is an edge of G.

/// Plain protocol: raw colours, no commitments.
inline Answer honest_answer_std(const Graph& g, const ProverSecret& secret, Edge e) {
  if (!g.has_edge(e)) return Answer::refuse();
  return Answer::committed(secret.coloring.at(e.lo), secret.coloring.at(e.hi));
}

/// Committed protocols: w = b*r + c per endpoint.
inline Answer honest_answer_committed(const Graph& g, const ProverSecret& secret,
                                      const Question& q) {
  if (!g.has_edge(q.edge)) return Answer::refuse();
  return Answer::committed(
      commit(secret.mask(q.edge.lo), q.r, secret.coloring.at(q.edge.lo)),
      commit(secret.mask(q.edge.hi), q.s, secret.coloring.at(q.edge.hi)));
}

namespace detail {

// Refusal handling shared by all check phases: refusing a real edge rejects,
// refusing a non-edge leaves nothing to test. Returns a verdict when the
// round is decided by refusals alone.
inline std::optional<Verdict> refusal_verdict(const Graph& g, Edge e1, Edge e2,
                                              const Answer& a1, const Answer& a2) {
  if ((g.has_edge(e1) && a1.refused) || (g.has_edge(e2) && a2.refused)) {
    return Verdict::reject(VerdictReason::kProverRefused);
  }
  if (a1.refused || a2.refused) return Verdict::accept();
  return std::nullopt;
}

// The commitment component and slot randomness a question assigns to vertex v.
inline std::pair<NonzeroTrit, Trit> slot_for(const Question& q, const Answer& a, int v) {
  if (v == q.edge.lo) return {q.r, a.lo};
  if (v == q.edge.hi) return {q.s, a.hi};
  throw std::logic_error("slot_for: vertex not on the question's edge");
}

}  // namespace detail

/// Check phase of the plain two-prover protocol. Identical questions demand
/// identical per-vertex colours that differ across the edge; intersecting
/// questions demand agreement on the shared vertex; disjoint pairs carry no
/// test. Verdicts depend only on questions and answers.
inline Verdict check_std2(const Graph& g, Edge q1, Edge q2, const Answer& a1,
                          const Answer& a2) {
  if (auto v = detail::refusal_verdict(g, q1, q2, a1, a2)) return *v;
  const EdgeRelation rel = edge_relation(q1, q2);
  switch (rel.kind) {
    case EdgeRelation::Kind::kSame:
      if (a1.lo == a2.lo && a1.hi == a2.hi && a1.lo != a1.hi) return Verdict::accept();
      return Verdict::reject(VerdictReason::kEdgeVerificationFailed);
    case EdgeRelation::Kind::kSharedVertex: {
      const Trit c1 = (rel.vertex == q1.lo) ? a1.lo : a1.hi;
      const Trit c2 = (rel.vertex == q2.lo) ? a2.lo : a2.hi;
      if (c1 == c2) return Verdict::accept();
      return Verdict::reject(VerdictReason::kWellDefinitionFailed);
    }
    case EdgeRelation::Kind::kDisjoint:
      return Verdict::accept();
  }
  throw std::logic_error("check_std2: bad relation");
}

/// Check phase of the committed two-prover protocol.
///
/// Same edge with both randomness slots flipped: implicit unveiling, accept
/// iff the unveiled endpoint colours differ, i.e. w_lo + w'_lo != w_hi + w'_hi.
/// Same edge otherwise: per-slot consistency wherever the randomness matches.
/// One shared vertex: compare its commitments iff the randomness of the slots
/// holding it matches. Anything else carries no test.
inline Verdict check_loc2(const Graph& g, const Question& q1, const Question& q2,
                          const Answer& a1, const Answer& a2) {
  if (auto v = detail::refusal_verdict(g, q1.edge, q2.edge, a1, a2)) return *v;
  const EdgeRelation rel = edge_relation(q1.edge, q2.edge);
  switch (rel.kind) {
    case EdgeRelation::Kind::kSame: {
      const bool both_flipped = (q2.r != q1.r) && (q2.s != q1.s);
      if (both_flipped) {
        if (f3_add(a1.lo, a2.lo) != f3_add(a1.hi, a2.hi)) return Verdict::accept();
        return Verdict::reject(VerdictReason::kEdgeVerificationFailed);
      }
      const bool lo_ok = (a1.lo == a2.lo) || (q1.r != q2.r);
      const bool hi_ok = (a1.hi == a2.hi) || (q1.s != q2.s);
      if (lo_ok && hi_ok) return Verdict::accept();
      return Verdict::reject(VerdictReason::kWellDefinitionFailed);
    }
    case EdgeRelation::Kind::kSharedVertex: {
      const auto [r1, w1] = detail::slot_for(q1, a1, rel.vertex);
      const auto [r2, w2] = detail::slot_for(q2, a2, rel.vertex);
      if (r1 != r2 || w1 == w2) return Verdict::accept();
      return Verdict::reject(VerdictReason::kWellDefinitionFailed);
    }
    case EdgeRelation::Kind::kDisjoint:
      return Verdict::accept();
  }
  throw std::logic_error("check_loc2: bad relation");
}

/// Check phase of the three-prover protocol: the third prover must repeat the
/// answer of whichever prover it emulates, then the two-prover checks apply
/// to the first two slots. A third question matching neither first question
/// triggers no consistency condition.
inline Verdict check_qnl3(const Graph& g, const QuestionTriple& qs,
                          const AnswerTriple& as) {
  if (qs[2] == qs[0] && !(as[2] == as[0])) {
    return Verdict::reject(VerdictReason::kConsistencyFailed);
  }
  if (qs[2] == qs[1] && !(as[2] == as[1])) {
    return Verdict::reject(VerdictReason::kConsistencyFailed);
  }
  return check_loc2(g, qs[0], qs[1], as[0], as[1]);
}

/// A prover as a question-answering function.
using AnswerFn = std::function<Answer(const Question&)>;

inline std::vector<AnswerFn> honest_provers(const Graph& g, const ProverSecret& secret,
                                            Protocol protocol) {
  AnswerFn fn;
  if (protocol == Protocol::kStd2) {
    fn = [g, secret](const Question& q) { return honest_answer_std(g, secret, q.edge); };
  } else {
    fn = [g, secret](const Question& q) {
      return honest_answer_committed(g, secret, q);
    };
  }
  return std::vector<AnswerFn>(static_cast<std::size_t>(prover_count(protocol)), fn);
}

/// Samples one round's questions. For the plain protocol the questions carry
/// placeholder randomness (1, 1) that no check reads. Shared between the
/// in-process runner and the network coordinator so that equal seeds give
/// byte-identical transcripts.
inline std::vector<Question> sample_questions(const Graph& g, Protocol protocol,
                                              const Epsilon& eps, Rng& rng) {
  switch (protocol) {
    case Protocol::kStd2: {
      const EdgePair ep = sample_base(g, eps, rng);
      return {Question{ep[0]}, Question{ep[1]}};
    }
    case Protocol::kLoc2: {
      const QuestionPair qp = sample_committed(g, eps, rng);
      return {qp[0], qp[1]};
    }
    case Protocol::kQnl3: {
      const QuestionTriple qt = sample_triple(g, eps, rng);
      return {qt[0], qt[1], qt[2]};
    }
  }
  throw std::logic_error("sample_questions: bad protocol");
}

inline Verdict apply_check(const Graph& g, Protocol protocol,
                           std::span<const Question> qs, std::span<const Answer> as) {
  switch (protocol) {
    case Protocol::kStd2:
      return check_std2(g, qs[0].edge, qs[1].edge, as[0], as[1]);
    case Protocol::kLoc2:
      return check_loc2(g, qs[0], qs[1], as[0], as[1]);
    case Protocol::kQnl3:
      return check_qnl3(g, {qs[0], qs[1], qs[2]}, {as[0], as[1], as[2]});
  }
  throw std::logic_error("apply_check: bad protocol");
}

/// One protocol round: questions, answers, verdict, and the inputs needed to
/// reproduce it.
struct Transcript {
  Protocol protocol = Protocol::kLoc2;
  Rational eps;
  std::uint64_t seed = 0;
  std::vector<Question> questions;
  std::vector<Answer> answers;
  Verdict verdict;

  friend bool operator==(const Transcript&, const Transcript&) = default;

  /// "PROTO eps seed | Q.. | .. | A.. | .. | VERDICT reason" with question
  /// tokens "e=(i,j) r s" ("e=(i,j)" for the plain protocol) and answer
  /// tokens "w1 w2" or "REFUSE".
  std::string serialize() const {
    std::string proto = protocol_name(protocol);
    for (auto& ch : proto) ch = static_cast<char>(std::toupper(ch));
    std::string out = proto + " " + format_rational(eps) + " " + std::to_string(seed);
    for (const Question& q : questions) {
      out += " | e=(" + std::to_string(q.edge.lo) + "," + std::to_string(q.edge.hi) + ")";
      if (protocol != Protocol::kStd2) {
        out += " " + std::to_string(q.r.value()) + " " + std::to_string(q.s.value());
      }
    }
    for (const Answer& a : answers) {
      out += a.refused ? " | REFUSE"
                       : " | " + std::to_string(a.lo.value()) + " " +
                             std::to_string(a.hi.value());
    }
    out += std::string(" | ") + (verdict.accepted ? "ACCEPT" : "REJECT") + " " +
           reason_name(verdict.reason);
    return out;
  }

  static Transcript parse(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (true) {
      const auto sep = line.find(" | ", pos);
      if (sep == std::string::npos) {
        fields.push_back(line.substr(pos));
        break;
      }
      fields.push_back(line.substr(pos, sep - pos));
      pos = sep + 3;
    }
    if (fields.size() < 2) throw std::invalid_argument("transcript: too few fields");

    Transcript t;
    {
      std::istringstream head(fields[0]);
      std::string proto, eps;
      if (!(head >> proto >> eps >> t.seed)) {
        throw std::invalid_argument("transcript: malformed header '" + fields[0] + "'");
      }
      t.protocol = parse_protocol(proto);
      t.eps = parse_rational(eps);
    }
    const int k = prover_count(t.protocol);
    if (static_cast<int>(fields.size()) != 1 + 2 * k + 1) {
      throw std::invalid_argument("transcript: field count does not match protocol");
    }
    for (int i = 0; i < k; ++i) {
      std::istringstream in(fields[static_cast<std::size_t>(1 + i)]);
      std::string etok;
      if (!(in >> etok) || etok.size() < 6 || etok.substr(0, 3) != "e=(" ||
          etok.back() != ')') {
        throw std::invalid_argument("transcript: malformed question token");
      }
      const std::string inner = etok.substr(3, etok.size() - 4);
      const auto comma = inner.find(',');
      if (comma == std::string::npos) {
        throw std::invalid_argument("transcript: malformed question token");
      }
      Question q;
      q.edge = Edge(std::stoi(inner.substr(0, comma)), std::stoi(inner.substr(comma + 1)));
      if (t.protocol != Protocol::kStd2) {
        int r = 0, s = 0;
        if (!(in >> r >> s)) {
          throw std::invalid_argument("transcript: missing question randomness");
        }
        q.r = NonzeroTrit(r);
        q.s = NonzeroTrit(s);
      }
      t.questions.push_back(q);
    }
    for (int i = 0; i < k; ++i) {
      const std::string& tok = fields[static_cast<std::size_t>(1 + k + i)];
      if (tok == "REFUSE") {
        t.answers.push_back(Answer::refuse());
      } else {
        std::istringstream in(tok);
        int w1 = 0, w2 = 0;
        if (!(in >> w1 >> w2)) {
          throw std::invalid_argument("transcript: malformed answer token");
        }
        t.answers.push_back(Answer::committed(Trit(w1), Trit(w2)));
      }
    }
    {
      std::istringstream in(fields.back());
      std::string acc, reason;
      if (!(in >> acc >> reason) || (acc != "ACCEPT" && acc != "REJECT")) {
        throw std::invalid_argument("transcript: malformed verdict token");
      }
      t.verdict = {acc == "ACCEPT", parse_reason(reason)};
    }
    return t;
  }
};

/// Executes a single round: samples questions from the protocol's
/// distribution, queries the provers, applies the check phase. Deterministic
/// given the seed and the prover functions.
inline Transcript run_round(const Graph& g, Protocol protocol, const Epsilon& eps,
                            std::uint64_t seed, std::span<const AnswerFn> provers) {
  if (static_cast<int>(provers.size()) != prover_count(protocol)) {
    throw std::invalid_argument("run_round: prover arity does not match protocol");
  }
  Rng rng(seed);
  Transcript t;
  t.protocol = protocol;
  t.eps = eps.value();
  t.seed = seed;
  t.questions = sample_questions(g, protocol, eps, rng);
  t.answers.reserve(provers.size());
  for (std::size_t i = 0; i < provers.size(); ++i) {
    t.answers.push_back(provers[i](t.questions[i]));
  }
  t.verdict = apply_check(g, protocol, t.questions, t.answers);
  return t;
}

/// Per-round seed derivation used by every repetition driver.
inline std::uint64_t round_seed(std::uint64_t base_seed, std::uint64_t round_index) {
  return Rng::mix(base_seed, round_index);
}

}  // namespace zk3col

#endif  // ZK3COL_ENGINE_HPP_
