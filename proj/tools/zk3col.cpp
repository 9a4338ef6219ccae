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

// Command line front end. Exit codes: 0 success (or accept-dominant outcome),
// 1 verification failure, 2 usage or input error.

#include <atomic>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "zk3col/zk3col.hpp"

namespace {

using namespace zk3col;

Graph load_graph(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open graph file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

Epsilon parse_epsilon(const std::string& text) { return Epsilon(parse_rational(text)); }

constexpr std::uint64_t kProverSeedStream = 0x5EC7E7;

ProverSecret secret_from_seed(const Graph& g, std::uint64_t seed) {
  Rng rng(seed);
  auto secret = ProverSecret::generate(g, rng);
  if (!secret) {
    throw std::invalid_argument("graph is not 3-colourable; honest provers cannot play");
  }
  return *secret;
}

int cmd_run(const Graph& g, Protocol protocol, const Epsilon& eps, int rounds,
            std::uint64_t seed, std::uint64_t prover_seed, const std::string& format) {
  const ProverSecret secret = secret_from_seed(g, prover_seed);
  const auto provers = honest_provers(g, secret, protocol);
  int accepted = 0;
  for (int k = 0; k < rounds; ++k) {
    const Transcript t = run_round(g, protocol, eps, round_seed(seed, static_cast<std::uint64_t>(k)),
                                   provers);
    accepted += t.verdict.accepted ? 1 : 0;
    if (format == "tsv") std::cout << t.serialize() << "\n";
  }
  std::cout << "accepted " << accepted << "/" << rounds << "\n";
  return accepted == rounds ? 0 : 1;
}

int cmd_value(const Graph& g, Protocol protocol, const Epsilon& eps,
              const std::string& method, int restarts, std::uint64_t seed, int jobs,
              const std::string& format) {
  GameValueReport report;
  if (method == "enum-br") {
    if (protocol != Protocol::kStd2) {
      throw std::invalid_argument("--method enum-br supports only --protocol std2");
    }
    report = exact_value_std2(g, eps, jobs);
  } else {
    report = local_search_value(g, eps, protocol, restarts, seed, jobs);
  }
  if (format != "tsv") {
    std::cout << "game value for " << protocol_name(protocol) << " (" << value_method_name(report.method)
              << (report.method == ValueMethod::kLocalSearch ? ", lower bound" : "")
              << "): " << format_rational(report.value) << "\n";
  }
  std::cout << report.serialize(g) << "\n";
  return 0;
}

int cmd_zk_verify(const Graph& g, int jobs) {
  if (g.vertex_count() > 5) {
    throw std::invalid_argument(
        "zk-verify enumerates every question triple exhaustively; graphs over 5 "
        "vertices are too large");
  }
  if (!first_proper_coloring(g)) {
    throw std::invalid_argument("zk-verify: graph is not 3-colourable");
  }
  // Every ordered vertex pair (edges and non-edges alike), every randomness.
  std::vector<Question> questions;
  for (int i = 1; i <= g.vertex_count(); ++i) {
    for (int j = i + 1; j <= g.vertex_count(); ++j) {
      for (const auto& [r, s] : kRsPairs) questions.push_back(Question{Edge(i, j), r, s});
    }
  }
  const std::uint64_t q = questions.size();
  const std::uint64_t total = q * q * q;
  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> failed{false};
  std::string failure;
  std::mutex mu;
  auto worker = [&] {
    while (true) {
      const std::uint64_t idx = next.fetch_add(1);
      if (idx >= total || failed.load()) return;
      const QuestionTriple triple = {questions[idx / (q * q)],
                                     questions[(idx / q) % q], questions[idx % q]};
      if (!dist_equal(exact_view_dist(g, triple), exact_sim_dist(g, triple))) {
        std::lock_guard<std::mutex> lock(mu);
        failed = true;
        failure = question_token(triple[0]) + " " + question_token(triple[1]) + " " +
                  question_token(triple[2]);
        return;
      }
    }
  };
  if (jobs < 1) jobs = 1;
  std::vector<std::thread> threads;
  for (int t = 0; t < jobs; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (failed) {
    std::cout << "ZK-VIOLATION: view and simulator differ on " << failure << "\n";
    return 1;
  }
  std::cout << "PERFECT-ZK: all question triples equal (" << total << " triples)\n";
  return 0;
}

int cmd_dist_check(const Graph& g, const std::string& which, const Epsilon& eps) {
  if (which == "base") {
    std::cout << dump_pmf(pmf_base(g, eps), [](const EdgePair& p) {
      return edge_token(p[0]) + "|" + edge_token(p[1]);
    });
  } else if (which == "committed") {
    std::cout << dump_pmf(pmf_committed(g, eps), [](const QuestionPair& p) {
      return question_token(p[0]) + "|" + question_token(p[1]);
    });
  } else {
    std::cout << dump_pmf(pmf_triple(g, eps), [](const QuestionTriple& p) {
      return question_token(p[0]) + "|" + question_token(p[1]) + "|" +
             question_token(p[2]);
    });
  }
  return 0;
}

int cmd_bounds(std::int64_t edges, const std::string& format) {
  const Rational classical = classical_bound(edges);
  const QuantumBoundReport qb = quantum_bound(edges);
  if (format == "tsv") {
    std::cout << edges << "\t" << format_rational(classical) << "\t"
              << format_rational(qb.bound) << "\t" << qb.question_count << "\t"
              << format_rational(qb.sqrt_delta_chain) << "\t"
              << format_rational(qb.sqrt_delta_floor) << "\n";
    return 0;
  }
  std::cout << "classical <= 1 - 1/(12*" << edges << ") = " << format_rational(classical)
            << ", quantum <= 1 - 1/" << 25 * edges << "^4 = " << format_rational(qb.bound)
            << "\n";
  std::cout << "derivation: |Q| = 4*" << edges << " = " << qb.question_count
            << ", sqrt(delta) >= " << format_rational(qb.sqrt_delta_chain)
            << " >= " << format_rational(qb.sqrt_delta_floor) << "\n";
  return 0;
}

std::string format_meters(const Rational& m) {
  const double v = numerator(m).convert_to<double>() / denominator(m).convert_to<double>();
  std::ostringstream out;
  if (v >= 1000.0) {
    out.precision(4);
    out << v / 1000.0 << " km";
  } else if (v >= 1.0) {
    out.precision(4);
    out << v << " m";
  } else {
    out.precision(3);
    out << v * 1000.0 << " mm";
  }
  return out.str();
}

int cmd_timing(const std::vector<std::int64_t>& ns, Protocol protocol,
               const std::string& format) {
  const std::uint64_t kGbps = 1'000'000'000ULL;
  const std::uint64_t kTbps = 1'000'000'000'000ULL;
  if (format != "tsv") {
    std::cout << "separation model: one-way transmission of one full exchange, "
                 "d = c * bits / rate (c = 2.998e8 m/s)\n";
    std::cout << "baseline: quadratic-cost commit-everything protocol, 200*n^2 bits "
                 "before the challenge (its published envelope for n=500 at 1 Tb/s "
                 "is ~100 km once per-commitment overheads are included)\n";
    std::cout << "n\tbits(to,from)\tbaseline-bits\tours@1Gb/s\tours@1Tb/s\tbase@1Gb/s\tbase@1Tb/s\n";
  }
  for (std::int64_t n : ns) {
    const MessageBits mb = message_bits(protocol, n);
    const std::uint64_t ours = static_cast<std::uint64_t>(mb.total());
    const std::uint64_t baseline = cl17_bits(static_cast<std::uint64_t>(n));
    auto sep = [](std::uint64_t bits, std::uint64_t rate) {
      return min_separation_m({bits, rate});
    };
    if (format == "tsv") {
      std::cout << n << "\t" << mb.to_prover << "\t" << mb.from_prover << "\t" << baseline
                << "\t" << format_rational(sep(ours, kGbps)) << "\t"
                << format_rational(sep(ours, kTbps)) << "\t"
                << format_rational(sep(baseline, kGbps)) << "\t"
                << format_rational(sep(baseline, kTbps)) << "\n";
    } else {
      std::cout << n << "\t(" << mb.to_prover << "," << mb.from_prover << ")\t" << baseline
                << "\t" << format_meters(sep(ours, kGbps)) << "\t"
                << format_meters(sep(ours, kTbps)) << "\t"
                << format_meters(sep(baseline, kGbps)) << "\t"
                << format_meters(sep(baseline, kTbps)) << "\n";
    }
  }
  return 0;
}

int cmd_serve_prover(const std::string& listen, const Graph& g, Protocol protocol,
                     std::uint64_t seed, int delay_ms) {
  const ProverSecret secret = secret_from_seed(g, seed);
  net::Endpoint ep = net::Endpoint::parse(listen);
  net::Listener listener = net::Listener::bind_to(ep);
  std::cout << "LISTENING " << listener.port() << std::endl;
  net::ServeOptions options;
  options.answer_delay = std::chrono::milliseconds(delay_ms);
  net::serve_prover(listener, g, secret, protocol, options);
  std::cout << "SESSION-END" << std::endl;
  return 0;
}

int cmd_verify_remote(const std::string& provers, const Graph& g, Protocol protocol,
                      const Epsilon& eps, int rounds, int deadline_ms,
                      std::uint64_t seed, const std::string& format) {
  std::vector<net::Endpoint> endpoints;
  std::stringstream ss(provers);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) endpoints.push_back(net::Endpoint::parse(item));
  }
  net::RemoteRunner runner(endpoints, g, protocol, eps);
  int accepted = 0;
  std::int64_t worst_us = 0;
  for (int k = 0; k < rounds; ++k) {
    const auto result =
        runner.round(round_seed(seed, static_cast<std::uint64_t>(k)),
                     std::chrono::milliseconds(deadline_ms));
    if (result.timing.any_violation()) {
      for (std::size_t p = 0; p < result.timing.provers.size(); ++p) {
        if (result.timing.provers[p].deadline_exceeded) {
          std::cout << "TIMING-VIOLATION round=" << k << " prover=" << (p + 1)
                    << " deadline=" << deadline_ms << "ms\n";
        }
      }
      std::cout << "aborting: a late answer poisons the session stream\n";
      return 1;
    }
    for (const auto& p : result.timing.provers) {
      worst_us = std::max<std::int64_t>(worst_us, p.latency().count());
    }
    accepted += result.accepted ? 1 : 0;
    if (format == "tsv") std::cout << result.transcript->serialize() << "\n";
  }
  std::cout << "accepted " << accepted << "/" << rounds << " (worst prover latency "
            << worst_us << " us, deadline " << deadline_ms << " ms)\n";
  return accepted == rounds ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-prover zero-knowledge proofs of graph 3-colourability"};
  app.require_subcommand(1);

  std::string graph_path, protocol_name_flag = "loc2", epsilon_flag = "1/3";
  std::string format = "text";
  std::uint64_t seed = 0;
  int rounds = 100, jobs = 1;

  auto add_common = [&](CLI::App* sub, bool with_protocol = true) {
    sub->add_option("--graph", graph_path, "graph file")->required();
    if (with_protocol) {
      sub->add_option("--protocol", protocol_name_flag, "std2|loc2|qnl3")
          ->check(CLI::IsMember({"std2", "loc2", "qnl3"}));
    }
    sub->add_option("--epsilon", epsilon_flag, "edge-verification weight P/Q in (0,1)");
    sub->add_option("--format", format, "text|tsv")->check(CLI::IsMember({"text", "tsv"}));
  };

  // run
  auto* run = app.add_subcommand("run", "run seeded honest-prover rounds in process");
  std::uint64_t prover_seed = 0;
  bool prover_seed_set = false;
  add_common(run);
  run->add_option("--rounds", rounds, "number of rounds");
  run->add_option("--seed", seed, "base seed for question sampling");
  run->add_option("--prover-seed", prover_seed, "seed for the provers' shared secret")
      ->each([&](const std::string&) { prover_seed_set = true; });

  // value
  auto* value = app.add_subcommand("value", "adversarial game value search");
  std::string method = "local-search";
  int restarts = 100;
  add_common(value);
  value->add_option("--method", method, "enum-br|local-search")
      ->check(CLI::IsMember({"enum-br", "local-search"}));
  value->add_option("--restarts", restarts, "local search restarts");
  value->add_option("--seed", seed, "search seed");
  value->add_option("--jobs", jobs, "worker threads");

  // zk-verify
  auto* zkv = app.add_subcommand("zk-verify",
                                 "exact real-vs-simulated view equality on every question triple");
  zkv->add_option("--graph", graph_path, "graph file")->required();
  zkv->add_option("--jobs", jobs, "worker threads");

  // dist-check
  auto* dist = app.add_subcommand("dist-check", "dump a question distribution exactly");
  std::string which = "base";
  add_common(dist, false);
  dist->add_option("--dist", which, "base|committed|triple")
      ->check(CLI::IsMember({"base", "committed", "triple"}));

  // bounds
  auto* bounds = app.add_subcommand("bounds", "soundness bound formulas");
  std::int64_t edges = 1;
  bounds->add_option("--edges", edges, "edge count m")->required();
  bounds->add_option("--format", format, "text|tsv")->check(CLI::IsMember({"text", "tsv"}));

  // timing
  auto* timing = app.add_subcommand("timing", "relativistic separation calculator");
  std::vector<std::int64_t> ns = {4, 10, 100, 500, 1000};
  timing->add_option("--n", ns, "vertex counts");
  timing->add_option("--protocol", protocol_name_flag, "std2|loc2|qnl3")
      ->check(CLI::IsMember({"std2", "loc2", "qnl3"}));
  timing->add_option("--format", format, "text|tsv")->check(CLI::IsMember({"text", "tsv"}));

  // serve-prover
  auto* serve = app.add_subcommand("serve-prover", "honest prover server, one session");
  std::string listen;
  int delay_ms = 0;
  serve->add_option("--listen", listen, "HOST:PORT (port 0 auto-assigns)")->required();
  serve->add_option("--graph", graph_path, "graph file")->required();
  serve->add_option("--protocol", protocol_name_flag, "std2|loc2|qnl3")
      ->check(CLI::IsMember({"std2", "loc2", "qnl3"}));
  serve->add_option("--seed", seed, "secret seed shared by all provers")->required();
  serve->add_option("--delay-ms", delay_ms,
                    "testing aid: delay every answer to trip the deadline");

  // verify-remote
  auto* remote = app.add_subcommand("verify-remote", "split verifier against prover servers");
  std::string provers;
  int deadline_ms = 1000;
  add_common(remote);
  remote->add_option("--provers", provers, "comma-separated HOST:PORT list")->required();
  remote->add_option("--rounds", rounds, "number of rounds");
  remote->add_option("--deadline-ms", deadline_ms, "per-answer deadline");
  remote->add_option("--seed", seed, "base seed for question sampling");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    const Protocol protocol = parse_protocol(protocol_name_flag);
    const Epsilon eps = parse_epsilon(epsilon_flag);
    if (run->parsed()) {
      if (!prover_seed_set) prover_seed = Rng::mix(seed, kProverSeedStream);
      return cmd_run(load_graph(graph_path), protocol, eps, rounds, seed, prover_seed, format);
    }
    if (value->parsed()) {
      return cmd_value(load_graph(graph_path), protocol, eps, method, restarts, seed,
                       jobs, format);
    }
    if (zkv->parsed()) return cmd_zk_verify(load_graph(graph_path), jobs);
    if (dist->parsed()) return cmd_dist_check(load_graph(graph_path), which, eps);
    if (bounds->parsed()) return cmd_bounds(edges, format);
    if (timing->parsed()) return cmd_timing(ns, protocol, format);
    if (serve->parsed()) {
      return cmd_serve_prover(listen, load_graph(graph_path), protocol, seed, delay_ms);
    }
    if (remote->parsed()) {
      return cmd_verify_remote(provers, load_graph(graph_path), protocol, eps, rounds,
                               deadline_ms, seed, format);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
