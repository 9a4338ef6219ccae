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

#ifndef ZK3COL_NET_HPP_
#define ZK3COL_NET_HPP_

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <iostream>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "zk3col/commit.hpp"
#include "zk3col/engine.hpp"
#include "zk3col/wire.hpp"

namespace zk3col::net {

// Split-verifier execution: one verifier endpoint per prover process, each
// session a reliable ordered byte stream of wire frames. The deadline check
// is coordinator wall-clock; the physics lives in the timing module.

class NetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NetClosed : public NetError {
 public:
  NetClosed() : NetError("connection closed") {}
};

/// Log level from ZK3COL_LOG: error (default), info, debug.
inline int log_level() {
  static const int level = [] {
    const char* env = std::getenv("ZK3COL_LOG");
    if (env == nullptr) return 0;
    const std::string v(env);
    if (v == "debug") return 2;
    if (v == "info") return 1;
    return 0;
  }();
  return level;
}

inline void log(int level, const std::string& msg) {
  if (level > log_level()) return;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  std::cerr << "[zk3col] " << msg << "\n";
}

struct Endpoint {
  std::string host;
  std::uint16_t port = 0;

  static Endpoint parse(const std::string& text) {
    const auto colon = text.rfind(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == text.size()) {
      throw std::invalid_argument("endpoint: expected HOST:PORT, got '" + text + "'");
    }
    const int port = std::stoi(text.substr(colon + 1));
    if (port < 0 || port > 65535) {
      throw std::invalid_argument("endpoint: port out of range in '" + text + "'");
    }
    return Endpoint{text.substr(0, colon), static_cast<std::uint16_t>(port)};
  }

  std::string str() const { return host + ":" + std::to_string(port); }
};

/// RAII TCP stream with buffered line framing.
class Stream {
 public:
  Stream() = default;
  explicit Stream(int fd) : fd_(fd) {}
  Stream(Stream&& other) noexcept : fd_(other.fd_), buf_(std::move(other.buf_)) {
    other.fd_ = -1;
  }
  Stream& operator=(Stream&& other) noexcept {
    if (this != &other) {
      close_fd();
      fd_ = other.fd_;
      buf_ = std::move(other.buf_);
      other.fd_ = -1;
    }
    return *this;
  }
  ~Stream() { close_fd(); }

  Stream(const Stream&) = delete;
  Stream& operator=(const Stream&) = delete;

  bool valid() const { return fd_ >= 0; }

  static Stream connect_to(const Endpoint& ep) {
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo* res = nullptr;
    const std::string port = std::to_string(ep.port);
    if (::getaddrinfo(ep.host.c_str(), port.c_str(), &hints, &res) != 0) {
      throw NetError("connect: cannot resolve " + ep.str());
    }
    int fd = -1;
    for (addrinfo* ai = res; ai != nullptr; ai = ai->ai_next) {
      fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
      if (fd < 0) continue;
      if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) break;
      ::close(fd);
      fd = -1;
    }
    ::freeaddrinfo(res);
    if (fd < 0) throw NetError("connect: connection to " + ep.str() + " failed");
    const int one = 1;
    ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
    return Stream(fd);
  }

  void send_msg(const WireMessage& msg) { send_raw(encode(msg)); }

  void send_raw(const std::string& bytes) {
    std::size_t off = 0;
    while (off < bytes.size()) {
      const ssize_t n = ::send(fd_, bytes.data() + off, bytes.size() - off, MSG_NOSIGNAL);
      if (n <= 0) throw NetError("send failed");
      off += static_cast<std::size_t>(n);
    }
  }

  /// Next frame line, without the newline. nullopt means the deadline passed
  /// first; a closed connection throws NetClosed.
  std::optional<std::string> recv_line(
      std::optional<std::chrono::steady_clock::time_point> deadline = std::nullopt) {
    while (true) {
      const auto nl = buf_.find('\n');
      if (nl != std::string::npos) {
        std::string line = buf_.substr(0, nl);
        buf_.erase(0, nl + 1);
        return line;
      }
      if (deadline) {
        const auto now = std::chrono::steady_clock::now();
        if (now >= *deadline) return std::nullopt;
        const auto left =
            std::chrono::duration_cast<std::chrono::milliseconds>(*deadline - now);
        pollfd pfd{fd_, POLLIN, 0};
        const int pr = ::poll(&pfd, 1, static_cast<int>(left.count()) + 1);
        if (pr == 0) return std::nullopt;
        if (pr < 0) throw NetError("poll failed");
      }
      char chunk[4096];
      const ssize_t n = ::recv(fd_, chunk, sizeof chunk, 0);
      if (n == 0) throw NetClosed();
      if (n < 0) throw NetError("recv failed");
      buf_.append(chunk, static_cast<std::size_t>(n));
    }
  }

  WireMessage recv_msg() {
    auto line = recv_line();
    return decode(*line);
  }

 private:
  void close_fd() {
    if (fd_ >= 0) ::close(fd_);
    fd_ = -1;
  }

  int fd_ = -1;
  std::string buf_;
};

class Listener {
 public:
  static Listener bind_to(const Endpoint& ep) {
    const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd < 0) throw NetError("listen: socket failed");
    const int one = 1;
    ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(ep.port);
    if (::inet_pton(AF_INET, ep.host.c_str(), &addr.sin_addr) != 1) {
      ::close(fd);
      throw NetError("listen: bad host '" + ep.host + "' (numeric IPv4 expected)");
    }
    if (::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0) {
      ::close(fd);
      throw NetError("listen: bind to " + ep.str() + " failed");
    }
    if (::listen(fd, 4) != 0) {
      ::close(fd);
      throw NetError("listen failed");
    }
    Listener l;
    l.fd_ = fd;
    socklen_t len = sizeof addr;
    ::getsockname(fd, reinterpret_cast<sockaddr*>(&addr), &len);
    l.port_ = ntohs(addr.sin_port);
    return l;
  }

  Listener(Listener&& other) noexcept : fd_(other.fd_), port_(other.port_) {
    other.fd_ = -1;
  }
  ~Listener() {
    if (fd_ >= 0) ::close(fd_);
  }
  Listener(const Listener&) = delete;
  Listener& operator=(const Listener&) = delete;

  std::uint16_t port() const { return port_; }

  Stream accept_one() {
    const int conn = ::accept(fd_, nullptr, nullptr);
    if (conn < 0) throw NetError("accept failed");
    const int one = 1;
    ::setsockopt(conn, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
    return Stream(conn);
  }

 private:
  Listener() = default;
  int fd_ = -1;
  std::uint16_t port_ = 0;
};

struct ServeOptions {
  /// Testing aid: delay every answer by this much to exercise deadline
  /// enforcement on the coordinator side.
  std::chrono::milliseconds answer_delay{0};
};

/// Serves exactly one verifier session: validates the HELLO (protocol and
/// graph digest must match), then answers Q frames honestly until the peer
/// disconnects. Malformed input gets an ERR frame and ends the session.
inline void serve_prover(Listener& listener, const Graph& g, const ProverSecret& secret,
                         Protocol protocol, const ServeOptions& options = {}) {
  Stream session = listener.accept_one();
  const std::uint64_t digest = graph_digest(g);
  try {
    const WireMessage hello = session.recv_msg();
    const auto* h = std::get_if<HelloMsg>(&hello);
    if (h == nullptr) {
      session.send_msg(ErrorMsg{"expected HELLO"});
      return;
    }
    if (h->protocol != protocol) {
      session.send_msg(ErrorMsg{"protocol mismatch"});
      return;
    }
    if (h->graph_digest != digest) {
      session.send_msg(ErrorMsg{"graph digest mismatch"});
      return;
    }
    session.send_msg(HelloMsg{protocol, digest, "prover"});
    log(1, "prover session open (" + protocol_name(protocol) + ")");

    while (true) {
      WireMessage msg;
      try {
        msg = session.recv_msg();
      } catch (const NetClosed&) {
        log(1, "prover session closed by peer");
        return;
      }
      if (const auto* q = std::get_if<QMsg>(&msg)) {
        if (q->i == q->j || q->i > g.vertex_count() || q->j > g.vertex_count()) {
          session.send_msg(ErrorMsg{"question out of range"});
          return;
        }
        // Vertex order is irrelevant to a prover; canonicalize and keep each
        // randomness bound to its vertex.
        Question question;
        if (q->i < q->j) {
          question = Question{Edge(q->i, q->j), q->r, q->s};
        } else {
          question = Question{Edge(q->j, q->i), q->s, q->r};
        }
        log(2, "prover got " + question_token(question));
        const Answer a = (protocol == Protocol::kStd2)
                             ? honest_answer_std(g, secret, question.edge)
                             : honest_answer_committed(g, secret, question);
        if (options.answer_delay.count() > 0) {
          std::this_thread::sleep_for(options.answer_delay);
        }
        if (a.refused) {
          session.send_msg(ARefuseMsg{});
        } else {
          session.send_msg(AMsg{a.lo, a.hi});
        }
      } else if (std::holds_alternative<VerdictMsg>(msg)) {
        // Informational; a verdict carries no question for us to answer.
        continue;
      } else {
        session.send_msg(ErrorMsg{"unexpected frame"});
        return;
      }
    }
  } catch (const NetClosed&) {
    log(1, "prover session closed");
  }
}

struct RoundTiming {
  struct PerProver {
    std::chrono::steady_clock::time_point sent;
    std::chrono::steady_clock::time_point received;
    bool answered = false;
    bool deadline_exceeded = false;

    std::chrono::microseconds latency() const {
      return std::chrono::duration_cast<std::chrono::microseconds>(received - sent);
    }
  };

  std::vector<PerProver> provers;
  std::chrono::milliseconds deadline{0};

  bool any_violation() const {
    for (const auto& p : provers) {
      if (p.deadline_exceeded) return true;
    }
    return false;
  }
};

struct RemoteRoundResult {
  /// Present only when every prover answered within the deadline.
  std::optional<Transcript> transcript;
  RoundTiming timing;
  bool accepted = false;
};

/// The coordinating verifier: one session per prover endpoint, question
/// dispatch and answer collection per round. Question sampling matches
/// run_round exactly, so equal seeds produce identical transcripts.
class RemoteRunner {
 public:
  RemoteRunner(const std::vector<Endpoint>& endpoints, const Graph& g,
               Protocol protocol, const Epsilon& eps)
      : graph_(g), protocol_(protocol), eps_(eps) {
    if (static_cast<int>(endpoints.size()) != prover_count(protocol)) {
      throw std::invalid_argument("verify-remote: endpoint count does not match protocol");
    }
    const std::uint64_t digest = graph_digest(g);
    for (const Endpoint& ep : endpoints) {
      Stream s = Stream::connect_to(ep);
      s.send_msg(HelloMsg{protocol, digest, "verifier"});
      const WireMessage reply = s.recv_msg();
      if (const auto* err = std::get_if<ErrorMsg>(&reply)) {
        throw NetError("prover " + ep.str() + " rejected session: " + err->text);
      }
      const auto* h = std::get_if<HelloMsg>(&reply);
      if (h == nullptr || h->role != "prover" || h->protocol != protocol ||
          h->graph_digest != digest) {
        throw NetError("prover " + ep.str() + " sent an invalid HELLO reply");
      }
      sessions_.push_back(std::move(s));
      log(1, "verifier session open to " + ep.str());
    }
  }

  RemoteRoundResult round(std::uint64_t seed, std::chrono::milliseconds deadline) {
    Rng rng(seed);
    const std::vector<Question> questions =
        sample_questions(graph_, protocol_, eps_, rng);
    const std::size_t k = questions.size();

    RoundTiming timing;
    timing.deadline = deadline;
    timing.provers.resize(k);
    std::vector<Answer> answers(k, Answer::refuse());
    std::vector<std::string> failures(k);

    // One thread per prover: send the question, await the answer under the
    // deadline. Sessions are independent; no state is shared until the join.
    std::vector<std::thread> workers;
    workers.reserve(k);
    for (std::size_t p = 0; p < k; ++p) {
      workers.emplace_back([&, p] {
        auto& t = timing.provers[p];
        try {
          const Question& q = questions[p];
          t.sent = std::chrono::steady_clock::now();
          sessions_[p].send_msg(QMsg{q.edge.lo, q.edge.hi, q.r, q.s});
          const auto line = sessions_[p].recv_line(t.sent + deadline);
          t.received = std::chrono::steady_clock::now();
          if (!line) {
            t.deadline_exceeded = true;
            return;
          }
          const WireMessage msg = decode(*line);
          if (std::holds_alternative<AMsg>(msg)) {
            const auto& a = std::get<AMsg>(msg);
            answers[p] = Answer::committed(a.w1, a.w2);
            t.answered = true;
          } else if (std::holds_alternative<ARefuseMsg>(msg)) {
            answers[p] = Answer::refuse();
            t.answered = true;
          } else if (const auto* err = std::get_if<ErrorMsg>(&msg)) {
            failures[p] = "prover error: " + err->text;
          } else {
            failures[p] = "unexpected frame from prover";
          }
        } catch (const std::exception& e) {
          failures[p] = e.what();
        }
      });
    }
    for (auto& w : workers) w.join();

    for (const std::string& f : failures) {
      if (!f.empty()) throw NetError("round failed: " + f);
    }

    RemoteRoundResult result;
    result.timing = std::move(timing);
    if (result.timing.any_violation()) {
      // A late prover poisons its stream for later rounds; the caller must
      // treat the violation as session-fatal.
      result.accepted = false;
      return result;
    }

    Transcript t;
    t.protocol = protocol_;
    t.eps = eps_.value();
    t.seed = seed;
    t.questions = questions;
    t.answers = std::move(answers);
    t.verdict = apply_check(graph_, protocol_, t.questions, t.answers);
    result.accepted = t.verdict.accepted;
    result.transcript = std::move(t);
    return result;
  }

 private:
  Graph graph_;
  Protocol protocol_;
  Epsilon eps_;
  std::vector<Stream> sessions_;
};

}  // namespace zk3col::net

#endif  // ZK3COL_NET_HPP_
