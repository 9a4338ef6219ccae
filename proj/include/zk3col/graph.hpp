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

#ifndef ZK3COL_GRAPH_HPP_
#define ZK3COL_GRAPH_HPP_

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "zk3col/f3.hpp"
#include "zk3col/rng.hpp"

namespace zk3col {

/// A canonical undirected edge: stored with lo < hi. Loops are rejected.
struct Edge {
  int lo = 0;
  int hi = 0;

  Edge() = default;
  Edge(int a, int b) : lo(std::min(a, b)), hi(std::max(a, b)) {
    if (a == b) throw std::invalid_argument("Edge: loop edges are not allowed");
  }

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline std::string edge_token(Edge e) {
  return "(" + std::to_string(e.lo) + "," + std::to_string(e.hi) + ")";
}

/// How two canonical edges relate: equal, one shared endpoint, or disjoint.
struct EdgeRelation {
  enum class Kind { kDisjoint, kSharedVertex, kSame };
  Kind kind = Kind::kDisjoint;
  int vertex = 0;  // meaningful only for kSharedVertex

  static EdgeRelation disjoint() { return {Kind::kDisjoint, 0}; }
  static EdgeRelation shared(int v) { return {Kind::kSharedVertex, v}; }
  static EdgeRelation same() { return {Kind::kSame, 0}; }

  friend bool operator==(const EdgeRelation&, const EdgeRelation&) = default;
};

inline EdgeRelation edge_relation(Edge e, Edge f) {
  if (e == f) return EdgeRelation::same();
  int shared = 0;
  int count = 0;
  for (int v : {e.lo, e.hi}) {
    if (v == f.lo || v == f.hi) {
      shared = v;
      ++count;
    }
  }
  if (count == 0) return EdgeRelation::disjoint();
  if (count == 1) return EdgeRelation::shared(shared);
  // Two shared endpoints of canonical edges means the edges are equal,
  // already handled above.
  throw std::logic_error("edge_relation: non-canonical edges");
}

/// Loop-free connected undirected graph on vertices 1..n with canonical edges.
class Graph {
 public:
  static Graph from_edges(int n, std::vector<Edge> edges) {
    if (n < 1) throw std::invalid_argument("graph: vertex count must be positive");
    std::sort(edges.begin(), edges.end());
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const Edge& e = edges[k];
      if (e.lo < 1 || e.hi > n) {
        throw std::invalid_argument("graph: vertex index out of range in edge " +
                                    edge_token(e));
      }
      if (k > 0 && edges[k - 1] == e) {
        throw std::invalid_argument("graph: duplicate edge " + edge_token(e));
      }
    }
    Graph g;
    g.n_ = n;
    g.edges_ = std::move(edges);
    g.incident_.assign(n + 1, {});
    for (const Edge& e : g.edges_) {
      g.incident_[e.lo].push_back(e);
      g.incident_[e.hi].push_back(e);
    }
    g.check_connected();
    return g;
  }

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }

  bool has_edge(Edge e) const {
    return std::binary_search(edges_.begin(), edges_.end(), e);
  }

  /// Index of an edge in the sorted edge list.
  int edge_index(Edge e) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
    if (it == edges_.end() || *it != e) {
      throw std::out_of_range("graph: no such edge " + edge_token(e));
    }
    return static_cast<int>(it - edges_.begin());
  }

  int degree(int v) const { return static_cast<int>(edges_of(v).size()); }

  /// All canonical edges incident to v (Edges(v)), sorted.
  const std::vector<Edge>& edges_of(int v) const {
    if (v < 1 || v > n_) throw std::out_of_range("graph: vertex out of range");
    return incident_[v];
  }

  /// Canonical serialization; also the hashing preimage for wire digests.
  std::string canonical_text() const {
    std::string out = std::to_string(n_) + " " + std::to_string(edges_.size()) + "\n";
    for (const Edge& e : edges_) {
      out += std::to_string(e.lo) + " " + std::to_string(e.hi) + "\n";
    }
    return out;
  }

 private:
  void check_connected() const {
    std::vector<char> seen(n_ + 1, 0);
    std::vector<int> stack = {1};
    seen[1] = 1;
    int reached = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (const Edge& e : incident_[v]) {
        const int w = (e.lo == v) ? e.hi : e.lo;
        if (!seen[w]) {
          seen[w] = 1;
          ++reached;
          stack.push_back(w);
        }
      }
    }
    if (reached != n_) throw std::invalid_argument("graph: disconnected graph");
  }

  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Edge>> incident_;
};

inline const std::vector<Edge>& edges_of(const Graph& g, int v) {
  return g.edges_of(v);
}

/// Parses the ASCII graph file format: "n m" header, then m lines "i j".
/// Lines starting with '#' and blank lines are ignored. Edges are
/// canonicalized; duplicates, loops, bad indices and disconnection are
/// rejected with distinct diagnostics.
inline Graph parse_graph(std::string_view text) {
  std::vector<std::string> lines;
  {
    std::string cur;
    std::istringstream in{std::string(text)};
    while (std::getline(in, cur)) {
      std::string_view sv = cur;
      while (!sv.empty() && (sv.back() == '\r' || sv.back() == ' ')) sv.remove_suffix(1);
      while (!sv.empty() && sv.front() == ' ') sv.remove_prefix(1);
      if (sv.empty() || sv.front() == '#') continue;
      lines.emplace_back(sv);
    }
  }
  if (lines.empty()) throw std::invalid_argument("graph parse: empty input");

  auto parse_two = [](const std::string& line, const char* what) {
    std::istringstream in(line);
    long long a = 0, b = 0;
    std::string extra;
    if (!(in >> a >> b) || (in >> extra)) {
      throw std::invalid_argument(std::string("graph parse: malformed ") + what +
                                  " line '" + line + "'");
    }
    return std::pair<long long, long long>(a, b);
  };

  const auto [n, m] = parse_two(lines[0], "header");
  if (n < 1 || m < 0 || n > 1'000'000) {
    throw std::invalid_argument("graph parse: malformed header line '" + lines[0] + "'");
  }
  if (static_cast<long long>(lines.size()) - 1 != m) {
    throw std::invalid_argument("graph parse: expected " + std::to_string(m) +
                                " edge lines, found " +
                                std::to_string(lines.size() - 1));
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long k = 1; k <= m; ++k) {
    const auto [i, j] = parse_two(lines[static_cast<std::size_t>(k)], "edge");
    if (i < 1 || i > n || j < 1 || j > n) {
      throw std::invalid_argument("graph parse: vertex index out of range in line '" +
                                  lines[static_cast<std::size_t>(k)] + "'");
    }
    if (i == j) {
      throw std::invalid_argument("graph parse: loop edge in line '" +
                                  lines[static_cast<std::size_t>(k)] + "'");
    }
    edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
  }
  try {
    return Graph::from_edges(static_cast<int>(n), std::move(edges));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("graph parse: ") + e.what());
  }
}

/// Assignment of a colour in F3 to every vertex, 1-indexed.
class Coloring {
 public:
  Coloring() = default;
  explicit Coloring(std::vector<Trit> by_vertex) : colors_(std::move(by_vertex)) {}

  int vertex_count() const { return static_cast<int>(colors_.size()); }
  Trit at(int v) const { return colors_.at(static_cast<std::size_t>(v - 1)); }

  Coloring permuted(const ColorPerm& p) const {
    std::vector<Trit> out;
    out.reserve(colors_.size());
    for (Trit c : colors_) out.push_back(p.apply(c));
    return Coloring(std::move(out));
  }

  friend bool operator==(const Coloring&, const Coloring&) = default;

 private:
  std::vector<Trit> colors_;
};

inline bool is_proper(const Graph& g, const Coloring& c) {
  if (c.vertex_count() != g.vertex_count()) return false;
  for (const Edge& e : g.edges()) {
    if (c.at(e.lo) == c.at(e.hi)) return false;
  }
  return true;
}

namespace detail {

// Backtracks over vertices in index order, colours in ascending order, so the
// first hit is the lexicographically smallest proper colouring.
template <typename Sink>
bool enumerate_colorings(const Graph& g, std::vector<Trit>& partial, int v,
                         Sink&& sink) {
  const int n = g.vertex_count();
  if (v > n) return sink(Coloring(partial));
  for (Trit c : kAllTrits) {
    bool ok = true;
    for (const Edge& e : g.edges_of(v)) {
      const int w = (e.lo == v) ? e.hi : e.lo;
      if (w < v && partial[static_cast<std::size_t>(w - 1)] == c) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    partial[static_cast<std::size_t>(v - 1)] = c;
    if (!enumerate_colorings(g, partial, v + 1, sink)) return false;
  }
  return true;
}

}  // namespace detail

/// Lexicographically smallest proper 3-colouring, or nullopt when none exists.
inline std::optional<Coloring> first_proper_coloring(const Graph& g) {
  std::vector<Trit> partial(static_cast<std::size_t>(g.vertex_count()));
  std::optional<Coloring> found;
  detail::enumerate_colorings(g, partial, 1, [&](Coloring c) {
    found = std::move(c);
    return false;  // stop
  });
  return found;
}

/// A random proper 3-colouring, or nullopt when G is not 3-colourable.
///
/// The distribution is a fixed proper colouring composed with a uniformly
/// random colour permutation. On any set of pairwise adjacent vertices the
/// assigned colours are therefore distinct and permutation-uniform, which is
/// what the unveiling analysis relies on.
inline std::optional<Coloring> find_coloring(const Graph& g, Rng& rng) {
  const ColorPerm perm = rng.color_perm();
  auto base = first_proper_coloring(g);
  if (!base) return std::nullopt;
  return base->permuted(perm);
}

inline constexpr int kColoringEnumerationLimit = 12;

/// All proper 3-colourings in lexicographic order. Only for small graphs.
inline std::vector<Coloring> proper_colorings(const Graph& g,
                                              int limit = kColoringEnumerationLimit) {
  if (g.vertex_count() > limit) {
    throw std::length_error("proper_colorings: graph too large for enumeration");
  }
  std::vector<Coloring> all;
  std::vector<Trit> partial(static_cast<std::size_t>(g.vertex_count()));
  detail::enumerate_colorings(g, partial, 1, [&](Coloring c) {
    all.push_back(std::move(c));
    return true;  // keep going
  });
  return all;
}

}  // namespace zk3col

#endif  // ZK3COL_GRAPH_HPP_
