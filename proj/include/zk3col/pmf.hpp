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

#ifndef ZK3COL_PMF_HPP_
#define ZK3COL_PMF_HPP_

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "zk3col/rational.hpp"

namespace zk3col {

/// Exact-rational probability mass function. Immutable once built: outcomes
/// are distinct and sorted, probabilities are positive and sum to exactly 1.
template <typename Outcome>
class Pmf {
 public:
  using Entry = std::pair<Outcome, Rational>;

  class Builder {
   public:
    void add(const Outcome& o, const Rational& p) {
      if (p < 0) throw std::invalid_argument("pmf: negative probability");
      if (p == 0) return;
      acc_[o] += p;
    }

    Pmf build() && {
      Pmf pmf;
      Rational total = 0;
      pmf.entries_.reserve(acc_.size());
      for (auto& [o, p] : acc_) {
        total += p;
        pmf.entries_.emplace_back(o, p);
      }
      if (total != 1) {
        throw std::logic_error("pmf: total mass is " + format_rational(total) +
                               ", expected exactly 1");
      }
      return pmf;
    }

   private:
    std::map<Outcome, Rational> acc_;
  };

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  /// Probability of an outcome, zero when outside the support.
  Rational prob(const Outcome& o) const {
    auto it = std::lower_bound(
        entries_.begin(), entries_.end(), o,
        [](const Entry& e, const Outcome& key) { return e.first < key; });
    if (it == entries_.end() || !(it->first == o)) return Rational(0);
    return it->second;
  }

  Rational total() const {
    Rational t = 0;
    for (const auto& [o, p] : entries_) t += p;
    return t;
  }

  friend bool operator==(const Pmf&, const Pmf&) = default;

 private:
  std::vector<Entry> entries_;
};

/// Exact distribution equality: same support, identical rational masses.
template <typename Outcome>
bool dist_equal(const Pmf<Outcome>& p, const Pmf<Outcome>& q) {
  return p.entries() == q.entries();
}

/// Pushes a pmf through an outcome map, accumulating collided outcomes.
/// This is the marginalization workhorse.
template <typename Outcome, typename Fn>
auto map_pmf(const Pmf<Outcome>& pmf, Fn&& fn)
    -> Pmf<std::decay_t<decltype(fn(std::declval<const Outcome&>()))>> {
  using Out = std::decay_t<decltype(fn(std::declval<const Outcome&>()))>;
  typename Pmf<Out>::Builder b;
  for (const auto& [o, p] : pmf.entries()) b.add(fn(o), p);
  return std::move(b).build();
}

/// Dump format for golden tests: one "token numerator/denominator" line per
/// outcome, sorted by token.
template <typename Outcome, typename TokenFn>
std::string dump_pmf(const Pmf<Outcome>& pmf, TokenFn&& token) {
  std::vector<std::string> lines;
  lines.reserve(pmf.size());
  for (const auto& [o, p] : pmf.entries()) {
    lines.push_back(token(o) + " " + format_rational(p));
  }
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& l : lines) {
    out += l;
    out += '\n';
  }
  return out;
}

}  // namespace zk3col

#endif  // ZK3COL_PMF_HPP_
