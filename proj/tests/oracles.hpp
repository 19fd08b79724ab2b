// Copyright 2026 The rtsg Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Brute-force reference computations used only by tests. They share no code
// with the library beyond the payoff definition.

#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "rtsg/rtsg.hpp"

namespace rtsg::testing {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(int a, int b) { parent_[find(a)] = find(b); }

 private:
  std::vector<int> parent_;
};

// Black joins row 0 to the last row, white joins column 0 to the last
// column. Neighbours (r+-1, c), (r, c+-1), (r+1, c-1), (r-1, c+1).
inline bool hex_crossing(int rows, int cols, const std::vector<std::int8_t>& colors, int color) {
  const int n = rows * cols;
  UnionFind uf(n + 2);
  const int src = n, dst = n + 1;
  const int dr[6] = {1, -1, 0, 0, 1, -1};
  const int dc[6] = {0, 0, 1, -1, -1, 1};
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int id = r * cols + c;
      if (colors[id] != color) continue;
      if (color > 0 ? r == 0 : c == 0) uf.unite(id, src);
      if (color > 0 ? r == rows - 1 : c == cols - 1) uf.unite(id, dst);
      for (int k = 0; k < 6; ++k) {
        const int rr = r + dr[k], cc = c + dc[k];
        if (rr < 0 || cc < 0 || rr >= rows || cc >= cols) continue;
        if (colors[rr * cols + cc] == color) uf.unite(id, rr * cols + cc);
      }
    }
  }
  return uf.find(src) == uf.find(dst);
}

inline std::vector<std::int8_t> colors_of_mask(int n, std::uint64_t mask) {
  std::vector<std::int8_t> c(n);
  for (int i = 0; i < n; ++i) c[i] = (mask >> i & 1) ? 1 : -1;
  return c;
}

// sum_T p^|T| (1-p)^(n-|T|) f(T) over the free cells of the empty position.
inline Rational biased_mean(const GameSpec& spec, const Rational& p) {
  const auto free = spec.free_cells();
  const int n = static_cast<int>(free.size());
  Rational total(0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<int> s1;
    Rational w(1);
    for (int i = 0; i < n; ++i) {
      if (mask >> i & 1) {
        s1.push_back(free[i]);
        w *= p;
      } else {
        w *= 1 - p;
      }
    }
    for (auto [c, side] : spec.precolored) {
      if (side == Side::kI) s1.push_back(c);
    }
    total += w * payoff(spec, s1);
  }
  return total;
}

// Literal flip test on an arbitrary payoff.
inline std::set<int> flip_pivotal(const GameSpec& spec, std::vector<std::int8_t> colors) {
  PayoffEvaluator eval(spec);
  std::set<int> out;
  for (int c = 0; c < spec.n(); ++c) {
    const auto keep = colors[c];
    colors[c] = 1;
    const Rational up = eval.eval_exact(colors);
    colors[c] = -1;
    const Rational down = eval.eval_exact(colors);
    colors[c] = keep;
    if (up != down) out.insert(c);
  }
  return out;
}

// Pivotal probability of `cell` at the empty position by enumeration of the
// other cells, weighting each completion by p.
inline Rational pivotal_probability(const GameSpec& spec, int cell, const Rational& p) {
  const int n = spec.n();
  Rational total(0);
  PayoffEvaluator eval(spec);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (mask >> cell & 1) continue;
    auto colors = colors_of_mask(n, mask);
    Rational w(1);
    for (int i = 0; i < n; ++i) {
      if (i != cell) w *= (mask >> i & 1) ? p : 1 - p;
    }
    colors[cell] = 1;
    const Rational up = eval.eval_exact(colors);
    colors[cell] = -1;
    if (up != eval.eval_exact(colors)) total += w;
  }
  return total;
}

inline std::vector<int> argmax_cells(const std::vector<Rational>& v) {
  Rational best = v[0];
  for (const auto& x : v) best = std::max(best, x);
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(v.size()); ++i) {
    if (v[i] == best) out.push_back(i);
  }
  return out;
}

}  // namespace rtsg::testing
