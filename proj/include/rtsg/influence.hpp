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

// Influences I_i(f) = Pr[flipping item i changes f] under the p-biased
// product measure, and two lower bounds on the expected number of turns:
//
//   sum bound       E[turns] >= (sum_i I_i)^2
//   variance bound  E[turns] >= Var[f] / (4 p (1-p) max_i I_i)
//
// The variance bound reduces to Var[f] / max_i I_i at p = 1/2.

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "rtsg/error.hpp"
#include "rtsg/game.hpp"
#include "rtsg/percolation.hpp"
#include "rtsg/rational.hpp"
#include "rtsg/tree_analysis.hpp"

namespace rtsg {

enum class InfluenceMethod { kExact, kTreeClosedForm, kMonteCarlo };

inline const char* to_string(InfluenceMethod m) {
  switch (m) {
    case InfluenceMethod::kExact: return "exact-enumeration";
    case InfluenceMethod::kTreeClosedForm: return "tree-closed-form";
    case InfluenceMethod::kMonteCarlo: return "monte-carlo";
  }
  return "?";
}

struct InfluenceVector {
  std::vector<double> values;
  std::vector<double> stderrs;  // zero for exact methods
  double p = 0.5;
  InfluenceMethod method = InfluenceMethod::kExact;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;

  double sum() const { return std::accumulate(values.begin(), values.end(), 0.0); }
  double max() const { return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end()); }
};

namespace detail {

// p^k (1-p)^(m-k) for k = 0..m.
template <class Value>
std::vector<Value> binomial_weights(int m, const Value& p) {
  std::vector<Value> w(m + 1);
  for (int k = 0; k <= m; ++k) {
    Value x(1);
    for (int i = 0; i < k; ++i) x *= p;
    for (int i = k; i < m; ++i) x *= (1 - p);
    w[k] = x;
  }
  return w;
}

}  // namespace detail

// Exact influences of every free item by enumerating the 2^n assignments.
template <class Value>
std::vector<Value> influences_exact(const GameSpec& spec, const Value& p, int max_items = 25) {
  if (p < 0 || p > 1) throw DomainError("p must lie in [0, 1]");
  const auto free = spec.free_cells();
  const int n = static_cast<int>(free.size());
  if (n > max_items) {
    throw CapacityError("influence enumeration: " + std::to_string(n) + " items exceed the limit of " +
                        std::to_string(max_items));
  }
  PayoffEvaluator eval(spec);
  Configuration colors(spec.n(), 0);
  for (auto [c, s] : spec.precolored) colors[c] = color_of(s);
  const std::uint64_t size = std::uint64_t{1} << n;
  std::vector<Rational> f(size);
  std::vector<double> fd(size);
  const bool table = spec.payoff_kind == PayoffKind::kTeamCaptains;
  for (std::uint64_t mask = 0; mask < size; ++mask) {
    for (int i = 0; i < n; ++i) colors[free[i]] = (mask >> i & 1) ? 1 : -1;
    if (table) {
      f[mask] = eval.eval_exact(colors);
    } else {
      fd[mask] = eval.eval_int(colors);
    }
  }
  std::vector<std::vector<std::int64_t>> counts(n, std::vector<std::int64_t>(std::max(n, 1), 0));
  for (std::uint64_t mask = 0; mask < size; ++mask) {
    for (int i = 0; i < n; ++i) {
      const std::uint64_t bit = std::uint64_t{1} << i;
      if (mask & bit) continue;
      const bool differs = table ? f[mask] != f[mask | bit] : fd[mask] != fd[mask | bit];
      if (differs) ++counts[i][std::popcount(mask)];
    }
  }
  const auto w = detail::binomial_weights<Value>(std::max(n - 1, 0), p);
  std::vector<Value> out(spec.n(), Value(0));
  for (int i = 0; i < n; ++i) {
    Value total(0);
    for (int k = 0; k < n; ++k) {
      if (counts[i][k]) total += Value(static_cast<long>(counts[i][k])) * w[k];
    }
    out[free[i]] = total;
  }
  return out;
}

inline InfluenceVector influence_exact(const GameSpec& spec, double p, int max_items = 25) {
  InfluenceVector iv;
  iv.values = influences_exact<double>(spec, p, max_items);
  iv.stderrs.assign(iv.values.size(), 0.0);
  iv.p = p;
  iv.method = InfluenceMethod::kExact;
  return iv;
}

// ---------------------------------------------------------------------------
// Tree closed forms

// Leaf of the depth-h AND-OR tree: at every ancestor the sibling subtree
// must leave the gate open (true under AND, false under OR).
inline double andor_leaf_influence(int h, double p) {
  std::vector<double> q(h + 1);
  q[h] = p;
  for (int k = h - 1; k >= 0; --k) q[k] = k % 2 == 0 ? q[k + 1] * q[k + 1] : 2 * q[k + 1] - q[k + 1] * q[k + 1];
  double inf = 1.0;
  for (int k = 0; k < h; ++k) inf *= k % 2 == 0 ? q[k + 1] : 1.0 - q[k + 1];
  return inf;
}

// Leaf of the depth-h ternary majority tree: the two siblings split at
// every level.
inline double majority_leaf_influence(int h, double p) {
  double r = p, inf = 1.0;
  for (int k = 0; k < h; ++k) {
    inf *= 2.0 * r * (1.0 - r);
    r = r * r * r + 3.0 * r * r * (1.0 - r);
  }
  return inf;
}

// Edge whose lower vertex sits at depth `level` (1-based): the path above it
// is open, its lower vertex reaches the leaves, and no sibling branch on the
// way up reaches the leaves.
inline double switching_edge_influence(const TreeSpec& t, int level, double p) {
  if (level < 1 || level > t.depth()) throw DomainError("edge level out of range");
  const auto c = connection_probabilities(t, p);
  double inf = std::pow(p, level - 1) * c[level];
  for (int j = 0; j < level; ++j) inf *= std::pow(1.0 - p * c[j + 1], t.arities[j] - 1);
  return inf;
}

// Influences of every item of a tree game, by level.
inline InfluenceVector influence_tree(const GameSpec& spec, double p) {
  const auto& b = spec.board;
  if (b.kind != BoardKind::kTree || !spec.precolored.empty()) throw UnsupportedGameError("not a plain tree game");
  InfluenceVector iv;
  iv.p = p;
  iv.method = InfluenceMethod::kTreeClosedForm;
  const int h = static_cast<int>(b.arities.size());
  switch (spec.payoff_kind) {
    case PayoffKind::kAndOr: iv.values.assign(b.n, andor_leaf_influence(h, p)); break;
    case PayoffKind::kRecursiveMajority: iv.values.assign(b.n, majority_leaf_influence(h, p)); break;
    case PayoffKind::kSwitching: {
      const TreeSpec t{b.arities};
      std::vector<double> per_level(h + 1, 0.0);
      for (int l = 1; l <= h; ++l) per_level[l] = switching_edge_influence(t, l, p);
      iv.values.resize(b.n);
      for (int i = 0; i < b.n; ++i) iv.values[i] = per_level[b.cells[i].tree_path->size()];
      break;
    }
    default: throw UnsupportedGameError("no closed form for " + spec.game);
  }
  iv.stderrs.assign(iv.values.size(), 0.0);
  return iv;
}

// Flip-test frequencies over `samples` index-addressed p-biased assignments.
inline InfluenceVector influence_mc(const SpecPtr& spec, double p, std::int64_t samples, std::uint64_t seed,
                                    unsigned threads = 1) {
  const GamePosition empty(spec, p);
  const auto est = estimate_pivotality(empty, samples, seed, threads);
  InfluenceVector iv;
  iv.p = p;
  iv.method = InfluenceMethod::kMonteCarlo;
  iv.samples = samples;
  iv.seed = seed;
  for (int c = 0; c < spec->n(); ++c) {
    iv.values.push_back(est.estimate(c));
    iv.stderrs.push_back(est.stderr_of(c));
  }
  return iv;
}

// Var[f] under the p-biased measure, by enumeration.
template <class Value>
Value variance_exact(const GameSpec& spec, const Value& p, int max_items = 25) {
  const auto free = spec.free_cells();
  const int n = static_cast<int>(free.size());
  if (n > max_items) throw CapacityError("variance enumeration: too many items");
  PayoffEvaluator eval(spec);
  Configuration colors(spec.n(), 0);
  for (auto [c, s] : spec.precolored) colors[c] = color_of(s);
  Value m1(0), m2(0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Value w(1);
    for (int i = 0; i < n; ++i) {
      const bool in = mask >> i & 1;
      colors[free[i]] = in ? 1 : -1;
      w *= in ? p : (1 - p);
    }
    const Value f = value_from<Value>(eval.eval_exact(colors));
    m1 += w * f;
    m2 += w * f * f;
  }
  return m2 - m1 * m1;
}

// Var of a +-1 valued f with Pr[f = 1] = q.
inline double win_or_lose_variance(double q) { return 4.0 * q * (1.0 - q); }

inline double os_lower_bound(const std::vector<double>& influences) {
  const double s = std::accumulate(influences.begin(), influences.end(), 0.0);
  return s * s;
}

inline double osss_lower_bound(const std::vector<double>& influences, double variance, double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("p must lie in (0, 1)");
  const double m = influences.empty() ? 0.0 : *std::max_element(influences.begin(), influences.end());
  if (!(m > 0.0)) throw DegenerateFunctionError("every influence is zero");
  return variance / (4.0 * p * (1.0 - p) * m);
}

}  // namespace rtsg
