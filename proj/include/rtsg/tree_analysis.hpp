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

// Tree games: AND-OR recursions, the ternary switching series, connection
// probabilities on trees and optimal-play simulators that never build the
// tree. The simulators use the known structure of optimal play:
//
//   AND-OR     play the leftmost leaf whose ancestors are all undetermined.
//   switching  play the undecided edge hanging off the shorted component
//              that lies deepest in the tree (lowest id on ties).

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "rtsg/error.hpp"
#include "rtsg/game.hpp"
#include "rtsg/mc_strategy.hpp"
#include "rtsg/parallel.hpp"
#include "rtsg/rational.hpp"
#include "rtsg/rng.hpp"

namespace rtsg {

inline constexpr double kGoldenRatio = std::numbers::phi;
inline const double kAndOrFixedPoint = (3.0 - std::sqrt(5.0)) / 2.0;

// ---------------------------------------------------------------------------
// AND-OR

// Probability that the root of the depth-h AND-OR tree is true when every
// leaf is true with probability p. Level k is AND for even k, OR for odd k.
template <class Value>
Value andor_true_probability(int h, const Value& p) {
  if (h < 0) throw DomainError("h must be nonnegative");
  if (p < 0 || p > 1) throw DomainError("p must lie in [0, 1]");
  Value q = p;
  for (int k = h - 1; k >= 0; --k) {
    if (k % 2 == 0) {
      q = q * q;
    } else {
      q = 2 * q - q * q;
    }
  }
  return q;
}

// Fixed points in [0, 1] of q -> (2q - q^2)^2, from q(q-1)(q^2-3q+1) = 0.
inline std::vector<double> andor_fixed_points() { return {0.0, kAndOrFixedPoint, 1.0}; }

// Expected number of labeled children of a labeled vertex under optimal play.
inline double andor_branching_factor(double p) { return 2.0 - p; }

// Exact expected optimal game length at p = (3 - sqrt 5)/2, even h.
inline double andor_expected_length(int h) {
  if (h < 0 || h % 2 != 0) throw DomainError("expected length formula needs an even h >= 0");
  return std::pow(kGoldenRatio, h);
}

// ---------------------------------------------------------------------------
// Switching game on trees

struct RecursionSeries {
  std::vector<double> q;   // Cut wins
  std::vector<double> mu;  // explored edges given Cut wins
  std::vector<double> nu;  // explored edges given Short wins, first printed form
  std::vector<double> nu_simplified;
  std::vector<double> win_prob;  // Short wins, 1 - q
};

// Ternary series with q0 = mu0 = nu0 = 0.
inline RecursionSeries switching_series(int h, int arity = 3) {
  if (arity != 3) throw DomainError("the switching series is defined for ternary trees");
  if (h < 0) throw DomainError("h must be nonnegative");
  RecursionSeries s;
  s.q = {0.0};
  s.mu = {0.0};
  s.nu = {0.0};
  s.nu_simplified = {0.0};
  for (int k = 0; k < h; ++k) {
    const double q = s.q.back(), mu = s.mu.back(), nu = s.nu.back(), nus = s.nu_simplified.back();
    const double d = 1.0 - q * q * q;
    s.q.push_back(std::pow((1.0 + q) / 2.0, 3));
    s.mu.push_back(3.0 + 3.0 * q / (1.0 + q) * mu);
    s.nu.push_back((1.0 - q) / d * (1.0 + nu) + q * (1.0 - q) / d * (2.0 + mu + nu) +
                   q * q * (1.0 - q) / d * (3.0 + 2.0 * mu + nu));
    s.nu_simplified.push_back(nus + (1.0 + q + q * q - 3.0 * q * q * q) / d + (q + q * q - 2.0 * q * q * q) / d * mu);
  }
  for (double q : s.q) s.win_prob.push_back(1.0 - q);
  return s;
}

// Exact Cut-wins probability q_h for the ternary tree.
template <class Value>
Value switching_cut_probability(int h) {
  Value q(0);
  for (int k = 0; k < h; ++k) {
    const Value half = (1 + q) / 2;
    q = half * half * half;
  }
  return q;
}

// Arities per depth: arities[d] children under every depth-d vertex.
struct TreeSpec {
  std::vector<int> arities;
  int depth() const { return static_cast<int>(arities.size()); }
};

inline TreeSpec complete_tree(int arity, int h) {
  if (arity < 1 || h < 0) throw DomainError("tree needs arity >= 1 and h >= 0");
  return {std::vector<int>(h, arity)};
}

// Root degree floor(h log(2) / 2) over binary subtrees with h - 1 levels.
// The logarithm base is a parameter; natural log by default. The degree is
// clamped to 1 for small h.
inline TreeSpec enhanced_binary_tree(int h, double log_base = std::numbers::e) {
  if (h < 2) throw DomainError("enhanced binary tree needs h >= 2");
  if (!(log_base > 1.0)) throw DomainError("log base must exceed 1");
  const int k = std::max(1, static_cast<int>(std::floor(h * (std::log(2.0) / std::log(log_base)) / 2.0)));
  TreeSpec t;
  t.arities.push_back(k);
  for (int d = 1; d < h; ++d) t.arities.push_back(2);
  return t;
}

// c[d]: probability that a depth-d vertex connects to the leaves below it
// when each edge is open with probability p. c[h] = 1.
template <class Value>
std::vector<Value> connection_probabilities(const TreeSpec& t, const Value& p) {
  if (p < 0 || p > 1) throw DomainError("p must lie in [0, 1]");
  const int h = t.depth();
  std::vector<Value> c(h + 1, Value(1));
  for (int d = h - 1; d >= 0; --d) {
    const Value miss = 1 - p * c[d + 1];
    Value all_miss(1);
    for (int k = 0; k < t.arities[d]; ++k) all_miss *= miss;
    c[d] = 1 - all_miss;
  }
  return c;
}

// Probability that Short wins under optimal play: a root-to-leaf open path
// when each edge is open independently with probability p.
template <class Value>
Value switching_win_probability(const TreeSpec& t, const Value& p) {
  return connection_probabilities(t, p).front();
}

inline double switching_win_probability(const TreeSpec& t) { return switching_win_probability(t, 0.5); }

// ---------------------------------------------------------------------------
// Lazy optimal-play simulators

struct TreeMove {
  int turn = 0;
  Side coin = Side::kI;
  std::int64_t item = -1;
};

struct TreeGameRecord {
  std::vector<TreeMove> moves;
  Winner winner = Winner::kUndetermined;
  int length = 0;
};

// Vertex numbering in breadth-first order: level offsets and index within
// level, kept in 64 bits.
class LazyTree {
 public:
  explicit LazyTree(std::vector<int> arities) : arities_(std::move(arities)) {
    offset_.push_back(0);
    long double size = 1, total = 0;
    for (std::size_t d = 0; d <= arities_.size(); ++d) {
      total += size;
      if (total > 4.0e18L) throw CapacityError("tree is too large to index in 64 bits");
      offset_.push_back(static_cast<std::int64_t>(total));
      if (d < arities_.size()) {
        if (arities_[d] < 1) throw SizingError("tree arity must be positive");
        size *= arities_[d];
      }
    }
  }

  int depth() const { return static_cast<int>(arities_.size()); }
  int arity(int level) const { return arities_[level]; }
  std::int64_t vertex_id(int level, std::int64_t index) const { return offset_[level] + index; }
  std::int64_t level_size(int level) const { return offset_[level + 1] - offset_[level]; }

  // (level, index) of a breadth-first vertex id.
  std::pair<int, std::int64_t> locate(std::int64_t id) const {
    int level = 0;
    while (offset_[level + 1] <= id) ++level;
    return {level, id - offset_[level]};
  }

 private:
  std::vector<int> arities_;
  std::vector<std::int64_t> offset_;
};

// Optimal play on the depth-h AND-OR tree; items are leaves left to right.
class AndOrSimulator {
 public:
  explicit AndOrSimulator(int h) : h_(h), tree_(std::vector<int>(h, 2)) {
    if (h < 0) throw DomainError("h must be nonnegative");
  }

  int depth() const { return h_; }
  bool determined() const { return value(0, 0) != 0; }
  Winner winner() const {
    const int v = value(0, 0);
    return v > 0 ? Winner::kI : v < 0 ? Winner::kII : Winner::kUndetermined;
  }

  // Leftmost leaf whose ancestors are all undetermined.
  std::int64_t next_move() const {
    if (determined()) throw GameOverError("root is determined");
    std::int64_t index = 0;
    for (int level = 0; level < h_; ++level) {
      index *= 2;
      if (value(level + 1, index) != 0) ++index;
    }
    return index;
  }

  void apply(std::int64_t leaf, Side side) {
    if (leaf < 0 || leaf >= tree_.level_size(h_)) throw IllegalMoveError("leaf out of range");
    if (value(h_, leaf) != 0) throw IllegalMoveError("leaf already labeled");
    set(h_, leaf, color_of(side));
    std::int64_t index = leaf;
    for (int level = h_ - 1; level >= 0; --level) {
      index /= 2;
      if (value(level, index) != 0) break;
      const int a = value(level + 1, 2 * index), b = value(level + 1, 2 * index + 1);
      int v = 0;
      if (level % 2 == 0) {
        if (a < 0 || b < 0) v = -1;
        else if (a > 0 && b > 0) v = 1;
      } else {
        if (a > 0 || b > 0) v = 1;
        else if (a < 0 && b < 0) v = -1;
      }
      if (v == 0) break;
      set(level, index, v);
    }
  }

  // 0 when undetermined.
  int value(int level, std::int64_t index) const {
    const auto it = values_.find(tree_.vertex_id(level, index));
    return it == values_.end() ? 0 : it->second;
  }

 private:
  void set(int level, std::int64_t index, int v) { values_[tree_.vertex_id(level, index)] = static_cast<std::int8_t>(v); }

  int h_;
  LazyTree tree_;
  std::unordered_map<std::int64_t, std::int8_t> values_;
};

// Optimal play of the switching game; item i is the edge ending at
// breadth-first vertex i + 1. Short is player I.
class SwitchingSimulator {
 public:
  explicit SwitchingSimulator(const TreeSpec& t) : tree_(t.arities) {
    if (t.depth() < 1) throw DomainError("switching tree needs depth >= 1");
    push_children(0, 0);
  }

  bool determined() const { return winner_ != Winner::kUndetermined; }
  Winner winner() const { return winner_; }

  std::int64_t next_move() const {
    if (determined()) throw GameOverError("switching game is decided");
    return frontier_.begin()->second;
  }

  // Items currently optimal for either player: the deepest frontier edges.
  std::vector<std::int64_t> optimal_moves() const {
    std::vector<std::int64_t> out;
    if (frontier_.empty()) return out;
    const int level = frontier_.begin()->first;
    for (const auto& [l, id] : frontier_) {
      if (l != level) break;
      out.push_back(id);
    }
    return out;
  }

  void apply(std::int64_t item, Side side) {
    if (determined()) throw GameOverError("switching game is decided");
    const auto [level, index] = tree_.locate(item + 1);
    const auto it = frontier_.find({-level, item});
    if (it == frontier_.end()) throw IllegalMoveError("edge is not adjacent to the shorted component");
    frontier_.erase(it);
    if (side == Side::kI) {
      if (level == tree_.depth()) {
        winner_ = Winner::kI;
        return;
      }
      push_children(level, index);
    } else if (frontier_.empty()) {
      winner_ = Winner::kII;
    }
  }

  // Is the upper end of `item` the root or reached through shorted edges?
  bool hangs_off_shorted(std::int64_t item) const {
    const auto [level, index] = tree_.locate(item + 1);
    if (level == 1) return true;
    const std::int64_t parent = index / tree_.arity(level - 1);
    return shorted_vertex_.count(tree_.vertex_id(level - 1, parent)) > 0;
  }

  const LazyTree& tree() const { return tree_; }

 private:
  void push_children(int level, std::int64_t index) {
    shorted_vertex_.insert(tree_.vertex_id(level, index));
    const int a = tree_.arity(level);
    for (int k = 0; k < a; ++k) {
      const std::int64_t child = index * a + k;
      frontier_.insert({-(level + 1), tree_.vertex_id(level + 1, child) - 1});
    }
  }

  LazyTree tree_;
  std::set<std::pair<int, std::int64_t>> frontier_;  // (-level, item)
  std::set<std::int64_t> shorted_vertex_;
  Winner winner_ = Winner::kUndetermined;
};

enum class TreeGameKind { kAndOr, kSwitching };

inline const char* to_string(TreeGameKind k) { return k == TreeGameKind::kAndOr ? "andor" : "switching"; }

// One game with both players following the structure strategy.
template <class Simulator>
TreeGameRecord play_tree_game(Simulator sim, double p, std::uint64_t seed, bool keep_moves = true) {
  TreeGameRecord rec;
  for (int turn = 1; !sim.determined(); ++turn) {
    const Side mover = coin_for_turn(seed, turn, p);
    const std::int64_t item = sim.next_move();
    sim.apply(item, mover);
    if (keep_moves) rec.moves.push_back({turn, mover, item});
    rec.length = turn;
  }
  rec.winner = sim.winner();
  return rec;
}

inline TreeGameRecord simulate_optimal_tree_game(TreeGameKind kind, const TreeSpec& t, double p, std::uint64_t seed,
                                                 bool keep_moves = true) {
  if (kind == TreeGameKind::kAndOr) {
    for (int a : t.arities) {
      if (a != 2) throw DomainError("AND-OR trees are binary");
    }
    return play_tree_game(AndOrSimulator(t.depth()), p, seed, keep_moves);
  }
  return play_tree_game(SwitchingSimulator(t), p, seed, keep_moves);
}

// Seed of game g in a batch.
inline std::uint64_t tree_game_seed(std::uint64_t seed, std::uint64_t game) {
  return CounterRng(seed, Stream::kTreeGame).u64(game);
}

struct TreeBatchSummary {
  std::int64_t games = 0;
  double mean_length = 0.0;
  double stderr_length = 0.0;
  double win_rate_i = 0.0;
};

inline TreeBatchSummary simulate_tree_games(TreeGameKind kind, const TreeSpec& t, double p, std::int64_t games,
                                            std::uint64_t seed, unsigned threads = 1) {
  if (games < 1) throw DomainError("game count must be at least 1");
  struct Partial {
    double sum = 0, sum_sq = 0;
    std::int64_t wins = 0;
  };
  std::vector<Partial> parts(std::max(1u, threads));
  const std::size_t used = parallel_chunks(static_cast<std::size_t>(games), threads,
                                           [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    Partial part;
    for (std::size_t g = begin; g < end; ++g) {
      const auto rec = simulate_optimal_tree_game(kind, t, p, tree_game_seed(seed, g), false);
      part.sum += rec.length;
      part.sum_sq += static_cast<double>(rec.length) * rec.length;
      part.wins += rec.winner == Winner::kI;
    }
    parts[chunk] = part;
  });
  Partial total;
  for (std::size_t k = 0; k < used; ++k) {
    total.sum += parts[k].sum;
    total.sum_sq += parts[k].sum_sq;
    total.wins += parts[k].wins;
  }
  TreeBatchSummary s;
  s.games = games;
  s.mean_length = total.sum / games;
  const double var = games > 1 ? (total.sum_sq - games * s.mean_length * s.mean_length) / (games - 1) : 0.0;
  s.stderr_length = std::sqrt(std::max(0.0, var) / games);
  s.win_rate_i = static_cast<double>(total.wins) / games;
  return s;
}

// Expected length under the structure strategy, by branching on every coin.
// Exponential in the game length; meant for small trees.
template <class Simulator>
double structure_expected_length(const Simulator& sim, double p) {
  if (sim.determined()) return 0.0;
  const std::int64_t item = sim.next_move();
  Simulator a = sim, b = sim;
  a.apply(item, Side::kI);
  b.apply(item, Side::kII);
  return 1.0 + p * structure_expected_length(a, p) + (1.0 - p) * structure_expected_length(b, p);
}

// Mean number of explored edges given that Short wins, by branching on
// every coin of the structure strategy.
inline double switching_explored_given_short(const TreeSpec& t, double p = 0.5) {
  double mass = 0.0, weighted = 0.0;
  auto rec = [&](auto&& self, const SwitchingSimulator& sim, double prob, int len) -> void {
    if (sim.determined()) {
      if (sim.winner() == Winner::kI) {
        mass += prob;
        weighted += prob * len;
      }
      return;
    }
    const std::int64_t item = sim.next_move();
    SwitchingSimulator a = sim, b = sim;
    a.apply(item, Side::kI);
    b.apply(item, Side::kII);
    self(self, a, prob * p, len + 1);
    self(self, b, prob * (1.0 - p), len + 1);
  };
  rec(rec, SwitchingSimulator(t), 1.0, 0);
  return mass > 0 ? weighted / mass : 0.0;
}

// ---------------------------------------------------------------------------
// Structure checks on recorded games

// Counts moves that leave a subtree below v after the game entered it and
// before v's label was determined.
inline int andor_locality_violations(int h, const TreeGameRecord& rec) {
  AndOrSimulator sim(h);
  std::set<std::pair<int, std::int64_t>> open;  // entered, undetermined nodes
  int violations = 0;
  for (const auto& m : rec.moves) {
    for (const auto& [level, index] : open) {
      if ((m.item >> (h - level)) != index) ++violations;
    }
    sim.apply(m.item, m.coin);
    for (int level = 0; level <= h; ++level) {
      const std::int64_t index = m.item >> (h - level);
      if (sim.value(level, index) == 0) {
        open.insert({level, index});
      } else {
        open.erase({level, index});
      }
    }
    for (auto it = open.begin(); it != open.end();) {
      it = sim.value(it->first, it->second) != 0 ? open.erase(it) : std::next(it);
    }
  }
  return violations;
}

// Counts moves whose upper vertex is neither the root nor reached through
// Short's edges.
inline int switching_structure_violations(const TreeSpec& t, const TreeGameRecord& rec) {
  SwitchingSimulator sim(t);
  int violations = 0;
  for (const auto& m : rec.moves) {
    if (!sim.hangs_off_shorted(m.item)) {
      ++violations;
      break;
    }
    sim.apply(m.item, m.coin);
  }
  return violations;
}

}  // namespace rtsg
