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

// Selection games: payoff functions over subsets of a board, the surround
// recolouring rule, and immutable game positions.

#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rtsg/board.hpp"
#include "rtsg/connectivity.hpp"
#include "rtsg/error.hpp"
#include "rtsg/rational.hpp"
#include "rtsg/rng.hpp"

namespace rtsg {

enum class Side : std::int8_t { kI = 1, kII = -1 };

inline Side opponent(Side s) { return s == Side::kI ? Side::kII : Side::kI; }
inline const char* to_string(Side s) { return s == Side::kI ? "I" : "II"; }
inline std::int8_t color_of(Side s) { return static_cast<std::int8_t>(s); }

enum class PayoffKind {
  kHexCrossing,
  kSurround,
  kTicTacToeRows,
  kTeamCaptains,
  kRecursiveMajority,
  kAndOr,
  kSwitching,
};

inline const char* to_string(PayoffKind k) {
  switch (k) {
    case PayoffKind::kHexCrossing: return "hex-crossing";
    case PayoffKind::kSurround: return "surround";
    case PayoffKind::kTicTacToeRows: return "tictactoe-rows";
    case PayoffKind::kTeamCaptains: return "team-captains";
    case PayoffKind::kRecursiveMajority: return "recursive-majority";
    case PayoffKind::kAndOr: return "andor";
    case PayoffKind::kSwitching: return "switching";
  }
  return "?";
}

struct GameSpec {
  std::string game;  // short name used on the wire: hex, bridgit, andor, ...
  BoardGraph board;
  PayoffKind payoff_kind = PayoffKind::kHexCrossing;
  // Team Captains: f indexed by the subset of free (non-precoloured) cells,
  // bit i standing for the i-th free cell in increasing id order.
  std::vector<Rational> table;
  std::vector<std::pair<int, Side>> precolored;
  bool monotone = false;
  bool win_or_lose = false;
  // Surround: also count surrounded cells that already had the surrounding colour.
  bool surround_count_unchanged = false;
  std::shared_ptr<const BondIncidence> incidence;

  int n() const { return board.n; }
  bool is_tree_leaf_game() const {
    return payoff_kind == PayoffKind::kAndOr || payoff_kind == PayoffKind::kRecursiveMajority;
  }
  std::vector<int> free_cells() const {
    std::vector<int> out;
    std::vector<char> pre(board.n, 0);
    for (auto [c, s] : precolored) pre[c] = 1;
    for (int c = 0; c < board.n; ++c) {
      if (!pre[c]) out.push_back(c);
    }
    return out;
  }
};

using SpecPtr = std::shared_ptr<const GameSpec>;

inline SpecPtr share(GameSpec spec) { return std::make_shared<const GameSpec>(std::move(spec)); }

namespace detail {

inline GameSpec finish(GameSpec spec) {
  if (spec.board.bonds) spec.incidence = std::make_shared<BondIncidence>(*spec.board.bonds);
  return spec;
}

}  // namespace detail

inline GameSpec make_hex(int rows, int cols = 0) {
  GameSpec s;
  s.game = "hex";
  s.board = hex_lozenge(rows, cols == 0 ? rows : cols);
  s.payoff_kind = PayoffKind::kHexCrossing;
  s.monotone = s.win_or_lose = true;
  return detail::finish(std::move(s));
}

inline GameSpec make_bridgit(int L) {
  GameSpec s;
  s.game = "bridgit";
  s.board = bridgit(L);
  s.payoff_kind = PayoffKind::kSwitching;
  s.monotone = s.win_or_lose = true;
  return detail::finish(std::move(s));
}

inline GameSpec make_surround(int rows, int cols = 0, bool count_unchanged = false) {
  GameSpec s;
  s.game = "surround";
  s.board = hex_lozenge(rows, cols == 0 ? rows : cols);
  s.payoff_kind = PayoffKind::kSurround;
  s.surround_count_unchanged = count_unchanged;
  return detail::finish(std::move(s));
}

inline GameSpec make_tictactoe() {
  GameSpec s;
  s.game = "tictactoe";
  s.board = grid3x3();
  s.payoff_kind = PayoffKind::kTicTacToeRows;
  return detail::finish(std::move(s));
}

inline GameSpec make_andor(int h) {
  if (h < 0) throw SizingError("h must be nonnegative");
  GameSpec s;
  s.game = "andor";
  s.board = uniform_tree(2, h, TreeItems::kLeaves);
  s.payoff_kind = PayoffKind::kAndOr;
  s.monotone = s.win_or_lose = true;
  return detail::finish(std::move(s));
}

inline GameSpec make_recursive_majority(int h) {
  if (h < 0) throw SizingError("h must be nonnegative");
  GameSpec s;
  s.game = "recursive-majority";
  s.board = uniform_tree(3, h, TreeItems::kLeaves);
  s.payoff_kind = PayoffKind::kRecursiveMajority;
  s.monotone = s.win_or_lose = true;
  return detail::finish(std::move(s));
}

// Shannon switching game on a rooted tree; Short (player I) wants a
// root-to-leaf path of shorted edges.
inline GameSpec make_switching_tree(std::vector<int> arities) {
  GameSpec s;
  s.game = "switching";
  s.board = tree(std::move(arities), TreeItems::kEdges);
  s.payoff_kind = PayoffKind::kSwitching;
  s.monotone = s.win_or_lose = true;
  return detail::finish(std::move(s));
}

// Team Captains with an explicit payoff table over the 2^n subsets.
// Win-or-lose and monotone flags are detected from the table.
inline GameSpec make_team_captains(int n, std::vector<Rational> table) {
  GameSpec s;
  s.game = "team-captains";
  s.board = generic(n);
  if (n > 24) throw SizingError("team-captains tables are limited to n <= 24");
  if (table.size() != (std::size_t{1} << n)) {
    throw SizingError("team-captains table must have 2^n entries");
  }
  s.payoff_kind = PayoffKind::kTeamCaptains;
  s.table = std::move(table);
  bool two_valued = true;
  for (const auto& v : s.table) two_valued = two_valued && (v == 1 || v == -1);
  bool monotone = true;
  for (std::size_t m = 0; m < s.table.size() && monotone; ++m) {
    for (int i = 0; i < n; ++i) {
      if (!(m >> i & 1) && s.table[m | (std::size_t{1} << i)] < s.table[m]) {
        monotone = false;
        break;
      }
    }
  }
  s.win_or_lose = two_valued;
  s.monotone = monotone;
  return detail::finish(std::move(s));
}

// Seeded table of random rationals num / 2^40 with |num| < 2^52. Distinct
// subsets get values that are, for every practical purpose, generic.
inline GameSpec make_random_team_captains(int n, std::uint64_t seed) {
  const CounterRng rng(seed, Stream::kTable);
  std::vector<Rational> table(std::size_t{1} << n);
  for (std::size_t m = 0; m < table.size(); ++m) {
    const std::uint64_t raw = rng.u64(m);
    const long long num = static_cast<long long>(raw >> 12) - (1LL << 51);
    table[m] = Rational(mpz_class(std::to_string(num)), mpz_class(1) << 40);
    table[m].canonicalize();
  }
  return make_team_captains(n, std::move(table));
}

// Folds precoloured cells into the spec.
inline GameSpec with_precoloring(GameSpec spec, std::vector<std::pair<int, Side>> pre) {
  std::vector<char> seen(spec.board.n, 0);
  for (auto [c, s] : pre) {
    if (c < 0 || c >= spec.board.n) throw IllegalMoveError("precoloured cell out of range");
    if (seen[c]++) throw PrecoloringError("cell precoloured twice");
  }
  if (spec.payoff_kind == PayoffKind::kTeamCaptains && !pre.empty()) {
    // Re-index the table over the remaining free cells.
    const int n = spec.board.n;
    std::vector<int> free;
    for (int c = 0; c < n; ++c) {
      if (!seen[c]) free.push_back(c);
    }
    std::size_t base = 0;
    for (auto [c, s] : pre) {
      if (s == Side::kI) base |= std::size_t{1} << c;
    }
    std::vector<Rational> reduced(std::size_t{1} << free.size());
    for (std::size_t m = 0; m < reduced.size(); ++m) {
      std::size_t full = base;
      for (std::size_t i = 0; i < free.size(); ++i) {
        if (m >> i & 1) full |= std::size_t{1} << free[i];
      }
      reduced[m] = spec.table[full];
    }
    spec.table = std::move(reduced);
  }
  std::sort(pre.begin(), pre.end());
  spec.precolored = std::move(pre);
  return spec;
}

// ---------------------------------------------------------------------------
// Payoff evaluation

namespace detail {

// Evaluates a complete tree of uniform arity bottom-up; combine(span) -> +1/-1.
template <class Combine>
int evaluate_leaf_tree(std::span<const std::int8_t> leaves, int arity, int depth, std::vector<std::int8_t>& buf,
                       Combine combine) {
  buf.assign(leaves.begin(), leaves.end());
  std::size_t width = buf.size();
  for (int level = depth - 1; level >= 0; --level) {
    const std::size_t next = width / arity;
    for (std::size_t v = 0; v < next; ++v) {
      buf[v] = combine(level, std::span<const std::int8_t>(buf.data() + v * arity, arity));
    }
    width = next;
  }
  return buf[0];
}

inline std::int8_t andor_gate(int level, std::span<const std::int8_t> kids) {
  // Even levels are AND, odd levels OR.
  if (level % 2 == 0) return (kids[0] > 0 && kids[1] > 0) ? 1 : -1;
  return (kids[0] > 0 || kids[1] > 0) ? 1 : -1;
}

inline std::int8_t majority_gate(int, std::span<const std::int8_t> kids) {
  return (kids[0] + kids[1] + kids[2]) > 0 ? 1 : -1;
}

inline constexpr int kTicTacToeLines[8][3] = {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {0, 3, 6},
                                              {1, 4, 7}, {2, 5, 8}, {0, 4, 8}, {2, 4, 6}};

}  // namespace detail

// Boundary cells of a lattice board (they touch the outside).
inline bool on_boundary(const BoardGraph& b, int cell) {
  const auto rc = *b.cells[cell].coords;
  return rc[0] == 0 || rc[1] == 0 || rc[0] == b.rows - 1 || rc[1] == b.cols - 1;
}

// Colour of the outermost monochromatic cluster enclosing each cell, or 0
// when no cluster encloses it. A cluster K encloses a cell c not in K when
// every path from c to the board boundary meets K; among enclosing clusters
// the outermost is the one whose enclosed region is largest (enclosures nest).
inline Configuration surround_enclosure(const BoardGraph& b, std::span<const std::int8_t> colors) {
  if (b.kind != BoardKind::kHexLozenge) throw UnsupportedGameError("surround needs a hex lattice board");
  const int n = b.n;
  std::vector<int> cluster(n, -1);
  std::vector<std::vector<int>> members;
  for (int c = 0; c < n; ++c) {
    if (cluster[c] >= 0) continue;
    const int id = static_cast<int>(members.size());
    members.emplace_back();
    std::vector<int> stack{c};
    cluster[c] = id;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      members[id].push_back(v);
      for (int w : b.adjacency[v]) {
        if (cluster[w] < 0 && colors[w] == colors[c]) {
          cluster[w] = id;
          stack.push_back(w);
        }
      }
    }
  }
  std::vector<int> best_region(n, 0);
  std::vector<int> best_cluster(n, -1);
  std::vector<char> reached(n);
  std::vector<int> queue;
  for (int k = 0; k < static_cast<int>(members.size()); ++k) {
    std::fill(reached.begin(), reached.end(), 0);
    queue.clear();
    for (int c = 0; c < n; ++c) {
      if (cluster[c] != k && on_boundary(b, c)) {
        reached[c] = 1;
        queue.push_back(c);
      }
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (int w : b.adjacency[queue[head]]) {
        if (!reached[w] && cluster[w] != k) {
          reached[w] = 1;
          queue.push_back(w);
        }
      }
    }
    int region = 0;
    for (int c = 0; c < n; ++c) region += (!reached[c] && cluster[c] != k);
    if (region == 0) continue;
    for (int c = 0; c < n; ++c) {
      if (!reached[c] && cluster[c] != k && region > best_region[c]) {
        best_region[c] = region;
        best_cluster[c] = k;
      }
    }
  }
  Configuration out(n, 0);
  for (int c = 0; c < n; ++c) {
    if (best_cluster[c] >= 0) out[c] = colors[members[best_cluster[c]][0]];
  }
  return out;
}

// Recolours every enclosed cell to the colour of its outermost enclosing cluster.
inline Configuration surround_recolor(const BoardGraph& b, std::span<const std::int8_t> colors) {
  auto out = surround_enclosure(b, colors);
  for (int c = 0; c < b.n; ++c) {
    if (out[c] == 0) out[c] = colors[c];
  }
  return out;
}

// Cells recoloured black minus cells recoloured white. With count_unchanged,
// every enclosed cell scores for its encloser, even if it kept its colour.
inline int surround_payoff(const BoardGraph& b, std::span<const std::int8_t> colors, bool count_unchanged = false) {
  const auto enclosure = surround_enclosure(b, colors);
  int total = 0;
  for (int c = 0; c < b.n; ++c) {
    if (enclosure[c] != 0 && (count_unchanged || enclosure[c] != colors[c])) total += enclosure[c];
  }
  return total;
}

// Evaluates f on complete colourings; keeps scratch space between calls.
class PayoffEvaluator {
 public:
  explicit PayoffEvaluator(const GameSpec& spec) : spec_(&spec) {
    if (spec.payoff_kind == PayoffKind::kTeamCaptains) free_ = spec.free_cells();
  }

  // Integer payoff; not available for table-defined games.
  int eval_int(std::span<const std::int8_t> colors) {
    const GameSpec& s = *spec_;
    switch (s.payoff_kind) {
      case PayoffKind::kHexCrossing:
        return site_crossing(s.board, colors, +1, scratch_) ? 1 : -1;
      case PayoffKind::kSwitching:
        return bond_connects(*s.board.bonds, *s.incidence, colors, scratch_) ? 1 : -1;
      case PayoffKind::kAndOr:
        return detail::evaluate_leaf_tree(colors, 2, s.board.depth(), buf_, detail::andor_gate);
      case PayoffKind::kRecursiveMajority:
        return detail::evaluate_leaf_tree(colors, 3, s.board.depth(), buf_, detail::majority_gate);
      case PayoffKind::kTicTacToeRows: {
        int total = 0;
        for (const auto& line : detail::kTicTacToeLines) {
          const int sum = colors[line[0]] + colors[line[1]] + colors[line[2]];
          if (sum == 3) ++total;
          if (sum == -3) --total;
        }
        return total;
      }
      case PayoffKind::kSurround:
        return surround_payoff(s.board, colors, s.surround_count_unchanged);
      case PayoffKind::kTeamCaptains:
        break;
    }
    throw UnsupportedGameError("integer payoff not defined for table games");
  }

  Rational eval_exact(std::span<const std::int8_t> colors) {
    if (spec_->payoff_kind == PayoffKind::kTeamCaptains) return spec_->table[table_index(colors)];
    return Rational(eval_int(colors));
  }

  double eval(std::span<const std::int8_t> colors) {
    if (spec_->payoff_kind == PayoffKind::kTeamCaptains) return spec_->table[table_index(colors)].get_d();
    return eval_int(colors);
  }

  // +1/-1 for win-or-lose games.
  int winner_sign(std::span<const std::int8_t> colors) {
    if (spec_->payoff_kind == PayoffKind::kTeamCaptains) return spec_->table[table_index(colors)] > 0 ? 1 : -1;
    return eval_int(colors) > 0 ? 1 : -1;
  }

  std::size_t table_index(std::span<const std::int8_t> colors) const {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < free_.size(); ++i) {
      if (colors[free_[i]] > 0) idx |= std::size_t{1} << i;
    }
    return idx;
  }

 private:
  const GameSpec* spec_;
  std::vector<int> free_;
  SearchScratch scratch_;
  std::vector<std::int8_t> buf_;
};

// f(s1) for an explicit subset s1 of the board.
inline Rational payoff(const GameSpec& spec, std::span<const int> s1) {
  Configuration colors(spec.board.n, -1);
  for (int c : s1) {
    if (c < 0 || c >= spec.board.n) throw IllegalMoveError("cell id out of range");
    colors[c] = 1;
  }
  for (auto [c, side] : spec.precolored) {
    if (colors[c] != color_of(side)) throw PrecoloringError("subset contradicts precolouring of cell " + std::to_string(c));
  }
  PayoffEvaluator eval(spec);
  return eval.eval_exact(colors);
}

// ---------------------------------------------------------------------------
// Positions

enum class TurnMode { kIidCoin, kBalancedDeck };

enum class Winner { kI, kII, kUndetermined };

inline const char* to_string(Winner w) {
  switch (w) {
    case Winner::kI: return "I";
    case Winner::kII: return "II";
    case Winner::kUndetermined: return "undetermined";
  }
  return "?";
}

struct Outcome {
  Winner winner = Winner::kUndetermined;
  double value = 0.0;
  std::optional<int> determined_at_turn;
};

// Disjoint chosen sets (T1, T2) plus the turn mechanism. Immutable:
// apply_move returns a new position.
class GamePosition {
 public:
  explicit GamePosition(SpecPtr spec, double p = 0.5, TurnMode mode = TurnMode::kIidCoin)
      : spec_(std::move(spec)), owner_(spec_->board.n, 0), p_(p), mode_(mode) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("coin bias p must lie in [0, 1]");
    if (mode == TurnMode::kBalancedDeck && spec_->board.n % 2 != 0) {
      throw DomainError("balanced deck needs an even number of cells");
    }
    for (auto [c, s] : spec_->precolored) owner_[c] = color_of(s);
  }

  const GameSpec& spec() const { return *spec_; }
  const SpecPtr& spec_ptr() const { return spec_; }
  double p() const { return p_; }
  TurnMode turn_mode() const { return mode_; }
  int n() const { return spec_->board.n; }

  std::int8_t owner(int cell) const { return owner_.at(cell); }
  const std::vector<std::int8_t>& owners() const { return owner_; }
  bool is_undecided(int cell) const { return owner_.at(cell) == 0; }

  std::vector<int> t1() const { return cells_with(1); }
  std::vector<int> t2() const { return cells_with(-1); }
  std::vector<int> legal_moves() const { return cells_with(0); }
  int undecided_count() const {
    return static_cast<int>(std::count(owner_.begin(), owner_.end(), std::int8_t{0}));
  }
  int moves_played() const { return n() - undecided_count() - static_cast<int>(spec_->precolored.size()); }

  // Cards left in a balanced deck: (I-cards, II-cards).
  std::pair<int, int> remaining_cards() const {
    const int half = n() / 2;
    return {half - static_cast<int>(t1().size()), half - static_cast<int>(t2().size())};
  }

  GamePosition apply_move(int cell, Side player) const {
    if (cell < 0 || cell >= n()) throw IllegalMoveError("cell " + std::to_string(cell) + " is out of range");
    if (owner_[cell] != 0) throw IllegalMoveError("cell " + std::to_string(cell) + " is occupied");
    if (mode_ == TurnMode::kBalancedDeck) {
      const auto [a, b] = remaining_cards();
      if ((player == Side::kI ? a : b) <= 0) throw IllegalMoveError("no cards left for player " + std::string(to_string(player)));
    }
    GamePosition next = *this;
    next.owner_[cell] = color_of(player);
    return next;
  }

  bool operator==(const GamePosition& o) const {
    return spec_ == o.spec_ && owner_ == o.owner_ && p_ == o.p_ && mode_ == o.mode_;
  }

 private:
  std::vector<int> cells_with(std::int8_t v) const {
    std::vector<int> out;
    for (int c = 0; c < n(); ++c) {
      if (owner_[c] == v) out.push_back(c);
    }
    return out;
  }

  SpecPtr spec_;
  std::vector<std::int8_t> owner_;
  double p_;
  TurnMode mode_;
};

inline void require_monotone_win_or_lose(const GameSpec& spec) {
  if (!spec.monotone || !spec.win_or_lose) {
    throw UnsupportedGameError(spec.game + " is not a monotone win-or-lose game");
  }
}

// Winner I iff f(T1) = +1; winner II iff f(T1 plus every undecided cell) = -1.
inline Outcome winner_determined(const GamePosition& pos, PayoffEvaluator& eval) {
  require_monotone_win_or_lose(pos.spec());
  Configuration colors(pos.owners());
  for (auto& x : colors) {
    if (x == 0) x = -1;
  }
  Outcome out;
  if (eval.winner_sign(colors) > 0) {
    out.winner = Winner::kI;
    out.value = 1;
    return out;
  }
  const auto& own = pos.owners();
  for (std::size_t c = 0; c < colors.size(); ++c) {
    if (own[c] == 0) colors[c] = 1;
  }
  if (eval.winner_sign(colors) < 0) {
    out.winner = Winner::kII;
    out.value = -1;
  }
  return out;
}

inline Outcome winner_determined(const GamePosition& pos) {
  PayoffEvaluator eval(pos.spec());
  return winner_determined(pos, eval);
}

inline std::vector<int> legal_moves(const GamePosition& pos) { return pos.legal_moves(); }

inline GamePosition apply_move(const GamePosition& pos, int cell, Side player) {
  return pos.apply_move(cell, player);
}

}  // namespace rtsg
