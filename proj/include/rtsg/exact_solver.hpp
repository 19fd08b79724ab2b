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

// Exact backward induction for random-turn selection games.
//
//   E(T1, T2) = f(T1)                                  if T1 u T2 = S
//   E(T1, T2) = p max_s E(T1+s, T2) + (1-p) min_s E(T1, T2+s)   otherwise
//
// Positions are keyed by a base-3 digit per cell that was undecided at the
// solver's root position (0 undecided, 1 player I, 2 player II). Values are
// exact rationals when Value = Rational, doubles otherwise.

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rtsg/error.hpp"
#include "rtsg/game.hpp"
#include "rtsg/rational.hpp"

namespace rtsg {

struct SolverLimits {
  int max_undecided = 13;
};

// Chooses one cell out of a nonempty ascending candidate list.
using TieRule = std::function<int(std::span<const int>)>;

inline TieRule lowest_id_tie_rule() {
  return [](std::span<const int> c) { return c.front(); };
}

inline TieRule highest_id_tie_rule() {
  return [](std::span<const int> c) { return c.back(); };
}

struct MoveSet {
  std::vector<int> cells;
  bool shared = false;  // the same set is optimal for both players
};

template <class Value>
class ExactSolver {
 public:
  ExactSolver(const GamePosition& root, Value p, SolverLimits limits = {})
      : root_(root), p_(std::move(p)), cells_(root.legal_moves()) {
    if (p_ < 0 || p_ > 1) throw DomainError("coin bias p must lie in [0, 1]");
    m_ = static_cast<int>(cells_.size());
    if (m_ > limits.max_undecided) {
      throw CapacityError("exact solver: " + std::to_string(m_) + " undecided cells exceed the limit of " +
                          std::to_string(limits.max_undecided));
    }
    full_ = m_ == 32 ? ~0u : ((1u << m_) - 1);
    pow3_.resize(m_ + 1, 1);
    for (int i = 1; i <= m_; ++i) pow3_[i] = pow3_[i - 1] * 3;
    local_.assign(root.n(), -1);
    for (int i = 0; i < m_; ++i) local_[cells_[i]] = i;

    // f over every completion of the root position.
    PayoffEvaluator eval(root.spec());
    Configuration colors(root.owners());
    f_.resize(std::size_t{1} << m_);
    for (std::uint32_t mask = 0; mask <= full_; ++mask) {
      for (int i = 0; i < m_; ++i) colors[cells_[i]] = (mask >> i & 1) ? 1 : -1;
      f_[mask] = value_from<Value>(eval.eval_exact(colors));
      if (mask == full_) break;
    }
    fmin_ = *std::min_element(f_.begin(), f_.end());
    fmax_ = *std::max_element(f_.begin(), f_.end());
  }

  const GamePosition& root() const { return root_; }
  const Value& p() const { return p_; }
  int undecided() const { return m_; }
  const std::vector<int>& cells() const { return cells_; }
  const Value& min_payoff() const { return fmin_; }
  const Value& max_payoff() const { return fmax_; }

  Value value() { return value(root_); }

  Value value(const GamePosition& pos) {
    const auto [m1, m2] = masks(pos);
    return solve(m1, m2);
  }

  // Optimal moves for `mover`: argmax of E(T1+s, T2) for I, argmin of
  // E(T1, T2+s) for II.
  std::vector<int> best_moves(const GamePosition& pos, Side mover) {
    const auto [m1, m2] = masks(pos);
    return best_local(m1, m2, mover);
  }

  MoveSet optimal_moves(const GamePosition& pos) {
    const auto [m1, m2] = masks(pos);
    if ((m1 | m2) == full_) throw GameOverError("no undecided cells");
    MoveSet ms;
    ms.cells = best_local(m1, m2, Side::kI);
    ms.shared = ms.cells == best_local(m1, m2, Side::kII);
    return ms;
  }

  // Expected number of turns until the winner is determined when both sides
  // play optimal moves chosen by `tie`. Monotone win-or-lose games only.
  Value expected_length(const TieRule& tie = lowest_id_tie_rule()) {
    require_monotone_win_or_lose(root_.spec());
    len_memo_.assign(pow3_[m_], Value(0));
    len_done_.assign(pow3_[m_], 0);
    return length(0, 0, 0, tie);
  }

  Value expected_length(const GamePosition& pos, const TieRule& tie = lowest_id_tie_rule()) {
    require_monotone_win_or_lose(root_.spec());
    len_memo_.assign(pow3_[m_], Value(0));
    len_done_.assign(pow3_[m_], 0);
    const auto [m1, m2] = masks(pos);
    return length(m1, m2, key_of(m1, m2), tie);
  }

  // Is the winner already fixed? Uses the precomputed payoff table.
  Winner determined(std::uint32_t m1, std::uint32_t m2) const {
    if (f_[m1] > 0) return Winner::kI;
    if (f_[full_ & ~m2] < 0) return Winner::kII;
    return Winner::kUndetermined;
  }

  // Distribution of the final T1 over coin sequences when both players follow
  // the optimal strategy, which must be unique at every reached position.
  std::map<std::vector<int>, Value> final_set_distribution() {
    std::map<std::vector<int>, Value> dist;
    distribute(0, 0, Value(1), dist);
    return dist;
  }

  // Value when turns come from a shuffled deck with n/2 cards per player.
  Value balanced_value() {
    const int n = root_.n();
    if (n % 2 != 0) throw DomainError("balanced deck needs an even number of cells");
    const int t1 = static_cast<int>(root_.t1().size());
    const int t2 = static_cast<int>(root_.t2().size());
    if (t1 > n / 2 || t2 > n / 2) throw DomainError("position already exceeds a balanced split");
    bal_memo_.assign(pow3_[m_], Value(0));
    bal_done_.assign(pow3_[m_], 0);
    return balanced(0, 0, 0, n / 2 - t1, n / 2 - t2);
  }

  // Local-mask helpers, exposed for tests and tree simulators.
  std::pair<std::uint32_t, std::uint32_t> masks(const GamePosition& pos) const {
    std::uint32_t m1 = 0, m2 = 0;
    const auto& own = pos.owners();
    const auto& root_own = root_.owners();
    if (&pos.spec() != &root_.spec()) {
      throw DomainError("position belongs to a different game");
    }
    for (int c = 0; c < pos.n(); ++c) {
      if (local_[c] < 0) {
        if (own[c] != root_own[c]) throw DomainError("position does not extend the solver root");
        continue;
      }
      if (own[c] > 0) m1 |= 1u << local_[c];
      if (own[c] < 0) m2 |= 1u << local_[c];
    }
    return {m1, m2};
  }

 private:
  std::uint32_t key_of(std::uint32_t m1, std::uint32_t m2) const {
    std::uint32_t key = 0;
    for (int i = 0; i < m_; ++i) {
      if (m1 >> i & 1) key += pow3_[i];
      if (m2 >> i & 1) key += 2 * pow3_[i];
    }
    return key;
  }

  void ensure_memo() {
    if (memo_.empty()) {
      memo_.assign(pow3_[m_], Value(0));
      done_.assign(pow3_[m_], 0);
    }
  }

  Value solve(std::uint32_t m1, std::uint32_t m2) {
    ensure_memo();
    return solve(m1, m2, key_of(m1, m2));
  }

  const Value& solve(std::uint32_t m1, std::uint32_t m2, std::uint32_t key) {
    if ((m1 | m2) == full_) return f_[m1];
    if (done_[key]) return memo_[key];
    std::uint32_t free = full_ & ~(m1 | m2);
    std::optional<Value> hi, lo;
    while (free) {
      const int i = std::countr_zero(free);
      free &= free - 1;
      const std::uint32_t bit = 1u << i;
      const Value& a = solve(m1 | bit, m2, key + pow3_[i]);
      if (!hi || a > *hi) hi = a;
      const Value& b = solve(m1, m2 | bit, key + 2 * pow3_[i]);
      if (!lo || b < *lo) lo = b;
    }
    memo_[key] = p_ * *hi + (1 - p_) * *lo;
    done_[key] = 1;
    return memo_[key];
  }

  // Ascending board ids of the optimal moves.
  std::vector<int> best_local(std::uint32_t m1, std::uint32_t m2, Side mover) {
    ensure_memo();
    const std::uint32_t key = key_of(m1, m2);
    std::uint32_t free = full_ & ~(m1 | m2);
    std::vector<std::pair<int, Value>> scored;
    while (free) {
      const int i = std::countr_zero(free);
      free &= free - 1;
      const std::uint32_t bit = 1u << i;
      if (mover == Side::kI) {
        scored.emplace_back(i, solve(m1 | bit, m2, key + pow3_[i]));
      } else {
        scored.emplace_back(i, solve(m1, m2 | bit, key + 2 * pow3_[i]));
      }
    }
    if (scored.empty()) return {};
    Value best = scored.front().second;
    for (const auto& [i, v] : scored) {
      if (mover == Side::kI ? v > best : v < best) best = v;
    }
    std::vector<int> out;
    for (const auto& [i, v] : scored) {
      if (values_tie(v, best)) out.push_back(cells_[i]);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  int local_choice(std::uint32_t m1, std::uint32_t m2, Side mover, const TieRule& tie) {
    const auto best = best_local(m1, m2, mover);
    const int cell = tie(best);
    if (std::find(best.begin(), best.end(), cell) == best.end()) {
      throw FaultingStrategyError("tie rule returned a non-candidate cell");
    }
    return local_[cell];
  }

  Value length(std::uint32_t m1, std::uint32_t m2, std::uint32_t key, const TieRule& tie) {
    if (determined(m1, m2) != Winner::kUndetermined) return Value(0);
    if (len_done_[key]) return len_memo_[key];
    const int a = local_choice(m1, m2, Side::kI, tie);
    const int b = local_choice(m1, m2, Side::kII, tie);
    Value v = 1 + p_ * length(m1 | (1u << a), m2, key + pow3_[a], tie) +
              (1 - p_) * length(m1, m2 | (1u << b), key + 2 * pow3_[b], tie);
    len_memo_[key] = v;
    len_done_[key] = 1;
    return v;
  }

  void distribute(std::uint32_t m1, std::uint32_t m2, Value weight, std::map<std::vector<int>, Value>& dist) {
    if ((m1 | m2) == full_) {
      std::vector<int> final_set = root_.t1();
      for (int i = 0; i < m_; ++i) {
        if (m1 >> i & 1) final_set.push_back(cells_[i]);
      }
      std::sort(final_set.begin(), final_set.end());
      auto [it, inserted] = dist.emplace(std::move(final_set), weight);
      if (!inserted) it->second += weight;
      return;
    }
    const auto best_i = best_local(m1, m2, Side::kI);
    const auto best_ii = best_local(m1, m2, Side::kII);
    if (best_i.size() != 1 || best_ii.size() != 1) {
      throw GenericityError("optimal move is not unique; the payoff is not generic");
    }
    distribute(m1 | (1u << local_[best_i[0]]), m2, weight * p_, dist);
    distribute(m1, m2 | (1u << local_[best_ii[0]]), weight * (1 - p_), dist);
  }

  Value balanced(std::uint32_t m1, std::uint32_t m2, std::uint32_t key, int cards_i, int cards_ii) {
    if ((m1 | m2) == full_) return f_[m1];
    if (bal_done_[key]) return bal_memo_[key];
    std::uint32_t free = full_ & ~(m1 | m2);
    std::optional<Value> hi, lo;
    while (free) {
      const int i = std::countr_zero(free);
      free &= free - 1;
      const std::uint32_t bit = 1u << i;
      if (cards_i > 0) {
        Value a = balanced(m1 | bit, m2, key + pow3_[i], cards_i - 1, cards_ii);
        if (!hi || a > *hi) hi = std::move(a);
      }
      if (cards_ii > 0) {
        Value b = balanced(m1, m2 | bit, key + 2 * pow3_[i], cards_i, cards_ii - 1);
        if (!lo || b < *lo) lo = std::move(b);
      }
    }
    const Value total(cards_i + cards_ii);
    Value v(0);
    if (hi) v += Value(cards_i) / total * *hi;
    if (lo) v += Value(cards_ii) / total * *lo;
    bal_memo_[key] = v;
    bal_done_[key] = 1;
    return v;
  }

  GamePosition root_;
  Value p_;
  std::vector<int> cells_;
  int m_ = 0;
  std::uint32_t full_ = 0;
  std::vector<std::uint32_t> pow3_;
  std::vector<int> local_;
  std::vector<Value> f_;
  Value fmin_, fmax_;
  std::vector<Value> memo_;
  std::vector<char> done_;
  std::vector<Value> len_memo_;
  std::vector<char> len_done_;
  std::vector<Value> bal_memo_;
  std::vector<char> bal_done_;
};

// ---------------------------------------------------------------------------
// Free-function entry points

template <class Value>
Value exact_value(const GamePosition& pos, const Value& p, SolverLimits limits = {}) {
  return ExactSolver<Value>(pos, p, limits).value();
}

template <class Value>
MoveSet optimal_moves(const GamePosition& pos, const Value& p, SolverLimits limits = {}) {
  ExactSolver<Value> solver(pos, p, limits);
  return solver.optimal_moves(pos);
}

template <class Value>
Value expected_game_length_exact(const SpecPtr& spec, const Value& p, const TieRule& tie = lowest_id_tie_rule(),
                                 SolverLimits limits = {}) {
  ExactSolver<Value> solver(GamePosition(spec), p, limits);
  return solver.expected_length(tie);
}

inline std::map<std::vector<int>, Rational> final_set_distribution(const SpecPtr& spec, SolverLimits limits = {}) {
  ExactSolver<Rational> solver(GamePosition(spec), Rational(1, 2), limits);
  return solver.final_set_distribution();
}

inline Rational exact_value_balanced(const SpecPtr& spec, SolverLimits limits = {}) {
  if (spec->n() % 2 != 0) throw DomainError("balanced deck needs an even number of cells");
  if (spec->n() > 12) {
    throw CapacityError("balanced solver: n = " + std::to_string(spec->n()) + " exceeds the limit of 12");
  }
  ExactSolver<Rational> solver(GamePosition(spec), Rational(0), limits);
  return solver.balanced_value();
}

// Probability, over p-biased completions of the other undecided cells, that
// flipping `cell` changes f. Enumerates 2^(k-1) completions, k <= 25.
template <class Value>
Value exact_pivotal_probability(const GamePosition& pos, int cell, const Value& p, int max_undecided = 25) {
  if (!pos.is_undecided(cell)) throw IllegalMoveError("cell " + std::to_string(cell) + " is decided");
  std::vector<int> others;
  for (int c : pos.legal_moves()) {
    if (c != cell) others.push_back(c);
  }
  const int k = static_cast<int>(others.size());
  if (k + 1 > max_undecided) {
    throw CapacityError("pivotal enumeration: " + std::to_string(k + 1) + " undecided cells exceed the limit of " +
                        std::to_string(max_undecided));
  }
  PayoffEvaluator eval(pos.spec());
  const bool table = pos.spec().payoff_kind == PayoffKind::kTeamCaptains;
  Configuration colors(pos.owners());
  std::vector<std::int64_t> by_weight(k + 1, 0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    for (int i = 0; i < k; ++i) colors[others[i]] = (mask >> i & 1) ? 1 : -1;
    colors[cell] = 1;
    bool differs;
    if (table) {
      const auto up = eval.eval_exact(colors);
      colors[cell] = -1;
      differs = up != eval.eval_exact(colors);
    } else {
      const int up = eval.eval_int(colors);
      colors[cell] = -1;
      differs = up != eval.eval_int(colors);
    }
    if (differs) ++by_weight[std::popcount(mask)];
  }
  Value total(0);
  for (int ones = 0; ones <= k; ++ones) {
    if (!by_weight[ones]) continue;
    Value w(1);
    for (int i = 0; i < ones; ++i) w *= p;
    for (int i = ones; i < k; ++i) w *= (1 - p);
    total += Value(static_cast<long>(by_weight[ones])) * w;
  }
  return total;
}

// E[f(T)] with each cell of T independently in with probability p: the
// closed-form game value, evaluated by brute force.
template <class Value>
Value mean_payoff(const GamePosition& pos, const Value& p, int max_undecided = 25) {
  const auto free = pos.legal_moves();
  const int k = static_cast<int>(free.size());
  if (k > max_undecided) throw CapacityError("mean payoff: too many undecided cells");
  PayoffEvaluator eval(pos.spec());
  Configuration colors(pos.owners());
  Value total(0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    Value w(1);
    for (int i = 0; i < k; ++i) {
      const bool in = mask >> i & 1;
      colors[free[i]] = in ? 1 : -1;
      w *= in ? p : (1 - p);
    }
    total += w * value_from<Value>(eval.eval_exact(colors));
  }
  return total;
}

}  // namespace rtsg
