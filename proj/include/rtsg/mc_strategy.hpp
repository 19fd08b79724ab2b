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

// Sampling strategy (play the cell most often pivotal in random completions)
// and self-play.

#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "rtsg/error.hpp"
#include "rtsg/exact_solver.hpp"
#include "rtsg/game.hpp"
#include "rtsg/percolation.hpp"
#include "rtsg/rng.hpp"

namespace rtsg {

// Constant in front of L^4 eps^-2 log(L^4 / eps).
inline constexpr double kSampleBoundConstant = 1.0;

inline std::int64_t sample_size_for(int L, double epsilon, double constant = kSampleBoundConstant) {
  if (L < 1) throw DomainError("L must be at least 1");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("epsilon must lie in (0, 1)");
  if (!(constant > 0.0)) throw DomainError("sample bound constant must be positive");
  const double l4 = std::pow(static_cast<double>(L), 4);
  const double n = constant * l4 / (epsilon * epsilon) * std::log(l4 / epsilon);
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(n)));
}

struct StrategyConfig {
  std::int64_t samples = 10000;
  TieRule tie_rule = lowest_id_tie_rule();
  unsigned threads = 1;
};

struct McChoice {
  int cell = -1;
  PivotalEstimate estimate;
};

// Samples completions with the position's own coin bias and plays the cell
// with the largest pivotal count.
inline McChoice choose_move_mc(const GamePosition& pos, const StrategyConfig& config, std::uint64_t seed) {
  if (config.samples < 1) throw DomainError("sample count must be at least 1");
  const auto moves = pos.legal_moves();
  if (moves.empty()) throw GameOverError("no undecided cells");
  McChoice out;
  out.estimate = estimate_pivotality(pos, config.samples, seed, config.threads);
  std::int64_t best = -1;
  for (int c : moves) best = std::max(best, out.estimate.counts[c]);
  std::vector<int> ties;
  for (int c : moves) {
    if (out.estimate.counts[c] == best) ties.push_back(c);
  }
  out.cell = config.tie_rule(ties);
  return out;
}

// A strategy maps (position, mover, per-move seed) to a cell. It must be a
// deterministic function of its arguments.
using Strategy = std::function<int(const GamePosition&, Side, std::uint64_t)>;

inline Strategy mc_strategy(StrategyConfig config) {
  return [config](const GamePosition& pos, Side, std::uint64_t seed) { return choose_move_mc(pos, config, seed).cell; };
}

// Exact optimal play; the solver is built on first use and kept for the game.
inline Strategy exact_strategy(const TieRule& tie = lowest_id_tie_rule(), SolverLimits limits = {}) {
  auto solver = std::make_shared<std::unique_ptr<ExactSolver<Rational>>>();
  return [solver, tie, limits](const GamePosition& pos, Side mover, std::uint64_t) {
    auto& s = *solver;
    if (!s || &s->root().spec() != &pos.spec() || s->p() != Rational(pos.p())) {
      s = std::make_unique<ExactSolver<Rational>>(GamePosition(pos.spec_ptr(), pos.p()), Rational(pos.p()), limits);
    }
    return tie(s->best_moves(pos, mover));
  };
}

inline Strategy random_strategy() {
  return [](const GamePosition& pos, Side, std::uint64_t seed) {
    const auto moves = pos.legal_moves();
    if (moves.empty()) throw GameOverError("no undecided cells");
    const CounterRng rng(seed, Stream::kRandomStrategy);
    return moves[rng.u64(0) % moves.size()];
  };
}

struct MoveRecord {
  int turn = 0;
  Side coin = Side::kI;
  int cell = -1;
};

struct GameRecord {
  std::string game;
  int rows = 0;
  int cols = 0;
  double p = 0.5;
  std::uint64_t seed = 0;
  std::vector<MoveRecord> moves;
  Winner winner = Winner::kUndetermined;
  double value = 0.0;
  int length = 0;
  bool connected_throughout = true;
  int disconnected_move_count = 0;
};

// Seed handed to the mover's strategy on turn t.
inline std::uint64_t move_seed(std::uint64_t game_seed, int turn) {
  return CounterRng(game_seed, Stream::kMoveSeed).u64(static_cast<std::uint64_t>(turn));
}

inline Side coin_for_turn(std::uint64_t game_seed, int turn, double p) {
  const CounterRng rng(game_seed, Stream::kCoin);
  return rng.word(static_cast<std::uint64_t>(turn), 0) < bernoulli_threshold(p) ? Side::kI : Side::kII;
}

namespace detail {

inline void fill_record_header(GameRecord& r, const GameSpec& spec, double p, std::uint64_t seed) {
  r.game = spec.game;
  r.rows = spec.board.rows;
  r.cols = spec.board.cols;
  r.p = p;
  r.seed = seed;
}

inline bool touches_played(const BoardGraph& b, const std::vector<char>& played, int cell) {
  for (int d : b.adjacency[cell]) {
    if (played[d]) return true;
  }
  return false;
}

}  // namespace detail

// Plays one game. With stop_early the game ends as soon as the winner is
// determined; otherwise every cell is filled and length still records the
// turn at which the winner became fixed.
inline GameRecord selfplay(const SpecPtr& spec, const Strategy& strategy_i, const Strategy& strategy_ii, double p,
                           std::uint64_t seed, bool stop_early = true) {
  GameRecord rec;
  detail::fill_record_header(rec, *spec, p, seed);
  GamePosition pos(spec, p);
  PayoffEvaluator eval(*spec);
  const bool decisive = spec->monotone && spec->win_or_lose;
  std::vector<char> played(spec->n(), 0);
  int played_count = 0;
  std::optional<int> determined_at;

  auto check = [&](int turn) {
    if (!decisive || determined_at) return;
    const Outcome o = winner_determined(pos, eval);
    if (o.winner != Winner::kUndetermined) {
      determined_at = turn;
      rec.winner = o.winner;
    }
  };
  check(0);

  for (int turn = 1; pos.undecided_count() > 0; ++turn) {
    if (stop_early && determined_at) break;
    const Side mover = coin_for_turn(seed, turn, p);
    const Strategy& strategy = mover == Side::kI ? strategy_i : strategy_ii;
    const int cell = strategy(pos, mover, move_seed(seed, turn));
    if (cell < 0 || cell >= pos.n() || !pos.is_undecided(cell)) {
      throw FaultingStrategyError(std::string("strategy for player ") + to_string(mover) + " returned illegal cell " +
                                  std::to_string(cell));
    }
    pos = pos.apply_move(cell, mover);
    rec.moves.push_back({turn, mover, cell});
    if (played_count > 0 && !detail::touches_played(spec->board, played, cell)) ++rec.disconnected_move_count;
    played[cell] = 1;
    ++played_count;
    check(turn);
  }

  if (pos.undecided_count() == 0) {
    rec.value = eval.eval(pos.owners());
    if (decisive && !determined_at) rec.winner = rec.value > 0 ? Winner::kI : Winner::kII;
  } else {
    rec.value = rec.winner == Winner::kI ? 1.0 : -1.0;
  }
  rec.length = determined_at ? *determined_at : static_cast<int>(rec.moves.size());
  rec.connected_throughout = rec.disconnected_move_count == 0;
  return rec;
}

struct ReplayResult {
  GamePosition position;
  Outcome outcome;
};

// Re-applies the recorded moves and checks the coin tosses against the seed.
inline ReplayResult replay_record(const SpecPtr& spec, const GameRecord& rec) {
  GamePosition pos(spec, rec.p);
  for (const auto& m : rec.moves) {
    if (coin_for_turn(rec.seed, m.turn, rec.p) != m.coin) {
      throw IllegalMoveError("turn " + std::to_string(m.turn) + " does not match the recorded coin");
    }
    pos = pos.apply_move(m.cell, m.coin);
  }
  Outcome o;
  if (spec->monotone && spec->win_or_lose) {
    o = winner_determined(pos);
  } else if (pos.undecided_count() == 0) {
    PayoffEvaluator eval(*spec);
    o.value = eval.eval(pos.owners());
  }
  return {pos, o};
}

}  // namespace rtsg
