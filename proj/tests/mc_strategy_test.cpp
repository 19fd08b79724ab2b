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

#include <algorithm>
#include <cmath>

#include "gtest/gtest.h"
#include "oracles.hpp"
#include "rtsg/rtsg.hpp"

namespace rtsg {
namespace {

bool contains(const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); }

// Random position with `moves` cells played, seeded.
GamePosition random_position(const SpecPtr& spec, int moves, std::uint64_t seed) {
  GamePosition pos(spec);
  const CounterRng rng(seed, Stream::kConfiguration);
  for (int t = 0; t < moves; ++t) {
    const auto legal = pos.legal_moves();
    pos = pos.apply_move(legal[rng.u64(t) % legal.size()], rng.word(t, 4) & 1 ? Side::kI : Side::kII);
  }
  return pos;
}

TEST(SampleSizeTest, Examples) {
  EXPECT_EQ(sample_size_for(3, 0.1), 54246);
  EXPECT_GE(sample_size_for(1, 0.999), 1);
  EXPECT_GT(sample_size_for(4, 0.1), sample_size_for(3, 0.1));
  EXPECT_EQ(sample_size_for(3, 0.1, 2.0), 108492);
  EXPECT_THROW(sample_size_for(0, 0.1), DomainError);
  EXPECT_THROW(sample_size_for(3, 1.0), DomainError);
  EXPECT_THROW(sample_size_for(3, 0.0), DomainError);
}

TEST(ChooseMoveTest, SingleUndecidedCell) {
  const auto spec = share(make_hex(2));
  const auto pos = GamePosition(spec).apply_move(0, Side::kI).apply_move(1, Side::kII).apply_move(3, Side::kII);
  const auto choice = choose_move_mc(pos, {.samples = 500}, 4);
  EXPECT_EQ(choice.cell, 2);
  // With (1,0) the last free cell, it decides the game every time.
  EXPECT_EQ(choice.estimate.counts[2], 500);
}

TEST(ChooseMoveTest, HexThreeNearOptimal) {
  const auto spec = share(make_hex(3));
  const GamePosition empty(spec);
  const auto choice = choose_move_mc(empty, {.samples = 100000, .threads = 2}, 11);
  std::vector<Rational> exact;
  for (int c = 0; c < 9; ++c) exact.push_back(exact_pivotal_probability(empty, c, Rational(1, 2)));
  const Rational best = *std::max_element(exact.begin(), exact.end());
  EXPECT_LE(rtsg::to_double(best - exact[choice.cell]), 0.01);
}

TEST(ChooseMoveTest, MajorityLeavesEquallyPivotal) {
  const auto spec = share(make_recursive_majority(1));
  const int N = 20000;
  const auto choice = choose_move_mc(GamePosition(spec), {.samples = N}, 5);
  const double sigma = std::sqrt(N * 0.25);
  for (int c = 0; c < 3; ++c) EXPECT_NEAR(choice.estimate.counts[c], N / 2.0, 3 * sigma);
}

TEST(ChooseMoveTest, GameOver) {
  const auto spec = share(make_hex(1));
  EXPECT_THROW(choose_move_mc(GamePosition(spec).apply_move(0, Side::kI), {}, 1), GameOverError);
}

TEST(ChooseMoveTest, Unbiased) {
  const auto spec = share(make_hex(3));
  for (std::uint64_t s = 0; s < 4; ++s) {
    const auto pos = random_position(spec, 2 + static_cast<int>(s), s);
    const int N = 20000;
    const auto choice = choose_move_mc(pos, {.samples = N}, 100 + s);
    for (int c : pos.legal_moves()) {
      const double q = rtsg::to_double(exact_pivotal_probability(pos, c, Rational(1, 2)));
      EXPECT_NEAR(choice.estimate.estimate(c), q, 3 * std::sqrt(q * (1 - q) / N) + 1e-12);
    }
  }
}

TEST(ChooseMoveTest, ConvergesToExactArgmax) {
  const auto spec = share(make_hex(3));
  ExactSolver<Rational> solver(GamePosition(spec), Rational(1, 2));
  std::vector<int> misses;
  for (std::int64_t N : {1000, 10000, 100000}) {
    int miss = 0;
    for (std::uint64_t s = 0; s < 40; ++s) {
      const auto pos = random_position(spec, static_cast<int>(s % 4), s);
      if (solver.determined(solver.masks(pos).first, solver.masks(pos).second) != Winner::kUndetermined) continue;
      const auto choice = choose_move_mc(pos, {.samples = N}, 1000 + s);
      miss += !contains(solver.optimal_moves(pos).cells, choice.cell);
    }
    misses.push_back(miss);
  }
  EXPECT_LE(misses[2], misses[0]);
  EXPECT_LE(misses[2], 2);
}

TEST(ChooseMoveTest, BiasedArgmaxMatchesExact) {
  const auto spec = share(make_andor(3));
  for (double p : {0.3, 0.7}) {
    const GamePosition empty(spec, p);
    const auto choice = choose_move_mc(empty, {.samples = 50000}, 3);
    const auto ms = optimal_moves(empty, Rational(p));
    EXPECT_TRUE(contains(ms.cells, choice.cell)) << p;
  }
}

TEST(SelfplayTest, SingleCell) {
  const auto spec = share(make_hex(1));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto rec = selfplay(spec, random_strategy(), random_strategy(), 0.5, seed);
    ASSERT_EQ(rec.moves.size(), 1u);
    EXPECT_EQ(rec.length, 1);
    EXPECT_EQ(rec.winner, rec.moves[0].coin == Side::kI ? Winner::kI : Winner::kII);
  }
}

TEST(SelfplayTest, ExactMajorityLength) {
  const auto spec = share(make_recursive_majority(1));
  const auto sI = exact_strategy(), sII = exact_strategy();
  const int games = 100000;
  double sum = 0, sq = 0;
  for (int g = 0; g < games; ++g) {
    const auto rec = selfplay(spec, sI, sII, 0.5, game_seed(9, g));
    sum += rec.length;
    sq += rec.length * rec.length;
  }
  const double mean = sum / games;
  const double se = std::sqrt((sq / games - mean * mean) / games);
  EXPECT_NEAR(mean, 2.5, 3 * se);
}

TEST(SelfplayTest, McAgainstExactIsEven) {
  const auto spec = share(make_hex(3));
  const auto mc = mc_strategy({.samples = 2000});
  const auto ex = exact_strategy();
  const int games = 2000;
  int mc_wins = 0;
  for (int g = 0; g < games; ++g) {
    const bool mc_first = g % 2 == 0;
    const auto rec = mc_first ? selfplay(spec, mc, ex, 0.5, game_seed(21, g)) : selfplay(spec, ex, mc, 0.5, game_seed(21, g));
    mc_wins += (rec.winner == Winner::kI) == mc_first;
  }
  const double rate = static_cast<double>(mc_wins) / games;
  EXPECT_NEAR(rate, 0.5, 3 * std::sqrt(0.25 / games));
}

TEST(SelfplayTest, SelfDualWinRate) {
  const auto spec = share(make_hex(5));
  const auto mc = mc_strategy({.samples = 300});
  const int games = 600;
  int wins = 0;
  for (int g = 0; g < games; ++g) wins += selfplay(spec, mc, mc, 0.5, game_seed(3, g)).winner == Winner::kI;
  EXPECT_NEAR(static_cast<double>(wins) / games, 0.5, 3 * std::sqrt(0.25 / games));
}

TEST(SelfplayTest, BiasedCoinEdge) {
  const auto spec = share(make_hex(5, 10));
  const auto mc = mc_strategy({.samples = 300});
  const int games = 100;
  int wins = 0;
  for (int g = 0; g < games; ++g) wins += selfplay(spec, mc, mc, 0.75, game_seed(8, g)).winner == Winner::kI;
  EXPECT_GT(static_cast<double>(wins) / games, 0.9);
}

TEST(SelfplayTest, FaultingStrategy) {
  const auto spec = share(make_hex(3));
  const Strategy bad = [](const GamePosition&, Side, std::uint64_t) { return 99; };
  try {
    selfplay(spec, bad, bad, 0.5, 1);
    FAIL();
  } catch (const FaultingStrategyError& e) {
    EXPECT_NE(std::string(e.what()).find("player I"), std::string::npos);
  }
}

TEST(SelfplayTest, ReplayAndConnectivity) {
  for (const auto& s : {make_hex(6), make_bridgit(4), make_andor(4)}) {
    const auto spec = share(s);
    const auto mc = mc_strategy({.samples = 200});
    for (std::uint64_t g = 0; g < 20; ++g) {
      const auto rec = selfplay(spec, mc, random_strategy(), 0.5, g);
      EXPECT_EQ(rec.length, static_cast<int>(rec.moves.size()));
      const auto rp = replay_record(spec, rec);
      EXPECT_EQ(rp.outcome.winner, rec.winner);
      // Played set connected after every turn, by union-find.
      std::vector<char> played(spec->n(), 0);
      bool connected = true;
      for (std::size_t k = 0; k < rec.moves.size(); ++k) {
        played[rec.moves[k].cell] = 1;
        testing::UnionFind uf(spec->n());
        for (int c = 0; c < spec->n(); ++c) {
          for (int d : spec->board.adjacency[c]) {
            if (played[c] && played[d]) uf.unite(c, d);
          }
        }
        const int root = uf.find(rec.moves[0].cell);
        for (int c = 0; c < spec->n(); ++c) connected = connected && (!played[c] || uf.find(c) == root);
      }
      EXPECT_EQ(rec.connected_throughout, connected);
    }
  }
}

TEST(SelfplayTest, FullBoardWhenNotStoppingEarly) {
  const auto spec = share(make_hex(4));
  const auto rec = selfplay(spec, random_strategy(), random_strategy(), 0.5, 12, false);
  EXPECT_EQ(rec.moves.size(), 16u);
  EXPECT_LE(rec.length, 16);
  EXPECT_EQ(rec.value, rec.winner == Winner::kI ? 1.0 : -1.0);
}

TEST(SelfplayTest, Deterministic) {
  const auto spec = share(make_hex(5));
  const auto a = selfplay(spec, mc_strategy({.samples = 400, .threads = 1}), mc_strategy({.samples = 400}), 0.5, 77);
  const auto b = selfplay(spec, mc_strategy({.samples = 400, .threads = 3}), mc_strategy({.samples = 400, .threads = 2}),
                          0.5, 77);
  ASSERT_EQ(a.moves.size(), b.moves.size());
  for (std::size_t i = 0; i < a.moves.size(); ++i) EXPECT_EQ(a.moves[i].cell, b.moves[i].cell);
  EXPECT_EQ(a.winner, b.winner);
}

TEST(ReplayTest, CoinMismatchRejected) {
  const auto spec = share(make_hex(3));
  auto rec = selfplay(spec, random_strategy(), random_strategy(), 0.5, 3);
  rec.moves[0].coin = opponent(rec.moves[0].coin);
  EXPECT_THROW(replay_record(spec, rec), IllegalMoveError);
}

}  // namespace
}  // namespace rtsg
