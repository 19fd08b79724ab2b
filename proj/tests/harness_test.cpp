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

#include <atomic>
#include <cmath>

#include "gtest/gtest.h"
#include "oracles.hpp"
#include "rtsg/rtsg.hpp"

namespace rtsg {
namespace {

TEST(MakeGameTest, EveryName) {
  for (const auto& name : game_names()) {
    GameArgs a;
    a.game = name;
    a.L = 3;
    a.h = 2;
    const auto spec = make_game(a);
    EXPECT_EQ(spec->game, name);
    EXPECT_GT(spec->n(), 0);
  }
  GameArgs bad;
  bad.game = "go";
  EXPECT_THROW(make_game(bad), UnsupportedGameError);
  bad.game = "hex";
  bad.L = 0;
  EXPECT_THROW(make_game(bad), SizingError);
}

TEST(MakeGameTest, EnhancedSwitching) {
  GameArgs a;
  a.game = "switching";
  a.h = 10;
  a.enhanced = true;
  EXPECT_EQ(make_game(a)->board.arities[0], 3);
}

TEST(FitTest, SyntheticPowers) {
  const std::vector<double> L{5, 7, 9, 11, 13};
  std::vector<double> y15, y2;
  for (double x : L) {
    y15.push_back(3.0 * std::pow(x, 1.5));
    y2.push_back(x * x);
  }
  const auto f = fit_power_law(L, y15);
  EXPECT_NEAR(f.slope, 1.5, 1e-6);
  EXPECT_NEAR(f.slope_stderr, 0.0, 1e-9);
  EXPECT_NEAR(std::exp(f.intercept), 3.0, 1e-9);
  EXPECT_NEAR(fit_power_law(L, y2).slope, 2.0, 1e-9);
  EXPECT_THROW(fit_power_law({1, 2}, {1, 2}), DomainError);
  EXPECT_THROW(fit_power_law({2, 2, 2}, {1, 2, 3}), DomainError);
  EXPECT_THROW(fit_power_law({1, 2, 3}, {1, 0, 3}), DomainError);
}

TEST(SelfplayBatchTest, IndependentOfThreads) {
  const auto spec = share(make_hex(4));
  const StrategyFactory mc = [] { return mc_strategy({.samples = 100}); };
  std::vector<std::string> a, b;
  SelfplayOptions opt{.games = 30, .seed = 5};
  const auto s1 = run_selfplay(spec, mc, mc, opt, [&](const GameRecord& r) { a.push_back(to_json(r).dump()); });
  opt.threads = 3;
  const auto s3 = run_selfplay(spec, mc, mc, opt, [&](const GameRecord& r) { b.push_back(to_json(r).dump()); });
  EXPECT_EQ(a, b);
  EXPECT_EQ(s1.mean_length, s3.mean_length);
  EXPECT_EQ(s1.games, 30);
}

TEST(SelfplayBatchTest, SingleCellSummary) {
  const auto spec = share(make_hex(1));
  const StrategyFactory rnd = [] { return random_strategy(); };
  const auto s = run_selfplay(spec, rnd, rnd, {.games = 100, .seed = 2});
  EXPECT_EQ(s.mean_length, 1.0);
  EXPECT_EQ(s.tosses, 100);
  EXPECT_DOUBLE_EQ(s.win_rate_i, s.tosses_won_i / 100.0);
  EXPECT_EQ(s.disconnected_game_fraction, 0.0);
}

TEST(SelfplayBatchTest, StopFlagTruncates) {
  const auto spec = share(make_hex(3));
  const StrategyFactory rnd = [] { return random_strategy(); };
  std::atomic<bool> stop{false};
  int seen = 0;
  SelfplayOptions opt{.games = 1000, .seed = 1, .threads = 1};
  opt.stop = &stop;
  const auto s = run_selfplay(spec, rnd, rnd, opt, [&](const GameRecord&) {
    if (++seen == 4) stop = true;
  });
  EXPECT_TRUE(s.truncated);
  EXPECT_EQ(s.games, 4);
}

TEST(SelfplayBatchTest, CoinFairness) {
  const auto spec = share(make_hex(5));
  const StrategyFactory rnd = [] { return random_strategy(); };
  const auto s = run_selfplay(spec, rnd, rnd, {.games = 2000, .seed = 8});
  const double f = static_cast<double>(s.tosses_won_i) / s.tosses;
  EXPECT_NEAR(f, 0.5, 3 * std::sqrt(0.25 / s.tosses));
}

TEST(RecordJsonTest, RoundTrip) {
  const auto spec = share(make_hex(5));
  const auto rec = selfplay(spec, mc_strategy({.samples = 50}), random_strategy(), 0.5, 42);
  const auto j = to_json(rec);
  const auto back = record_from_json(Json::parse(j.dump()));
  EXPECT_EQ(to_json(back).dump(), j.dump());
  EXPECT_EQ(replay_record(spec, back).outcome.winner, rec.winner);
  for (const char* key : {"game", "L", "p", "seed", "moves", "winner", "length", "connected_throughout", "disconnected_moves"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
}

TEST(ShortestCrossingTest, AtLeastL) {
  for (int L : {3, 7}) {
    const auto e = mean_shortest_crossing(make_hex(L), 0.5, 400, 1);
    EXPECT_GE(e.estimate, L);
    EXPECT_LE(e.estimate, L * L);
  }
  EXPECT_THROW(mean_shortest_crossing(make_andor(2), 0.5, 10, 1), UnsupportedGameError);
}

TEST(HeatmapTest, SmallBoardArgmaxIsExact) {
  const auto spec = share(make_hex(3));
  const GamePosition empty(spec);
  const auto h = pivotality_heatmap(empty, 100000, 0, 2);
  std::vector<Rational> exact;
  for (int c = 0; c < 9; ++c) exact.push_back(exact_pivotal_probability(empty, c, Rational(1, 2)));
  const auto best = testing::argmax_cells(exact);
  const auto [r, c] = h.argmax();
  EXPECT_NE(std::find(best.begin(), best.end(), r * 3 + c), best.end());
}

TEST(HeatmapTest, RotationSymmetric) {
  const int L = 7;
  const int N = 20000;
  const auto h = pivotality_heatmap(GamePosition(share(make_hex(L))), N, 3);
  for (int r = 0; r < L; ++r) {
    for (int c = 0; c < L; ++c) {
      const double a = h.at(r, c), b = h.at(L - 1 - r, L - 1 - c);
      const double se = std::sqrt((a * (1 - a) + b * (1 - b)) / N);
      EXPECT_NEAR(a, b, 3 * se + 1e-12);
    }
  }
}

TEST(HeatmapTest, CurrentPosition) {
  const auto spec = share(make_hex(2));
  const auto pos = GamePosition(spec).apply_move(0, Side::kI).apply_move(1, Side::kII).apply_move(3, Side::kII);
  const auto h = pivotality_heatmap(pos, 100, 1);
  EXPECT_EQ(h.values, (std::vector<double>{0, 0, 1, 0}));
}

TEST(HeatmapTest, Formats) {
  const auto h = pivotality_heatmap(GamePosition(share(make_hex(3))), 1000, 4);
  const auto csv = heatmap_csv(h);
  EXPECT_EQ(csv.rfind("row,col,value\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 10);
  const auto svg = heatmap_svg(h);
  std::size_t polys = 0;
  for (std::size_t at = svg.find("<polygon"); at != std::string::npos; at = svg.find("<polygon", at + 1)) ++polys;
  EXPECT_EQ(polys, 9u);
  EXPECT_EQ(heatmap_csv(pivotality_heatmap(GamePosition(share(make_hex(3))), 1000, 4)), csv);
  EXPECT_THROW(pivotality_heatmap(GamePosition(share(make_andor(2))), 10, 1), UnsupportedGameError);
}

TEST(ValueDumpTest, Fields) {
  const auto spec = share(make_hex(2));
  ExactSolver<Rational> solver(GamePosition(spec), Rational(1, 2));
  const auto j = value_dump(solver, GamePosition(spec));
  EXPECT_EQ(j["value"]["exact"], "0");
  EXPECT_TRUE(j["optimal_moves"].is_array());
  EXPECT_TRUE(j.contains("position"));
}

}  // namespace
}  // namespace rtsg
