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

// Experiment plumbing shared by the command line tool, the service and the
// acceptance runner: game construction by name, batched self-play, power
// law fits and heatmap output.

#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "rtsg/error.hpp"
#include "rtsg/game.hpp"
#include "rtsg/mc_strategy.hpp"
#include "rtsg/parallel.hpp"
#include "rtsg/percolation.hpp"
#include "rtsg/rng.hpp"
#include "rtsg/tree_analysis.hpp"

namespace rtsg {

struct GameArgs {
  std::string game = "hex";
  int L = 3;      // hex rows, bridgit size, surround rows
  int cols = 0;   // hex cols; 0 means square
  int h = 1;      // tree depth
  int arity = 3;  // switching tree arity
  bool enhanced = false;
  int n = 4;      // team-captains items
  std::uint64_t table_seed = 0;
  bool count_unchanged = false;
};

inline const std::vector<std::string>& game_names() {
  static const std::vector<std::string> names{"hex",    "bridgit",   "surround", "tictactoe", "andor",
                                              "recursive-majority", "switching", "team-captains"};
  return names;
}

inline SpecPtr make_game(const GameArgs& a) {
  if (a.game == "hex") return share(make_hex(a.L, a.cols));
  if (a.game == "bridgit") return share(make_bridgit(a.L));
  if (a.game == "surround") return share(make_surround(a.L, a.cols, a.count_unchanged));
  if (a.game == "tictactoe") return share(make_tictactoe());
  if (a.game == "andor") return share(make_andor(a.h));
  if (a.game == "recursive-majority") return share(make_recursive_majority(a.h));
  if (a.game == "switching") {
    if (a.h < 1) throw SizingError("switching tree needs h >= 1");
    const TreeSpec t = a.enhanced ? enhanced_binary_tree(a.h) : complete_tree(a.arity, a.h);
    return share(make_switching_tree(t.arities));
  }
  if (a.game == "team-captains") {
    if (a.n < 1) throw SizingError("team-captains needs n >= 1");
    return share(make_random_team_captains(a.n, a.table_seed));
  }
  throw UnsupportedGameError("unknown game \"" + a.game + "\"");
}

// ---------------------------------------------------------------------------
// Batched self-play

using StrategyFactory = std::function<Strategy()>;

inline std::uint64_t game_seed(std::uint64_t seed, std::uint64_t game) {
  return CounterRng(seed, Stream::kGameSeed).u64(game);
}

struct SelfplayOptions {
  std::int64_t games = 1;
  std::uint64_t seed = 0;
  double p = 0.5;
  unsigned threads = 1;
  bool stop_early = true;
  const std::atomic<bool>* stop = nullptr;
};

struct SelfplaySummary {
  std::int64_t games = 0;
  bool truncated = false;
  double mean_length = 0.0;
  double stderr_length = 0.0;
  double win_rate_i = 0.0;
  double stderr_win_rate = 0.0;
  double disconnected_game_fraction = 0.0;
  double mean_disconnected_moves = 0.0;
  std::int64_t tosses = 0;
  std::int64_t tosses_won_i = 0;
};

class SummaryAccumulator {
 public:
  void add(const GameRecord& r) {
    ++games_;
    sum_ += r.length;
    sum_sq_ += static_cast<double>(r.length) * r.length;
    wins_ += r.winner == Winner::kI;
    disconnected_games_ += !r.connected_throughout;
    disconnected_moves_ += r.disconnected_move_count;
    for (const auto& m : r.moves) {
      ++tosses_;
      tosses_i_ += m.coin == Side::kI;
    }
  }

  SelfplaySummary summary() const {
    SelfplaySummary s;
    s.games = games_;
    s.tosses = tosses_;
    s.tosses_won_i = tosses_i_;
    if (games_ == 0) return s;
    const double g = static_cast<double>(games_);
    s.mean_length = sum_ / g;
    const double var = games_ > 1 ? (sum_sq_ - g * s.mean_length * s.mean_length) / (g - 1) : 0.0;
    s.stderr_length = std::sqrt(std::max(0.0, var) / g);
    s.win_rate_i = wins_ / g;
    s.stderr_win_rate = std::sqrt(s.win_rate_i * (1 - s.win_rate_i) / g);
    s.disconnected_game_fraction = disconnected_games_ / g;
    s.mean_disconnected_moves = disconnected_moves_ / g;
    return s;
  }

 private:
  std::int64_t games_ = 0;
  double sum_ = 0, sum_sq_ = 0;
  double wins_ = 0, disconnected_games_ = 0, disconnected_moves_ = 0;
  std::int64_t tosses_ = 0, tosses_i_ = 0;
};

// Runs games in blocks across threads and hands records to `sink` in game
// order. Game g uses game_seed(seed, g), so the records do not depend on the
// thread count. Strategies are created per worker.
inline SelfplaySummary run_selfplay(const SpecPtr& spec, const StrategyFactory& make_i, const StrategyFactory& make_ii,
                                    const SelfplayOptions& opt,
                                    const std::function<void(const GameRecord&)>& sink = nullptr) {
  if (opt.games < 1) throw DomainError("game count must be at least 1");
  const unsigned threads = std::max(1u, opt.threads);
  const std::int64_t block = static_cast<std::int64_t>(threads) * 4;
  SummaryAccumulator acc;
  bool truncated = false;
  for (std::int64_t start = 0; start < opt.games; start += block) {
    if (opt.stop && opt.stop->load()) {
      truncated = true;
      break;
    }
    const std::int64_t count = std::min(block, opt.games - start);
    std::vector<GameRecord> records(count);
    parallel_chunks(static_cast<std::size_t>(count), threads, [&](std::size_t, std::size_t begin, std::size_t end) {
      const Strategy si = make_i(), sii = make_ii();
      for (std::size_t k = begin; k < end; ++k) {
        const std::uint64_t g = static_cast<std::uint64_t>(start) + k;
        records[k] = selfplay(spec, si, sii, opt.p, game_seed(opt.seed, g), opt.stop_early);
      }
    });
    for (const auto& r : records) {
      acc.add(r);
      if (sink) sink(r);
    }
  }
  auto s = acc.summary();
  s.truncated = truncated;
  return s;
}

// ---------------------------------------------------------------------------
// Power law fit: log y = a + b log x by least squares.

struct PowerFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  double r_squared = 0.0;
  int points = 0;
};

inline PowerFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw DomainError("fit needs equally many x and y values");
  const int n = static_cast<int>(x.size());
  if (n < 3) throw DomainError("fit needs at least 3 points");
  std::vector<double> lx(n), ly(n);
  for (int i = 0; i < n; ++i) {
    if (!(x[i] > 0 && y[i] > 0)) throw DomainError("fit needs positive values");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  double mx = 0, my = 0;
  for (int i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (int i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (sxx <= 0) throw DomainError("fit is degenerate: all x values are equal");
  PowerFit f;
  f.points = n;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double sse = 0;
  for (int i = 0; i < n; ++i) {
    const double e = ly[i] - f.intercept - f.slope * lx[i];
    sse += e * e;
  }
  f.slope_stderr = std::sqrt(sse / (n - 2) / sxx);
  f.r_squared = syy > 0 ? 1.0 - sse / syy : 1.0;
  return f;
}

// Mean number of cells on the shortest winning crossing of a random
// p-biased filling; a lower bound for the length of any game.
inline McEstimate mean_shortest_crossing(const GameSpec& spec, double p, std::int64_t samples, std::uint64_t seed) {
  if (!spec.board.is_site_crossing()) throw UnsupportedGameError("shortest crossings need a hex board");
  const auto sp = share(spec);
  const GamePosition empty(sp, p);
  Configuration config;
  double sum = 0, sum_sq = 0;
  for (std::int64_t i = 0; i < samples; ++i) {
    fill_completion(empty, seed, static_cast<std::uint64_t>(i), config);
    const auto cr = has_crossing(spec.board, config, true);
    const double len = cr.black_crossing ? *cr.shortest_black_crossing_length : *cr.shortest_white_crossing_length;
    sum += len;
    sum_sq += len * len;
  }
  McEstimate e;
  e.samples = samples;
  e.estimate = sum / samples;
  const double var = samples > 1 ? (sum_sq - samples * e.estimate * e.estimate) / (samples - 1) : 0.0;
  e.standard_error = std::sqrt(std::max(0.0, var) / samples);
  return e;
}

// ---------------------------------------------------------------------------
// Heatmaps

struct Heatmap {
  int rows = 0;
  int cols = 0;
  std::vector<double> values;  // row-major, pivotal count / samples
  std::int64_t samples = 0;
  std::uint64_t seed = 0;

  double at(int r, int c) const { return values[r * cols + c]; }
  std::pair<int, int> argmax() const {
    int best = 0;
    for (int i = 1; i < static_cast<int>(values.size()); ++i) {
      if (values[i] > values[best]) best = i;
    }
    return {best / cols, best % cols};
  }
};

inline Heatmap pivotality_heatmap(const GamePosition& pos, std::int64_t samples, std::uint64_t seed,
                                  unsigned threads = 1) {
  const auto& b = pos.spec().board;
  if (b.kind != BoardKind::kHexLozenge) throw UnsupportedGameError("heatmaps are drawn for hex boards");
  const auto est = estimate_pivotality(pos, samples, seed, threads);
  Heatmap h;
  h.rows = b.rows;
  h.cols = b.cols;
  h.samples = samples;
  h.seed = seed;
  for (int c = 0; c < b.n; ++c) h.values.push_back(est.estimate(c));
  return h;
}

inline std::string format_double(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

inline std::string heatmap_csv(const Heatmap& h) {
  std::string out = "row,col,value\n";
  for (int r = 0; r < h.rows; ++r) {
    for (int c = 0; c < h.cols; ++c) {
      out += std::to_string(r) + "," + std::to_string(c) + "," + format_double(h.at(r, c)) + "\n";
    }
  }
  return out;
}

// Lozenge of pointy-top hexagons. Rows step down and half a cell right.
inline std::string heatmap_svg(const Heatmap& h) {
  const double s = 20.0;  // hexagon radius
  const double w = std::sqrt(3.0) * s;
  const double dy = 1.5 * s;
  double vmax = 0.0;
  for (double v : h.values) vmax = std::max(vmax, v);
  const double width = w * (h.cols + 0.5 * h.rows) + 2 * s;
  const double height = dy * h.rows + 2 * s;
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_double(width, 1) << "\" height=\""
    << format_double(height, 1) << "\">\n";
  for (int r = 0; r < h.rows; ++r) {
    for (int c = 0; c < h.cols; ++c) {
      const double cx = s + w * (c + 0.5 * r) + w / 2;
      const double cy = s + dy * r + s / 2;
      const double t = vmax > 0 ? h.at(r, c) / vmax : 0.0;
      const int shade = static_cast<int>(std::lround(255 * (1.0 - t)));
      o << "<polygon points=\"";
      for (int k = 0; k < 6; ++k) {
        const double a = (60.0 * k - 30.0) * std::numbers::pi / 180.0;
        o << format_double(cx + s * std::cos(a), 2) << "," << format_double(cy + s * std::sin(a), 2) << (k < 5 ? " " : "");
      }
      o << "\" fill=\"rgb(255," << shade << "," << shade << ")\" stroke=\"#444\" stroke-width=\"1\">"
        << "<title>(" << r << "," << c << ") " << format_double(h.at(r, c), 4) << "</title></polygon>\n";
    }
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace rtsg
