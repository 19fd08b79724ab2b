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

// Acceptance gate. Prints one PASS/FAIL line per criterion and exits nonzero
// if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "oracles.hpp"
#include "rtsg/rtsg.hpp"

namespace {

using namespace rtsg;
using rtsg::testing::biased_mean;

constexpr std::uint64_t kSeed = 20260;
const double kPhi = std::numbers::phi;
const double kPStar = (3.0 - std::sqrt(5.0)) / 2.0;

int failures = 0;

// Runs one criterion; `check` fills `detail` and returns pass/fail.
void criterion(const std::string& name, const std::function<bool(std::ostringstream&)>& check) {
  const auto t0 = std::chrono::steady_clock::now();
  std::ostringstream detail;
  bool ok = false;
  try {
    ok = check(detail);
  } catch (const std::exception& e) {
    detail << "exception: " << e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  failures += !ok;
  std::printf("%s %s (%.1fs) %s\n", ok ? "PASS" : "FAIL", name.c_str(), secs, detail.str().c_str());
  std::fflush(stdout);
}

std::vector<SpecPtr> small_specs() {
  std::vector<SpecPtr> v;
  for (int L = 1; L <= 3; ++L) v.push_back(share(make_hex(L)));
  v.push_back(share(make_tictactoe()));
  v.push_back(share(make_recursive_majority(1)));
  for (int k = 0; k < 10; ++k) v.push_back(share(make_random_team_captains(k + 1, kSeed + k)));
  return v;
}

std::vector<int> exact_pivotal_argmax(const GamePosition& pos, const Rational& p) {
  std::vector<Rational> v;
  for (int c = 0; c < pos.spec().n(); ++c) v.push_back(exact_pivotal_probability(pos, c, p));
  return rtsg::testing::argmax_cells(v);
}

// Cut-wins count of the ternary tree of depth h over all 2^edges openings;
// edges are read in depth-first order.
bool reaches_leaves(int depth, int h, std::uint64_t mask, int& next) {
  if (depth == h) return true;
  bool any = false;
  for (int k = 0; k < 3; ++k) {
    const bool open = mask >> next++ & 1;
    const bool below = reaches_leaves(depth + 1, h, mask, next);
    any = any || (open && below);
  }
  return any;
}

Rational enumerated_cut_probability(int h) {
  const int edges = h == 1 ? 3 : 12;
  std::uint64_t cut = 0;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << edges); ++m) {
    int next = 0;
    cut += !reaches_leaves(0, h, m, next);
  }
  Rational q(static_cast<long>(cut), static_cast<long>(std::uint64_t{1} << edges));
  q.canonicalize();
  return q;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

// Runs the CLI with `args` and an empty output directory; returns stdout
// followed by every file written, in name order.
std::string run_cli(const std::string& args, const std::filesystem::path& dir) {
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const std::string cmd = std::string(RTSG_CLI_PATH) + " --out " + dir.string() + " " + args + " 2>&1";
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("cannot run " + cmd);
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  out += "\nstatus " + std::to_string(status) + "\n";
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir)) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) out += "== " + f.filename().string() + "\n" + slurp(f);
  return out;
}

}  // namespace

int main() {
  criterion("value-equals-mean", [](std::ostringstream& d) {
    int checked = 0;
    for (const auto& spec : small_specs()) {
      const Rational v = exact_value(GamePosition(spec), Rational(1, 2));
      const Rational m = biased_mean(*spec, Rational(1, 2));
      if (v != m) {
        d << spec->game << " n=" << spec->n() << ": " << v << " vs " << m;
        return false;
      }
      ++checked;
    }
    d << checked << " games, exact equality";
    return true;
  });

  criterion("biased-value", [](std::ostringstream& d) {
    int checked = 0;
    for (const auto& spec : small_specs()) {
      for (const Rational& p : {Rational(1, 4), Rational(1, 3), Rational(3, 4)}) {
        const Rational v = exact_value(GamePosition(spec, rtsg::to_double(p)), p);
        const Rational m = biased_mean(*spec, p);
        if (v != m) {
          d << spec->game << " n=" << spec->n() << " p=" << p << ": " << v << " vs " << m;
          return false;
        }
        ++checked;
      }
    }
    d << checked << " (game, p) pairs, exact equality";
    return true;
  });

  criterion("optimal-moves-are-most-pivotal", [](std::ostringstream& d) {
    const std::vector<SpecPtr> specs = {share(make_hex(3)), share(make_recursive_majority(1)), share(make_andor(2)),
                                        share(make_switching_tree({3}))};
    for (const auto& spec : specs) {
      const GamePosition root(spec);
      const auto moves = optimal_moves(root, Rational(1, 2));
      const auto arg = exact_pivotal_argmax(root, Rational(1, 2));
      d << spec->game << " " << moves.cells.size() << "/" << arg.size() << "; ";
      if (moves.cells != arg || !moves.shared) return false;
    }
    return true;
  });

  criterion("final-set-uniform", [](std::ostringstream& d) {
    for (int k = 0; k < 20; ++k) {
      const int n = 3 + k % 6;
      const auto spec = share(make_random_team_captains(n, kSeed + 100 + k));
      const auto dist = final_set_distribution(spec);
      const Rational each(1, 1L << n);
      if (dist.size() != (std::size_t{1} << n)) {
        d << "table " << k << ": " << dist.size() << " final sets";
        return false;
      }
      for (const auto& [set, prob] : dist) {
        if (prob != each) {
          d << "table " << k << ": probability " << prob;
          return false;
        }
      }
    }
    d << "20 tables, n in 3..8";
    return true;
  });

  criterion("pivotal-sites-oracle", [](std::ostringstream& d) {
    std::int64_t configs = 0;
    for (int L = 1; L <= 3; ++L) {
      const auto spec = make_hex(L);
      const int n = spec.n();
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
        const auto colors = rtsg::testing::colors_of_mask(n, m);
        const auto fast = pivotal_sites(spec, colors);
        const auto flip = rtsg::testing::flip_pivotal(spec, colors);
        if (std::set<int>(fast.begin(), fast.end()) != flip || pivotal_sites_oracle(spec, colors) != fast) {
          d << "L=" << L << " mask " << m;
          return false;
        }
        ++configs;
      }
    }
    const auto spec = make_hex(8);
    const CounterRng rng(kSeed, Stream::kConfiguration);
    for (std::uint64_t i = 0; i < 1000; ++i) {
      std::vector<std::int8_t> colors(spec.n());
      for (int c = 0; c < spec.n(); ++c) colors[c] = rng.uniform(i, c) < 0.5 ? 1 : -1;
      const auto fast = pivotal_sites(spec, colors);
      if (std::set<int>(fast.begin(), fast.end()) != rtsg::testing::flip_pivotal(spec, colors) ||
          pivotal_sites_oracle(spec, colors) != fast) {
        d << "L=8 sample " << i;
        return false;
      }
      ++configs;
    }
    d << configs << " configurations";
    return true;
  });

  criterion("self-duality", [](std::ostringstream& d) {
    const auto e = crossing_probability_mc(make_hex(11), 0.5, 100000, kSeed);
    d << "estimate " << e.estimate << " +- " << e.standard_error;
    return std::abs(e.estimate - 0.5) <= 3 * e.standard_error;
  });

  criterion("andor-numbers", [](std::ostringstream& d) {
    const Rational q2 = andor_true_probability(2, Rational(1, 2));
    const double fixed = andor_fixed_points()[1];
    const double stationary = andor_true_probability(2, fixed);
    const double closed = andor_expected_length(2);
    const double exact = expected_game_length_exact(share(make_andor(2)), kPStar);
    const auto sim = simulate_tree_games(TreeGameKind::kAndOr, complete_tree(2, 2), kPStar, 100000, kSeed);
    d << "q2 " << q2 << ", p* " << fixed << ", length " << closed << " exact " << exact << " sim " << sim.mean_length
      << " +- " << sim.stderr_length;
    return q2 == Rational(9, 16) && std::abs(fixed - kPStar) < 1e-9 && std::abs(stationary - fixed) < 1e-9 &&
           std::abs(closed - kPhi * kPhi) < 1e-9 && std::abs(exact - kPhi * kPhi) < 1e-9 &&
           std::abs(sim.mean_length - kPhi * kPhi) <= 3 * sim.stderr_length;
  });

  criterion("tree-structure-invariants", [](std::ostringstream& d) {
    std::int64_t andor_bad = 0, switching_bad = 0;
    for (int h : {2, 4, 6}) {
      const auto ternary = complete_tree(3, h);
      for (std::uint64_t g = 0; g < 10000; ++g) {
        const auto a = simulate_optimal_tree_game(TreeGameKind::kAndOr, complete_tree(2, h), kPStar,
                                                  tree_game_seed(kSeed + h, g));
        andor_bad += andor_locality_violations(h, a);
        const auto s =
            simulate_optimal_tree_game(TreeGameKind::kSwitching, ternary, 0.5, tree_game_seed(kSeed + h, g));
        switching_bad += switching_structure_violations(ternary, s);
      }
    }
    d << "violations: andor " << andor_bad << ", switching " << switching_bad << " (3 x 10^4 games each)";
    return andor_bad == 0 && switching_bad == 0;
  });

  criterion("switching-series", [](std::ostringstream& d) {
    const Rational q1 = switching_cut_probability<Rational>(1), q2 = switching_cut_probability<Rational>(2);
    const Rational e1 = enumerated_cut_probability(1), e2 = enumerated_cut_probability(2);
    const auto s = switching_series(200);
    const double q20 = s.q[20];
    const double limit = std::sqrt(5.0) - 2.0;
    const double win = s.win_prob.back();
    d << "q1 " << q1 << " (enum " << e1 << "), q2 " << q2 << " (enum " << e2 << "), |q20 - limit| "
      << std::abs(q20 - limit) << ", win(200) " << win;
    return q1 == Rational(1, 8) && q2 == Rational(729, 4096) && e1 == q1 && e2 == q2 &&
           std::abs(s.q[1] - 0.125) < 1e-15 && std::abs(q20 - limit) < 1e-6 &&
           std::abs(win - (3.0 - std::sqrt(5.0))) < 1e-6;
  });

  criterion("length-growth", [](std::ostringstream& d) {
    std::vector<double> xs, ys, xe, ye;
    for (int h : {4, 8, 16}) {
      const auto s = simulate_tree_games(TreeGameKind::kSwitching, complete_tree(3, h), 0.5, 2000, kSeed + h);
      xs.push_back(h);
      ys.push_back(s.mean_length);
    }
    for (int h : {8, 16, 32}) {
      const auto s = simulate_tree_games(TreeGameKind::kSwitching, enhanced_binary_tree(h), 0.5, 2000, kSeed + h);
      xe.push_back(h);
      ye.push_back(s.mean_length);
    }
    const auto ft = fit_power_law(xs, ys), fe = fit_power_law(xe, ye);
    d << "ternary slope " << ft.slope << ", enhanced slope " << fe.slope;
    return std::abs(ft.slope - 1.0) <= 0.5 && std::abs(fe.slope - 2.0) <= 0.6;
  });

  criterion("influence-bounds", [](std::ostringstream& d) {
    bool ok = true;
    for (int h : {2, 4}) {
      const double target = std::pow((std::sqrt(5.0) - 1.0) / 2.0, h);
      const double closed = andor_leaf_influence(h, kPStar);
      const auto spec = make_andor(h);
      const auto infl = influences_exact(spec, kPStar);
      double worst = std::abs(closed - target);
      for (double v : infl) worst = std::max(worst, std::abs(v - target));
      const double var = variance_exact(spec, kPStar);
      const double osss = osss_lower_bound(infl, var, kPStar);
      const double os = os_lower_bound(infl);
      const double length = h == 2 ? expected_game_length_exact(share(spec), kPStar)
                                   : structure_expected_length(AndOrSimulator(h), kPStar);
      d << "h=" << h << ": influence err " << worst << ", OSSS " << osss << ", OS " << os << ", length " << length
        << "; ";
      ok = ok && worst < 1e-12 && std::abs(osss - std::pow(kPhi, h)) < 1e-9 && std::abs(osss - length) < 1e-9 &&
           std::abs(os - std::pow(std::sqrt(5.0) - 1.0, 2 * h)) < 1e-9 && os <= length;
    }
    const auto maj = make_recursive_majority(1);
    const auto infl = influences_exact(maj, 0.5);
    const double bound = osss_lower_bound(infl, variance_exact(maj, 0.5), 0.5);
    const double length = expected_game_length_exact(share(maj), 0.5);
    d << "majority bound " << bound << " length " << length;
    return ok && std::abs(bound - 2.0) < 1e-12 && std::abs(length - 2.5) < 1e-12;
  });

  criterion("hex-length-scaling", [](std::ostringstream& d) {
    std::vector<double> xs, ys;
    const StrategyFactory mc = [] { return mc_strategy({.samples = 1000}); };
    for (int L : {5, 7, 9, 11, 13}) {
      SelfplayOptions opt;
      opt.games = 200;
      opt.seed = kSeed + L;
      const auto s = run_selfplay(share(make_hex(L)), mc, mc, opt);
      xs.push_back(L);
      ys.push_back(s.mean_length);
      d << "L" << L << " " << s.mean_length << "; ";
    }
    const auto fit = fit_power_law(xs, ys);
    const auto shortest = mean_shortest_crossing(make_hex(13), 0.5, 10000, kSeed);
    d << "exponent " << fit.slope << ", L13 shortest crossing " << shortest.estimate;
    return fit.slope >= 1.2 && fit.slope <= 1.9 && ys.back() > shortest.estimate;
  });

  criterion("heatmap", [](std::ostringstream& d) {
    const GamePosition small(share(make_hex(3)));
    const auto h3 = pivotality_heatmap(small, 100000, kSeed);
    const auto [r3, c3] = h3.argmax();
    const auto exact = exact_pivotal_argmax(small, Rational(1, 2));
    const bool small_ok = std::find(exact.begin(), exact.end(), r3 * 3 + c3) != exact.end();
    const auto h11 = pivotality_heatmap(GamePosition(share(make_hex(11))), 100000, kSeed);
    const auto [r, c] = h11.argmax();
    d << "L3 argmax (" << r3 << "," << c3 << "), L11 argmax (" << r << "," << c << ")";
    return small_ok && std::abs(r - 5) <= 1 && std::abs(c - 5) <= 1;
  });

  criterion("determinism", [](std::ostringstream& d) {
    const std::vector<std::string> commands = {
        "--seed 7 --json solve --game hex --L 3 --dump",
        "--seed 7 --json solve --game andor --h 2 --p 0.381966",
        "--seed 7 selfplay --game hex --L 5 --games 20 --samples 500",
        "--seed 7 selfplay --game bridgit --L 3 --games 20 --samples 500",
        "--seed 7 scaling --sizes 5,7,9 --games 10 --samples 300",
        "--seed 7 heatmap --L 3 --samples 100000",
        "--seed 7 heatmap --L 11 --samples 20000",
        "--seed 7 tree --kind andor --h 6 --games 2000",
        "--seed 7 tree --kind switching --h 8 --games 2000",
        "--seed 7 --json influence --game andor --h 4 --p 0.381966",
        "--seed 7 --json influence --game hex --L 5 --method mc --samples 20000",
    };
    const auto dir = std::filesystem::temp_directory_path() / "rtsg_acceptance_determinism";
    for (const auto& cmd : commands) {
      const std::string a = run_cli(cmd, dir), b = run_cli(cmd, dir);
      if (a != b || a.find("status 0") == std::string::npos) {
        d << "differs or failed: " << cmd;
        std::filesystem::remove_all(dir);
        return false;
      }
    }
    // Library runs do not depend on the thread count either.
    const auto one = crossing_probability_mc(make_hex(11), 0.5, 20000, kSeed, 1);
    const auto four = crossing_probability_mc(make_hex(11), 0.5, 20000, kSeed, 4);
    std::filesystem::remove_all(dir);
    d << commands.size() << " commands byte-identical on repeat";
    return one.estimate == four.estimate;
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
