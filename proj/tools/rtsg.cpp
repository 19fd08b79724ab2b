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

// rtsg: command line front end.
//
//   rtsg [--seed S] [--threads T] [--out DIR] [--json] VERB [options]
//
// Verbs: solve, selfplay, scaling, heatmap, tree, influence, serve, replay.
// Exit codes: 0 success, 2 capacity exceeded, 3 bad arguments, 1 other.

#include <atomic>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rtsg/rtsg.hpp"
#include "rtsg/service.hpp"

namespace {

using rtsg::Json;

std::atomic<bool> g_interrupted{false};

extern "C" void on_sigint(int) { g_interrupted.store(true); }

struct Globals {
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string out;
  bool json = false;
  std::string invocation;
};

struct PArg {
  std::string text = "1/2";
  rtsg::Rational exact() const { return rtsg::parse_rational(text); }
  double value() const { return rtsg::to_double(exact()); }
};

void add_game_options(CLI::App* cmd, rtsg::GameArgs& g) {
  cmd->add_option("--game", g.game, "hex, bridgit, surround, tictactoe, andor, recursive-majority, switching, team-captains")
      ->capture_default_str();
  cmd->add_option("--L", g.L, "board size")->capture_default_str();
  cmd->add_option("--cols", g.cols, "hex columns (0: square)");
  cmd->add_option("--h", g.h, "tree depth")->capture_default_str();
  cmd->add_option("--arity", g.arity, "switching tree arity")->capture_default_str();
  cmd->add_flag("--enhanced", g.enhanced, "enhanced binary switching tree");
  cmd->add_option("--n", g.n, "team-captains item count")->capture_default_str();
  cmd->add_option("--table-seed", g.table_seed, "team-captains table seed");
  cmd->add_flag("--count-unchanged", g.count_unchanged, "surround: also count cells already of the surrounding colour");
}

Json game_json(const rtsg::GameArgs& g) {
  Json j{{"game", g.game}};
  if (g.game == "hex" || g.game == "bridgit" || g.game == "surround") {
    j["L"] = g.L;
    if (g.cols) j["cols"] = g.cols;
  }
  if (g.game == "andor" || g.game == "recursive-majority" || g.game == "switching") j["h"] = g.h;
  if (g.game == "switching") {
    j["arity"] = g.arity;
    j["enhanced"] = g.enhanced;
  }
  if (g.game == "team-captains") {
    j["n"] = g.n;
    j["table_seed"] = g.table_seed;
  }
  return j;
}

std::filesystem::path out_path(const Globals& G, const std::string& name) {
  std::filesystem::create_directories(G.out);
  return std::filesystem::path(G.out) / name;
}

void write_file(const Globals& G, const std::string& name, const std::string& content) {
  std::ofstream f(out_path(G, name), std::ios::binary);
  f << content;
}

Json report_header(const Globals& G, const char* verb) {
  Json j;
  j["tool"] = "rtsg";
  j["version"] = RTSG_VERSION;
  j["invocation"] = G.invocation;
  j["verb"] = verb;
  j["seed"] = G.seed;
  return j;
}

void emit(const Globals& G, const Json& report, const std::string& text) {
  if (G.json) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << text;
  }
}

// ---------------------------------------------------------------------------
// solve

struct SolveArgs {
  rtsg::GameArgs game;
  PArg p;
  int limit = 13;
  bool dump = false;
};

void cmd_solve(const Globals& G, const SolveArgs& a) {
  const auto spec = rtsg::make_game(a.game);
  const rtsg::Rational p = a.p.exact();
  const rtsg::GamePosition root(spec, rtsg::to_double(p));
  rtsg::ExactSolver<rtsg::Rational> solver(root, p, rtsg::SolverLimits{a.limit});
  const rtsg::Rational value = solver.value();
  const auto moves = solver.optimal_moves(root);
  const rtsg::Rational mean = rtsg::mean_payoff(root, p);
  const bool check = mean == value;

  Json r = report_header(G, "solve");
  r["config"] = game_json(a.game);
  r["config"]["p"] = a.p.text;
  r["n"] = spec->n();
  r["value"] = rtsg::value_json(value);
  Json cells = Json::array();
  for (int c : moves.cells) cells.push_back(rtsg::cell_json(*spec, c));
  r["optimal_first_moves"] = cells;
  r["shared"] = moves.shared;
  std::ostringstream t;
  t << "game " << spec->game << ", " << spec->n() << " items, p = " << a.p.text << "\n";
  t << "value " << value.get_str() << " (" << rtsg::format_double(rtsg::to_double(value)) << ")\n";
  t << "optimal first moves " << cells.dump() << (moves.shared ? " (shared by both players)" : "") << "\n";
  if (spec->monotone && spec->win_or_lose) {
    const rtsg::Rational len = solver.expected_length();
    r["expected_length"] = rtsg::value_json(len);
    t << "expected length " << rtsg::format_double(rtsg::to_double(len)) << " (" << len.get_str() << ")\n";
  }
  r["mean_of_f"] = rtsg::value_json(mean);
  r["mean_check"] = check ? "PASS" : "FAIL";
  t << "mean of f over biased subsets " << mean.get_str() << ": check " << (check ? "PASS" : "FAIL") << "\n";
  if (a.dump && !G.out.empty()) {
    std::ofstream f(out_path(G, "values.jsonl"));
    f << rtsg::value_dump(solver, root).dump() << "\n";
    for (int c : root.legal_moves()) {
      for (rtsg::Side s : {rtsg::Side::kI, rtsg::Side::kII}) {
        f << rtsg::value_dump(solver, root.apply_move(c, s)).dump() << "\n";
      }
    }
  }
  emit(G, r, t.str());
}

// ---------------------------------------------------------------------------
// selfplay

struct StrategyArgs {
  std::string strategy_i = "mc";
  std::string strategy_ii = "mc";
  std::int64_t samples = 0;
  double epsilon = 0.1;
  double constant = rtsg::kSampleBoundConstant;
  std::int64_t sample_cap = 20000;
};

std::int64_t resolve_samples(const StrategyArgs& s, int L) {
  if (s.samples > 0) return s.samples;
  return std::min(s.sample_cap, rtsg::sample_size_for(L, s.epsilon, s.constant));
}

rtsg::StrategyFactory factory(const std::string& name, std::int64_t samples) {
  if (name == "mc") {
    rtsg::StrategyConfig c;
    c.samples = samples;
    return [c] { return rtsg::mc_strategy(c); };
  }
  if (name == "exact") return [] { return rtsg::exact_strategy(); };
  if (name == "random") return [] { return rtsg::random_strategy(); };
  throw rtsg::DomainError("strategy must be mc, exact or random");
}

int board_scale(const rtsg::GameArgs& g) { return g.game == "hex" || g.game == "bridgit" || g.game == "surround" ? g.L : g.h; }

struct SelfplayArgs {
  rtsg::GameArgs game;
  PArg p;
  StrategyArgs strategy;
  std::int64_t games = 100;
  bool full = false;
};

Json summary_json(const rtsg::SelfplaySummary& s) {
  return {{"games", s.games},
          {"truncated", s.truncated},
          {"mean_length", s.mean_length},
          {"stderr_length", s.stderr_length},
          {"win_rate_I", s.win_rate_i},
          {"stderr_win_rate", s.stderr_win_rate},
          {"disconnected_game_fraction", s.disconnected_game_fraction},
          {"mean_disconnected_moves", s.mean_disconnected_moves},
          {"tosses", s.tosses},
          {"tosses_won_I", s.tosses_won_i}};
}

void cmd_selfplay(const Globals& G, const SelfplayArgs& a) {
  const auto spec = rtsg::make_game(a.game);
  const std::int64_t samples = resolve_samples(a.strategy, board_scale(a.game));
  rtsg::SelfplayOptions opt;
  opt.games = a.games;
  opt.seed = G.seed;
  opt.p = a.p.value();
  opt.threads = G.threads;
  opt.stop_early = !a.full;
  opt.stop = &g_interrupted;
  std::ofstream records;
  if (!G.out.empty()) records.open(out_path(G, "records.jsonl"), std::ios::binary);
  const auto summary = rtsg::run_selfplay(spec, factory(a.strategy.strategy_i, samples),
                                          factory(a.strategy.strategy_ii, samples), opt,
                                          [&](const rtsg::GameRecord& r) {
                                            if (records.is_open()) records << rtsg::to_json(r).dump() << "\n";
                                          });
  if (records.is_open() && summary.truncated) records << Json{{"truncated", true}, {"games", summary.games}}.dump() << "\n";

  Json r = report_header(G, "selfplay");
  r["config"] = game_json(a.game);
  r["config"]["p"] = a.p.text;
  r["config"]["strategy_I"] = a.strategy.strategy_i;
  r["config"]["strategy_II"] = a.strategy.strategy_ii;
  r["config"]["samples"] = samples;
  r["config"]["games"] = a.games;
  r["summary"] = summary_json(summary);
  std::ostringstream t;
  t << "game " << spec->game << ", " << summary.games << " games" << (summary.truncated ? " (interrupted)" : "")
    << ", " << samples << " samples per move\n";
  t << "mean length " << rtsg::format_double(summary.mean_length, 4) << " +- "
    << rtsg::format_double(summary.stderr_length, 4) << "\n";
  t << "player I win rate " << rtsg::format_double(summary.win_rate_i, 4) << " +- "
    << rtsg::format_double(summary.stderr_win_rate, 4) << "\n";
  t << "games with a disconnected move " << rtsg::format_double(summary.disconnected_game_fraction, 4) << "\n";
  emit(G, r, t.str());
}

// ---------------------------------------------------------------------------
// scaling

struct ScalingArgs {
  std::vector<int> sizes{5, 7, 9, 11, 13};
  std::vector<double> lengths;
  StrategyArgs strategy;
  std::int64_t games = 20;
  std::int64_t shortest_samples = 2000;
};

void cmd_scaling(const Globals& G, const ScalingArgs& a) {
  Json r = report_header(G, "scaling");
  std::vector<double> xs, ys;
  std::ostringstream csv, t;
  csv << "L,samples,games,mean_length,stderr_length,win_rate_I,disconnected_game_fraction,mean_shortest_crossing\n";
  Json rows = Json::array();
  if (!a.lengths.empty()) {
    if (a.lengths.size() != a.sizes.size()) throw rtsg::DomainError("--lengths needs one value per size");
    for (std::size_t i = 0; i < a.sizes.size(); ++i) {
      xs.push_back(a.sizes[i]);
      ys.push_back(a.lengths[i]);
    }
  } else {
    for (int L : a.sizes) {
      if (g_interrupted.load()) break;
      const auto spec = rtsg::share(rtsg::make_hex(L));
      const std::int64_t samples = resolve_samples(a.strategy, L);
      rtsg::SelfplayOptions opt;
      opt.games = a.games;
      opt.seed = rtsg::derive_seed(G.seed, static_cast<std::uint64_t>(L));
      opt.threads = G.threads;
      opt.stop = &g_interrupted;
      const auto s = rtsg::run_selfplay(spec, factory(a.strategy.strategy_i, samples),
                                        factory(a.strategy.strategy_ii, samples), opt);
      const auto sc = rtsg::mean_shortest_crossing(*spec, 0.5, a.shortest_samples, opt.seed);
      xs.push_back(L);
      ys.push_back(s.mean_length);
      csv << L << "," << samples << "," << s.games << "," << rtsg::format_double(s.mean_length) << ","
          << rtsg::format_double(s.stderr_length) << "," << rtsg::format_double(s.win_rate_i) << ","
          << rtsg::format_double(s.disconnected_game_fraction) << "," << rtsg::format_double(sc.estimate) << "\n";
      Json row = summary_json(s);
      row["L"] = L;
      row["samples"] = samples;
      row["mean_shortest_crossing"] = sc.estimate;
      rows.push_back(row);
      t << "L " << L << ": mean length " << rtsg::format_double(s.mean_length, 3) << " +- "
        << rtsg::format_double(s.stderr_length, 3) << ", shortest crossing " << rtsg::format_double(sc.estimate, 3)
        << ", disconnected games " << rtsg::format_double(s.disconnected_game_fraction, 3) << "\n";
    }
  }
  r["rows"] = rows;
  const auto fit = rtsg::fit_power_law(xs, ys);
  r["fit"] = {{"slope", fit.slope}, {"slope_stderr", fit.slope_stderr}, {"intercept", fit.intercept},
              {"r_squared", fit.r_squared}, {"points", fit.points}};
  t << "fitted exponent " << rtsg::format_double(fit.slope, 4) << " +- " << rtsg::format_double(fit.slope_stderr, 4)
    << " (r^2 " << rtsg::format_double(fit.r_squared, 4) << ")\n";
  if (!G.out.empty()) write_file(G, "scaling.csv", csv.str());
  emit(G, r, t.str());
}

// ---------------------------------------------------------------------------
// heatmap

struct HeatmapArgs {
  int L = 11;
  int cols = 0;
  PArg p;
  std::int64_t samples = 100000;
};

void cmd_heatmap(const Globals& G, const HeatmapArgs& a) {
  const auto spec = rtsg::share(rtsg::make_hex(a.L, a.cols));
  const auto h = rtsg::pivotality_heatmap(rtsg::GamePosition(spec, a.p.value()), a.samples, G.seed, G.threads);
  const auto [ar, ac] = h.argmax();
  Json r = report_header(G, "heatmap");
  r["config"] = {{"L", h.rows}, {"cols", h.cols}, {"p", a.p.text}, {"samples", a.samples}};
  r["argmax"] = {ar, ac};
  r["values"] = h.values;
  const std::string csv = rtsg::heatmap_csv(h);
  if (!G.out.empty()) {
    write_file(G, "heatmap.csv", csv);
    write_file(G, "heatmap.svg", rtsg::heatmap_svg(h));
  }
  std::ostringstream t;
  t << csv << "argmax (" << ar << "," << ac << ")\n";
  emit(G, r, t.str());
}

// ---------------------------------------------------------------------------
// tree

struct TreeArgs {
  std::string kind = "switching";
  int h = 20;
  int arity = 3;
  bool enhanced = false;
  std::int64_t games = 10000;
  PArg p{"0"};
};

void cmd_tree(const Globals& G, const TreeArgs& a) {
  Json r = report_header(G, "tree");
  std::ostringstream t, csv;
  if (a.kind == "andor") {
    const double p = a.p.text == "0" ? rtsg::kAndOrFixedPoint : a.p.value();
    csv << "h,q0,expected_length,simulated_mean,simulated_stderr\n";
    Json rows = Json::array();
    for (int h = 0; h <= a.h; h += 2) {
      const auto s = rtsg::simulate_tree_games(rtsg::TreeGameKind::kAndOr, rtsg::complete_tree(2, h), p, a.games,
                                               rtsg::derive_seed(G.seed, h), G.threads);
      const double q0 = rtsg::andor_true_probability(h, p);
      const double len = rtsg::andor_expected_length(h);
      csv << h << "," << rtsg::format_double(q0, 9) << "," << rtsg::format_double(len, 9) << ","
          << rtsg::format_double(s.mean_length, 6) << "," << rtsg::format_double(s.stderr_length, 6) << "\n";
      rows.push_back({{"h", h}, {"q0", q0}, {"expected_length", len}, {"simulated_mean", s.mean_length},
                      {"simulated_stderr", s.stderr_length}});
    }
    Json fp = Json::array();
    for (double x : rtsg::andor_fixed_points()) fp.push_back(x);
    r["fixed_points"] = fp;
    r["p"] = p;
    r["rows"] = rows;
    t << "fixed points";
    for (double x : rtsg::andor_fixed_points()) t << " " << rtsg::format_double(x, 6);
    t << "\n" << csv.str();
  } else if (a.kind == "switching") {
    const auto series = rtsg::switching_series(a.h);
    csv << "h,q,mu,nu,win_prob,oracle_win_prob,simulated_mean,simulated_stderr\n";
    Json rows = Json::array();
    for (int h = 0; h <= a.h; ++h) {
      const double oracle = rtsg::switching_win_probability(rtsg::complete_tree(3, h));
      double mean = 0, se = 0;
      if (h >= 1 && a.games > 0 && h <= 16) {
        const auto s = rtsg::simulate_tree_games(rtsg::TreeGameKind::kSwitching, rtsg::complete_tree(3, h), 0.5,
                                                 a.games, rtsg::derive_seed(G.seed, h), G.threads);
        mean = s.mean_length;
        se = s.stderr_length;
      }
      csv << h << "," << rtsg::format_double(series.q[h], 9) << "," << rtsg::format_double(series.mu[h], 9) << ","
          << rtsg::format_double(series.nu[h], 9) << "," << rtsg::format_double(series.win_prob[h], 9) << ","
          << rtsg::format_double(oracle, 9) << "," << rtsg::format_double(mean, 6) << ","
          << rtsg::format_double(se, 6) << "\n";
      rows.push_back({{"h", h}, {"q", series.q[h]}, {"mu", series.mu[h]}, {"nu", series.nu[h]},
                      {"win_prob", series.win_prob[h]}, {"oracle_win_prob", oracle}, {"simulated_mean", mean}});
    }
    r["rows"] = rows;
    r["q_limit"] = std::sqrt(5.0) - 2.0;
    r["explored_given_short_h1"] = rtsg::switching_explored_given_short(rtsg::complete_tree(3, 1));
    t << csv.str() << "q limit " << rtsg::format_double(std::sqrt(5.0) - 2.0, 9) << "\n";
  } else if (a.kind == "enhanced") {
    csv << "h,root_degree,win_prob,simulated_mean,simulated_stderr,simulated_win_rate\n";
    Json rows = Json::array();
    for (int h = 2; h <= a.h; h *= 2) {
      const auto tree = rtsg::enhanced_binary_tree(h);
      const auto s = rtsg::simulate_tree_games(rtsg::TreeGameKind::kSwitching, tree, 0.5, a.games,
                                               rtsg::derive_seed(G.seed, h), G.threads);
      const double w = rtsg::switching_win_probability(tree);
      csv << h << "," << tree.arities[0] << "," << rtsg::format_double(w, 9) << ","
          << rtsg::format_double(s.mean_length, 6) << "," << rtsg::format_double(s.stderr_length, 6) << ","
          << rtsg::format_double(s.win_rate_i, 6) << "\n";
      rows.push_back({{"h", h}, {"root_degree", tree.arities[0]}, {"win_prob", w}, {"simulated_mean", s.mean_length}});
    }
    r["rows"] = rows;
    t << csv.str();
  } else {
    throw rtsg::DomainError("--kind must be andor, switching or enhanced");
  }
  if (!G.out.empty()) write_file(G, "tree_" + a.kind + ".csv", csv.str());
  emit(G, r, t.str());
}

// ---------------------------------------------------------------------------
// influence

struct InfluenceArgs {
  rtsg::GameArgs game;
  PArg p;
  std::string method = "exact";
  std::int64_t samples = 100000;
};

void cmd_influence(const Globals& G, const InfluenceArgs& a) {
  const auto spec = rtsg::make_game(a.game);
  const double p = a.p.value();
  rtsg::InfluenceVector iv;
  if (a.method == "exact") {
    iv = rtsg::influence_exact(*spec, p);
  } else if (a.method == "tree") {
    iv = rtsg::influence_tree(*spec, p);
  } else if (a.method == "mc") {
    iv = rtsg::influence_mc(spec, p, a.samples, G.seed, G.threads);
  } else {
    throw rtsg::DomainError("--method must be exact, tree or mc");
  }
  std::ostringstream csv;
  csv << "item,influence,stderr\n";
  for (std::size_t i = 0; i < iv.values.size(); ++i) {
    csv << i << "," << rtsg::format_double(iv.values[i], 9) << "," << rtsg::format_double(iv.stderrs[i], 9) << "\n";
  }
  Json r = report_header(G, "influence");
  r["config"] = game_json(a.game);
  r["config"]["p"] = a.p.text;
  r["method"] = rtsg::to_string(iv.method);
  r["influences"] = iv.values;
  r["sum"] = iv.sum();
  r["os_bound"] = rtsg::os_lower_bound(iv.values);
  std::ostringstream t;
  t << csv.str() << "sum of influences " << rtsg::format_double(iv.sum(), 6) << "\n";
  t << "sum bound " << rtsg::format_double(rtsg::os_lower_bound(iv.values), 6) << "\n";
  if (spec->n() <= 25 && p > 0 && p < 1) {
    const double var = rtsg::variance_exact(*spec, p);
    const double b = rtsg::osss_lower_bound(iv.values, var, p);
    r["variance"] = var;
    r["osss_bound"] = b;
    t << "variance " << rtsg::format_double(var, 6) << ", variance bound " << rtsg::format_double(b, 6) << "\n";
  }
  if (!G.out.empty()) write_file(G, "influence.csv", csv.str());
  emit(G, r, t.str());
}

// ---------------------------------------------------------------------------
// serve

struct ServeArgs {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string static_dir;
  std::string log;
  std::int64_t max_samples = rtsg::kMaxEngineSamples;
};

httplib::Server* g_server = nullptr;

extern "C" void on_sigint_server(int) {
  if (g_server) g_server->stop();
}

void cmd_serve(const Globals& G, const ServeArgs& a) {
  rtsg::ServiceOptions opt;
  opt.log_path = a.log;
  opt.max_engine_samples = a.max_samples;
  opt.threads = G.threads;
  rtsg::GameService service(opt);
  httplib::Server server;
  rtsg::register_routes(server, service, a.static_dir);
  g_server = &server;
  std::signal(SIGINT, on_sigint_server);
  std::cerr << "listening on http://" << a.host << ":" << a.port << "\n";
  if (!server.listen(a.host, a.port)) throw rtsg::DomainError("could not listen on port " + std::to_string(a.port));
}

// ---------------------------------------------------------------------------
// replay

struct ReplayArgs {
  std::string records;
  rtsg::GameArgs game;
};

void cmd_replay(const Globals& G, const ReplayArgs& a) {
  std::ifstream in(a.records);
  if (!in) throw rtsg::DomainError("cannot read " + a.records);
  std::string line;
  std::int64_t ok = 0, bad = 0;
  bool truncated = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const Json j = Json::parse(line);
    if (j.contains("truncated")) {
      truncated = true;
      continue;
    }
    const auto rec = rtsg::record_from_json(j);
    rtsg::GameArgs g = a.game;
    g.game = rec.game;
    g.L = rec.rows;
    g.cols = rec.cols == rec.rows ? 0 : rec.cols;
    const auto res = rtsg::replay_record(rtsg::make_game(g), rec);
    (res.outcome.winner == rec.winner ? ok : bad)++;
  }
  Json r = report_header(G, "replay");
  r["records"] = ok + bad;
  r["matching"] = ok;
  r["mismatching"] = bad;
  r["truncated"] = truncated;
  std::ostringstream t;
  t << ok + bad << " records, " << ok << " reproduce the recorded winner" << (truncated ? " (file is truncated)" : "")
    << "\n";
  emit(G, r, t.str());
  if (bad) throw rtsg::Error("replay-mismatch", std::to_string(bad) + " records do not replay");
}

int exit_code_for(const std::string& code) {
  if (code == "capacity") return 2;
  if (code == "bad-args" || code == "bad-size" || code == "unsupported-game" || code == "illegal-move") return 3;
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  Globals G;
  for (int i = 0; i < argc; ++i) G.invocation += (i ? " " : "") + std::string(i ? argv[i] : "rtsg");

  CLI::App app{"Random-turn selection games: exact solver, sampling strategy and experiments"};
  app.set_help_flag("--help", "print this help");  // -h would clash with --h
  app.require_subcommand(1);
  app.add_option("--seed", G.seed, "base seed")->capture_default_str();
  app.add_option("--threads", G.threads, "worker threads")->capture_default_str();
  app.add_option("--out", G.out, "directory for output files");
  app.add_flag("--json", G.json, "print the report as JSON");

  SolveArgs solve;
  auto* c_solve = app.add_subcommand("solve", "exact value, optimal moves and expected length");
  add_game_options(c_solve, solve.game);
  c_solve->add_option("--p", solve.p.text, "coin bias, e.g. 1/2 or 0.381966")->capture_default_str();
  c_solve->add_option("--limit", solve.limit, "largest number of undecided cells")->capture_default_str();
  c_solve->add_flag("--dump", solve.dump, "write root and child value dumps to --out");

  auto add_strategy = [](CLI::App* cmd, StrategyArgs& s) {
    cmd->add_option("--strategy-i", s.strategy_i, "mc, exact or random")->capture_default_str();
    cmd->add_option("--strategy-ii", s.strategy_ii, "mc, exact or random")->capture_default_str();
    cmd->add_option("--samples", s.samples, "samples per move (default: from --epsilon)");
    cmd->add_option("--epsilon", s.epsilon, "accuracy for the sample bound")->capture_default_str();
    cmd->add_option("--sample-constant", s.constant, "constant in the sample bound")->capture_default_str();
    cmd->add_option("--sample-cap", s.sample_cap, "upper limit on derived sample counts")->capture_default_str();
  };

  SelfplayArgs sp;
  auto* c_sp = app.add_subcommand("selfplay", "seeded self-play games");
  add_game_options(c_sp, sp.game);
  c_sp->add_option("--p", sp.p.text, "coin bias")->capture_default_str();
  c_sp->add_option("--games", sp.games, "number of games")->capture_default_str();
  c_sp->add_flag("--full", sp.full, "fill the whole board instead of stopping when decided");
  add_strategy(c_sp, sp.strategy);

  ScalingArgs sc;
  auto* c_sc = app.add_subcommand("scaling", "game length against board size");
  c_sc->add_option("--sizes", sc.sizes, "board sizes")->delimiter(',');
  c_sc->add_option("--lengths", sc.lengths, "fit these lengths instead of playing")->delimiter(',');
  c_sc->add_option("--games", sc.games, "games per size")->capture_default_str();
  c_sc->add_option("--shortest-samples", sc.shortest_samples, "fillings for the shortest crossing mean");
  add_strategy(c_sc, sc.strategy);

  HeatmapArgs hm;
  auto* c_hm = app.add_subcommand("heatmap", "first-move pivotality on a hex board");
  c_hm->add_option("--L", hm.L, "board size")->capture_default_str();
  c_hm->add_option("--cols", hm.cols, "columns (0: square)");
  c_hm->add_option("--p", hm.p.text, "bias")->capture_default_str();
  c_hm->add_option("--samples", hm.samples, "samples")->capture_default_str();

  TreeArgs tr;
  auto* c_tr = app.add_subcommand("tree", "tree recursions and simulations");
  c_tr->add_option("--kind", tr.kind, "andor, switching or enhanced")->capture_default_str();
  c_tr->add_option("--h", tr.h, "largest depth")->capture_default_str();
  c_tr->add_option("--games", tr.games, "simulated games per depth")->capture_default_str();
  c_tr->add_option("--p", tr.p.text, "andor leaf bias (default: the fixed point)");

  InfluenceArgs inf;
  auto* c_inf = app.add_subcommand("influence", "influences and lower bounds");
  add_game_options(c_inf, inf.game);
  c_inf->add_option("--p", inf.p.text, "bias")->capture_default_str();
  c_inf->add_option("--method", inf.method, "exact, tree or mc")->capture_default_str();
  c_inf->add_option("--samples", inf.samples, "samples for mc")->capture_default_str();

  ServeArgs sv;
  auto* c_sv = app.add_subcommand("serve", "HTTP game service");
  c_sv->add_option("--host", sv.host)->capture_default_str();
  c_sv->add_option("--port", sv.port)->capture_default_str();
  c_sv->add_option("--static", sv.static_dir, "directory served at /");
  c_sv->add_option("--log", sv.log, "JSON lines file for finished games");
  c_sv->add_option("--max-samples", sv.max_samples, "engine sample cap")->capture_default_str();

  ReplayArgs rp;
  auto* c_rp = app.add_subcommand("replay", "check that records reproduce their winners");
  c_rp->add_option("records", rp.records, "JSON lines file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }

  std::signal(SIGINT, on_sigint);
  try {
    if (*c_solve) cmd_solve(G, solve);
    if (*c_sp) cmd_selfplay(G, sp);
    if (*c_sc) cmd_scaling(G, sc);
    if (*c_hm) cmd_heatmap(G, hm);
    if (*c_tr) cmd_tree(G, tr);
    if (*c_inf) cmd_influence(G, inf);
    if (*c_sv) cmd_serve(G, sv);
    if (*c_rp) cmd_replay(G, rp);
  } catch (const rtsg::Error& e) {
    std::cerr << "error [" << e.code() << "]: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
