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

// Random completions of positions, crossing detection, pivotal sets and
// Monte-Carlo pivotality / crossing estimates.
//
// Pivotal sets of connection games are computed in one pass per sample:
// when the connection exists, the pivotal items are exactly the cut
// vertices (site games) or bridges (bond games) separating the two
// terminals, read off a lowlink DFS along the tree path between them; when it
// does not exist, an item is pivotal iff its two sides touch the source and
// sink components respectively.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rtsg/connectivity.hpp"
#include "rtsg/game.hpp"
#include "rtsg/parallel.hpp"
#include "rtsg/rng.hpp"

namespace rtsg {

// ---------------------------------------------------------------------------
// Sampling

// Fills undecided cells of `pos` with +1 independently with probability p.
// Cell c of sample `index` always uses the same random word, whatever the
// order of evaluation.
inline void fill_completion(const GamePosition& pos, std::uint64_t seed, std::uint64_t index, Configuration& out) {
  const CounterRng rng(seed, Stream::kCompletion);
  const std::uint64_t threshold = bernoulli_threshold(pos.p());
  const auto& own = pos.owners();
  const int n = pos.n();
  out.resize(n);
  for (int base = 0; base < n; base += 4) {
    const auto words = rng.block(index, static_cast<std::uint32_t>(base >> 2));
    const int stop = std::min(n, base + 4);
    for (int c = base; c < stop; ++c) {
      out[c] = own[c] != 0 ? own[c] : (words[c - base] < threshold ? 1 : -1);
    }
  }
}

inline Configuration sample_completion(const GamePosition& pos, std::uint64_t seed, std::uint64_t index) {
  Configuration out;
  fill_completion(pos, seed, index, out);
  return out;
}

// ---------------------------------------------------------------------------
// Crossings

struct CrossingResult {
  bool black_crossing = false;
  bool white_crossing = false;
  std::optional<int> shortest_black_crossing_length;
  std::optional<int> shortest_white_crossing_length;
};

// Black is player I (Short on bond boards). On bond boards White's crossing is
// the dual event, i.e. Cut separating the terminals.
inline CrossingResult has_crossing(const BoardGraph& b, std::span<const std::int8_t> colors, bool want_shortest = false) {
  if (!b.has_crossing_terminals()) throw UnsupportedGameError("board has no crossing terminals");
  if (static_cast<int>(colors.size()) != b.n) throw DomainError("configuration length does not match board");
  CrossingResult r;
  SearchScratch scratch;
  if (b.is_site_crossing()) {
    r.black_crossing = site_crossing(b, colors, +1, scratch);
    r.white_crossing = site_crossing(b, colors, -1, scratch);
    if (want_shortest) {
      r.shortest_black_crossing_length = shortest_site_crossing(b, colors, +1);
      r.shortest_white_crossing_length = shortest_site_crossing(b, colors, -1);
    }
    return r;
  }
  const BondIncidence inc(*b.bonds);
  r.black_crossing = bond_connects(*b.bonds, inc, colors, scratch);
  r.white_crossing = !r.black_crossing;
  return r;
}

// ---------------------------------------------------------------------------
// Pivotal sets

class PivotalFinder {
 public:
  explicit PivotalFinder(const GameSpec& spec) : spec_(&spec), eval_(spec) {
    const auto& b = spec.board;
    if (b.is_site_crossing()) {
      for (int c = 0; c < b.n; ++c) {
        if (b.site_terminals[c] & kBlackLeft) left_.push_back(c);
        if (b.site_terminals[c] & kBlackRight) right_.push_back(c);
      }
    }
  }

  // Cells whose colour flip changes f. `out` is overwritten, ascending order.
  void find(std::span<const std::int8_t> colors, std::vector<int>& out) {
    out.clear();
    switch (spec_->payoff_kind) {
      case PayoffKind::kHexCrossing:
        if (spec_->board.is_site_crossing()) return site(colors, out);
        break;
      case PayoffKind::kSwitching:
        return bond(colors, out);
      case PayoffKind::kAndOr:
      case PayoffKind::kRecursiveMajority:
        return leaf_tree(colors, out);
      default:
        break;
    }
    oracle(colors, out);
  }

  // Literal flip-and-recompute, one payoff evaluation per cell.
  void oracle(std::span<const std::int8_t> colors, std::vector<int>& out) {
    out.clear();
    flip_.assign(colors.begin(), colors.end());
    for (int c = 0; c < spec_->board.n; ++c) {
      flip_[c] = 1;
      const Rational up = eval_.eval_exact(flip_);
      flip_[c] = -1;
      const Rational down = eval_.eval_exact(flip_);
      flip_[c] = colors[c];
      if (up != down) out.push_back(c);
    }
  }

 private:
  // Virtual neighbour lists of the black graph with super nodes S and T.
  void site(std::span<const std::int8_t> colors, std::vector<int>& out) {
    const auto& b = spec_->board;
    const int n = b.n;
    const int S = n, T = n + 1;
    disc_.assign(n + 2, -1);
    low_.assign(n + 2, 0);
    parent_.assign(n + 2, -1);
    iter_.assign(n + 2, 0);
    auto degree = [&](int v) -> int {
      if (v == S) return static_cast<int>(left_.size());
      if (v == T) return static_cast<int>(right_.size());
      return static_cast<int>(b.adjacency[v].size()) + 2;
    };
    // Returns -1 when the slot is not an edge of the black graph.
    auto neighbour = [&](int v, int i) -> int {
      if (v == S) return colors[left_[i]] > 0 ? left_[i] : -1;
      if (v == T) return colors[right_[i]] > 0 ? right_[i] : -1;
      const int deg = static_cast<int>(b.adjacency[v].size());
      if (i < deg) {
        const int w = b.adjacency[v][i];
        return colors[w] > 0 ? w : -1;
      }
      if (i == deg) return (b.site_terminals[v] & kBlackLeft) ? S : -1;
      return (b.site_terminals[v] & kBlackRight) ? T : -1;
    };
    int time = 0;
    stack_.clear();
    disc_[S] = low_[S] = time++;
    stack_.push_back(S);
    while (!stack_.empty()) {
      const int v = stack_.back();
      if (iter_[v] < degree(v)) {
        const int w = neighbour(v, iter_[v]++);
        if (w < 0) continue;
        if (disc_[w] < 0) {
          parent_[w] = v;
          disc_[w] = low_[w] = time++;
          stack_.push_back(w);
        } else if (w != parent_[v]) {
          low_[v] = std::min(low_[v], disc_[w]);
        }
      } else {
        stack_.pop_back();
        if (parent_[v] >= 0) low_[parent_[v]] = std::min(low_[parent_[v]], low_[v]);
      }
    }
    if (disc_[T] >= 0) {
      // Connected: cut vertices on the tree path from T up to S.
      int child = T;
      for (int v = parent_[T]; v != S; child = v, v = parent_[v]) {
        if (low_[child] >= disc_[v]) out.push_back(v);
      }
      std::sort(out.begin(), out.end());
      return;
    }
    // Not connected: a white cell is pivotal iff it touches both the
    // left-connected and the right-connected black regions.
    reach_t_.assign(n, 0);
    queue_.clear();
    for (int c : right_) {
      if (colors[c] > 0) {
        reach_t_[c] = 1;
        queue_.push_back(c);
      }
    }
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      for (int w : b.adjacency[queue_[head]]) {
        if (!reach_t_[w] && colors[w] > 0) {
          reach_t_[w] = 1;
          queue_.push_back(w);
        }
      }
    }
    for (int c = 0; c < n; ++c) {
      if (colors[c] > 0) continue;
      bool left = b.site_terminals[c] & kBlackLeft;
      bool right = b.site_terminals[c] & kBlackRight;
      for (int w : b.adjacency[c]) {
        if (colors[w] > 0) {
          left = left || disc_[w] >= 0;
          right = right || reach_t_[w];
        }
      }
      if (left && right) out.push_back(c);
    }
  }

  void bond(std::span<const std::int8_t> colors, std::vector<int>& out) {
    const auto& bs = *spec_->board.bonds;
    const auto& inc = *spec_->incidence;
    const int V = bs.vertex_count;
    const int items = static_cast<int>(bs.ends.size());
    const int S = V, T = V + 1;
    disc_.assign(V + 2, -1);
    low_.assign(V + 2, 0);
    parent_.assign(V + 2, -1);
    parent_edge_.assign(V + 2, -1);
    iter_.assign(V + 2, 0);
    // Virtual edge ids: items + k for S-source k, items + |sources| + k for sink k - T.
    const int nsrc = static_cast<int>(bs.sources.size());
    source_index_.assign(V, -1);
    sink_index_.assign(V, -1);
    for (int k = 0; k < nsrc; ++k) source_index_[bs.sources[k]] = k;
    for (int k = 0; k < static_cast<int>(bs.sinks.size()); ++k) sink_index_[bs.sinks[k]] = k;
    auto degree = [&](int v) -> int {
      if (v == S) return nsrc;
      if (v == T) return static_cast<int>(bs.sinks.size());
      return static_cast<int>(inc.out[v].size()) + 2;
    };
    // (neighbour, edge id) or (-1, -1).
    auto neighbour = [&](int v, int i) -> std::pair<int, int> {
      if (v == S) return {bs.sources[i], items + i};
      if (v == T) return {bs.sinks[i], items + nsrc + i};
      const int deg = static_cast<int>(inc.out[v].size());
      if (i < deg) {
        auto [w, item] = inc.out[v][i];
        return colors[item] > 0 ? std::pair{w, item} : std::pair{-1, -1};
      }
      if (i == deg) return source_index_[v] >= 0 ? std::pair{S, items + source_index_[v]} : std::pair{-1, -1};
      return sink_index_[v] >= 0 ? std::pair{T, items + nsrc + sink_index_[v]} : std::pair{-1, -1};
    };
    int time = 0;
    stack_.clear();
    disc_[S] = low_[S] = time++;
    stack_.push_back(S);
    while (!stack_.empty()) {
      const int v = stack_.back();
      if (iter_[v] < degree(v)) {
        const auto [w, edge] = neighbour(v, iter_[v]++);
        if (w < 0) continue;
        if (disc_[w] < 0) {
          parent_[w] = v;
          parent_edge_[w] = edge;
          disc_[w] = low_[w] = time++;
          stack_.push_back(w);
        } else if (edge != parent_edge_[v]) {
          low_[v] = std::min(low_[v], disc_[w]);
        }
      } else {
        stack_.pop_back();
        if (parent_[v] >= 0) low_[parent_[v]] = std::min(low_[parent_[v]], low_[v]);
      }
    }
    if (disc_[T] >= 0) {
      for (int w = T; w != S; w = parent_[w]) {
        const int e = parent_edge_[w];
        if (e < items && low_[w] > disc_[parent_[w]]) out.push_back(e);
      }
      std::sort(out.begin(), out.end());
      return;
    }
    // Not connected: closed edges joining the source side to the sink side.
    reach_t_.assign(V, 0);
    queue_.clear();
    for (int v : bs.sinks) {
      if (!reach_t_[v]) {
        reach_t_[v] = 1;
        queue_.push_back(v);
      }
    }
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      for (auto [w, item] : inc.out[queue_[head]]) {
        if (!reach_t_[w] && colors[item] > 0) {
          reach_t_[w] = 1;
          queue_.push_back(w);
        }
      }
    }
    for (int e = 0; e < items; ++e) {
      if (colors[e] > 0) continue;
      const int a = bs.ends[e][0], z = bs.ends[e][1];
      if ((disc_[a] >= 0 && reach_t_[z]) || (disc_[z] >= 0 && reach_t_[a])) out.push_back(e);
    }
  }

  // Complete trees of AND/OR or majority gates: a node is pivotal iff its
  // parent is pivotal and flipping it flips the parent.
  void leaf_tree(std::span<const std::int8_t> colors, std::vector<int>& out) {
    const bool majority = spec_->payoff_kind == PayoffKind::kRecursiveMajority;
    const int arity = majority ? 3 : 2;
    const int h = spec_->board.depth();
    levels_.resize(h + 1);
    levels_[h].assign(colors.begin(), colors.end());
    for (int d = h - 1; d >= 0; --d) {
      const auto& kids = levels_[d + 1];
      auto& here = levels_[d];
      here.resize(kids.size() / arity);
      for (std::size_t v = 0; v < here.size(); ++v) {
        const std::span<const std::int8_t> k(kids.data() + v * arity, arity);
        here[v] = majority ? detail::majority_gate(d, k) : detail::andor_gate(d, k);
      }
    }
    piv_.assign(1, 1);
    for (int d = 0; d < h; ++d) {
      const auto& kids = levels_[d + 1];
      next_piv_.assign(kids.size(), 0);
      for (std::size_t v = 0; v < piv_.size(); ++v) {
        if (!piv_[v]) continue;
        for (int i = 0; i < arity; ++i) {
          bool flips;
          if (majority) {
            int others = 0;
            for (int j = 0; j < arity; ++j) {
              if (j != i) others += kids[v * arity + j];
            }
            flips = others == 0;
          } else {
            const int sibling = kids[v * arity + (1 - i)];
            flips = (d % 2 == 0) ? sibling > 0 : sibling < 0;
          }
          next_piv_[v * arity + i] = flips;
        }
      }
      piv_.swap(next_piv_);
    }
    for (std::size_t c = 0; c < piv_.size(); ++c) {
      if (piv_[c]) out.push_back(static_cast<int>(c));
    }
  }

  const GameSpec* spec_;
  PayoffEvaluator eval_;
  std::vector<int> left_, right_;
  std::vector<int> disc_, low_, parent_, parent_edge_, iter_, stack_, queue_;
  std::vector<int> source_index_, sink_index_;
  std::vector<char> reach_t_;
  Configuration flip_;
  std::vector<Configuration> levels_;
  std::vector<char> piv_, next_piv_;
};

inline std::vector<int> pivotal_sites(const GameSpec& spec, std::span<const std::int8_t> colors) {
  PivotalFinder finder(spec);
  std::vector<int> out;
  finder.find(colors, out);
  return out;
}

inline std::vector<int> pivotal_sites_oracle(const GameSpec& spec, std::span<const std::int8_t> colors) {
  PivotalFinder finder(spec);
  std::vector<int> out;
  finder.oracle(colors, out);
  return out;
}

// ---------------------------------------------------------------------------
// Monte-Carlo estimates

struct PivotalEstimate {
  std::vector<std::int64_t> counts;  // per cell; decided cells stay 0
  std::int64_t samples = 0;
  double p = 0.5;
  std::uint64_t seed = 0;

  double estimate(int cell) const { return samples ? static_cast<double>(counts[cell]) / samples : 0.0; }
  double stderr_of(int cell) const {
    const double e = estimate(cell);
    return samples ? std::sqrt(e * (1 - e) / samples) : 0.0;
  }
};

// Counts, for each undecided cell, how many of `samples` random completions
// of `pos` make it pivotal. Bit-identical for every thread count.
inline PivotalEstimate estimate_pivotality(const GamePosition& pos, std::int64_t samples, std::uint64_t seed,
                                           unsigned threads = 1) {
  if (samples < 1) throw DomainError("sample count must be at least 1");
  const int n = pos.n();
  std::vector<std::vector<std::int64_t>> partial(std::max(1u, threads));
  const std::size_t used = parallel_chunks(static_cast<std::size_t>(samples), threads,
                                           [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    PivotalFinder finder(pos.spec());
    Configuration config;
    std::vector<int> piv;
    auto& counts = partial[chunk];
    counts.assign(n, 0);
    for (std::size_t i = begin; i < end; ++i) {
      fill_completion(pos, seed, i, config);
      finder.find(config, piv);
      for (int c : piv) ++counts[c];
    }
  });
  PivotalEstimate est;
  est.counts.assign(n, 0);
  est.samples = samples;
  est.p = pos.p();
  est.seed = seed;
  for (std::size_t k = 0; k < used; ++k) {
    for (int c = 0; c < n; ++c) est.counts[c] += partial[k][c];
  }
  for (int c = 0; c < n; ++c) {
    if (!pos.is_undecided(c)) est.counts[c] = 0;
  }
  return est;
}

struct McEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
  std::int64_t samples = 0;
};

// Probability that player I's crossing (Short's connection) exists when every
// item is +1 independently with probability p.
inline McEstimate crossing_probability_mc(const GameSpec& spec, double p, std::int64_t samples, std::uint64_t seed,
                                          unsigned threads = 1) {
  if (!spec.board.has_crossing_terminals()) throw UnsupportedGameError("board has no crossing terminals");
  if (samples < 1) throw DomainError("sample count must be at least 1");
  const auto sp = std::make_shared<const GameSpec>(spec);
  const GamePosition empty(sp, p);
  std::vector<std::int64_t> hits(std::max(1u, threads), 0);
  const std::size_t used = parallel_chunks(static_cast<std::size_t>(samples), threads,
                                           [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    PayoffEvaluator eval(*sp);
    Configuration config;
    std::int64_t h = 0;
    for (std::size_t i = begin; i < end; ++i) {
      fill_completion(empty, seed, i, config);
      h += eval.winner_sign(config) > 0;
    }
    hits[chunk] = h;
  });
  std::int64_t total = 0;
  for (std::size_t k = 0; k < used; ++k) total += hits[k];
  McEstimate r;
  r.samples = samples;
  r.estimate = static_cast<double>(total) / samples;
  r.standard_error = std::sqrt(r.estimate * (1 - r.estimate) / samples);
  return r;
}

}  // namespace rtsg
