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

// Search primitives over colourings. A colouring assigns +1 (player I,
// black, Short, True) or -1 (player II, white, Cut, False) to each item;
// 0 marks an undecided item where partial colourings are allowed.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rtsg/board.hpp"

namespace rtsg {

using Configuration = std::vector<std::int8_t>;

// Reusable buffers so hot loops do not allocate.
struct SearchScratch {
  std::vector<int> queue;
  std::vector<int> mark;
  int stamp = 0;

  void reset(std::size_t size) {
    if (mark.size() < size) mark.assign(size, 0);
    if (++stamp == 0) {
      std::fill(mark.begin(), mark.end(), 0);
      stamp = 1;
    }
    queue.clear();
  }
  bool seen(int v) const { return mark[v] == stamp; }
  void see(int v) { mark[v] = stamp; }
};

// Does `color` join its two sides on a hex lozenge? Black uses the row sides,
// white the column sides.
inline bool site_crossing(const BoardGraph& b, std::span<const std::int8_t> colors, int color,
                          SearchScratch& s) {
  const std::uint8_t from = color > 0 ? kBlackLeft : kWhiteTop;
  const std::uint8_t to = color > 0 ? kBlackRight : kWhiteBottom;
  s.reset(b.n);
  for (int c = 0; c < b.n; ++c) {
    if ((b.site_terminals[c] & from) && colors[c] == color) {
      s.see(c);
      s.queue.push_back(c);
    }
  }
  for (std::size_t head = 0; head < s.queue.size(); ++head) {
    const int c = s.queue[head];
    if (b.site_terminals[c] & to) return true;
    for (int d : b.adjacency[c]) {
      if (!s.seen(d) && colors[d] == color) {
        s.see(d);
        s.queue.push_back(d);
      }
    }
  }
  return false;
}

// Number of cells on the shortest monochromatic crossing, if any.
inline std::optional<int> shortest_site_crossing(const BoardGraph& b, std::span<const std::int8_t> colors,
                                                 int color) {
  const std::uint8_t from = color > 0 ? kBlackLeft : kWhiteTop;
  const std::uint8_t to = color > 0 ? kBlackRight : kWhiteBottom;
  std::vector<int> dist(b.n, -1);
  std::vector<int> queue;
  for (int c = 0; c < b.n; ++c) {
    if ((b.site_terminals[c] & from) && colors[c] == color) {
      dist[c] = 1;
      queue.push_back(c);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int c = queue[head];
    if (b.site_terminals[c] & to) return dist[c];
    for (int d : b.adjacency[c]) {
      if (dist[d] < 0 && colors[d] == color) {
        dist[d] = dist[c] + 1;
        queue.push_back(d);
      }
    }
  }
  return std::nullopt;
}

// Vertex adjacency (vertex, item) of a bond board, built once per board.
struct BondIncidence {
  std::vector<std::vector<std::pair<int, int>>> out;

  explicit BondIncidence(const BondStructure& bs) : out(bs.vertex_count) {
    for (int i = 0; i < static_cast<int>(bs.ends.size()); ++i) {
      out[bs.ends[i][0]].push_back({bs.ends[i][1], i});
      out[bs.ends[i][1]].push_back({bs.ends[i][0], i});
    }
  }
};

// Vertices reachable from the sources (or sinks) through items of `color`.
inline void bond_reach(const BondStructure& bs, const BondIncidence& inc, std::span<const std::int8_t> colors,
                       int color, bool from_sources, SearchScratch& s) {
  s.reset(bs.vertex_count);
  for (int v : from_sources ? bs.sources : bs.sinks) {
    if (!s.seen(v)) {
      s.see(v);
      s.queue.push_back(v);
    }
  }
  for (std::size_t head = 0; head < s.queue.size(); ++head) {
    const int v = s.queue[head];
    for (auto [w, item] : inc.out[v]) {
      if (!s.seen(w) && colors[item] == color) {
        s.see(w);
        s.queue.push_back(w);
      }
    }
  }
}

// Short (+1) connects a source to a sink through +1 items.
inline bool bond_connects(const BondStructure& bs, const BondIncidence& inc, std::span<const std::int8_t> colors,
                          SearchScratch& s) {
  bond_reach(bs, inc, colors, +1, true, s);
  for (int v : bs.sinks) {
    if (s.seen(v)) return true;
  }
  return false;
}

}  // namespace rtsg
