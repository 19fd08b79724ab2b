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

// Boards: the finite ground set S of a selection game together with the
// adjacency and terminal structure that crossing and connection payoffs use.
//
// Hex lozenge convention: cell (row, col) neighbours (row±1, col),
// (row, col±1), (row+1, col-1), (row-1, col+1). Black (player I) joins the
// row-0 side to the last-row side ("left" and "right" when the lozenge is
// drawn with rows running left to right); White joins col 0 to the last col.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rtsg/error.hpp"

namespace rtsg {

enum class BoardKind { kHexLozenge, kBridgit, kGrid3x3, kTree, kGeneric };

// What the playable items of a tree board are.
enum class TreeItems { kLeaves, kEdges };

inline const char* to_string(BoardKind k) {
  switch (k) {
    case BoardKind::kHexLozenge: return "hex-lozenge";
    case BoardKind::kBridgit: return "bridgit";
    case BoardKind::kGrid3x3: return "grid3x3";
    case BoardKind::kTree: return "tree";
    case BoardKind::kGeneric: return "generic";
  }
  return "?";
}

struct Cell {
  int id = 0;
  std::optional<std::array<int, 2>> coords;     // lattice boards
  std::optional<std::vector<int>> tree_path;    // tree boards
};

// Terminal membership flags for site-percolation boards.
enum TerminalBit : std::uint8_t {
  kBlackLeft = 1,
  kBlackRight = 2,
  kWhiteTop = 4,
  kWhiteBottom = 8,
};

// Items are edges of an underlying vertex graph (Bridg-It, switching trees).
struct BondStructure {
  int vertex_count = 0;
  std::vector<std::array<int, 2>> ends;    // per item
  std::vector<std::uint8_t> vertex_role;   // 1 = source side, 2 = sink side
  std::vector<int> sources;
  std::vector<int> sinks;
};

struct BoardGraph {
  BoardKind kind = BoardKind::kGeneric;
  int n = 0;
  int rows = 0;                  // hex lozenge / bridgit
  int cols = 0;
  std::vector<int> arities;      // tree: children per vertex at each depth
  TreeItems tree_items = TreeItems::kLeaves;
  std::vector<Cell> cells;
  std::vector<std::vector<int>> adjacency;
  std::vector<std::uint8_t> site_terminals;   // hex lozenge only
  std::optional<BondStructure> bonds;

  bool is_site_crossing() const { return kind == BoardKind::kHexLozenge; }
  bool is_bond_connection() const { return bonds.has_value(); }
  bool has_crossing_terminals() const { return is_site_crossing() || is_bond_connection(); }

  int cell_at(int row, int col) const {
    if (kind != BoardKind::kHexLozenge && kind != BoardKind::kGrid3x3) {
      throw UnsupportedGameError("board has no (row, col) addressing");
    }
    if (row < 0 || col < 0 || row >= rows || col >= cols) {
      throw IllegalMoveError("cell (" + std::to_string(row) + "," + std::to_string(col) +
                             ") is off the board");
    }
    return row * cols + col;
  }

  int depth() const { return static_cast<int>(arities.size()); }
};

namespace detail {

constexpr long long kMaxItems = 1 << 22;

inline void check_size(long long v, const char* what) {
  if (v <= 0) throw SizingError(std::string(what) + " must be positive");
  if (v > kMaxItems) throw SizingError(std::string(what) + " is too large");
}

inline void link(std::vector<std::vector<int>>& adj, int a, int b) {
  adj[a].push_back(b);
  adj[b].push_back(a);
}

}  // namespace detail

// Lozenge-shaped hex board with `rows` x `cols` cells.
inline BoardGraph hex_lozenge(int rows, int cols) {
  detail::check_size(rows, "rows");
  detail::check_size(cols, "cols");
  detail::check_size(static_cast<long long>(rows) * cols, "cell count");
  BoardGraph b;
  b.kind = BoardKind::kHexLozenge;
  b.rows = rows;
  b.cols = cols;
  b.n = rows * cols;
  b.cells.resize(b.n);
  b.adjacency.resize(b.n);
  b.site_terminals.assign(b.n, 0);
  static constexpr int kDr[6] = {-1, 1, 0, 0, 1, -1};
  static constexpr int kDc[6] = {0, 0, -1, 1, -1, 1};
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int id = r * cols + c;
      b.cells[id].id = id;
      b.cells[id].coords = std::array<int, 2>{r, c};
      for (int k = 0; k < 6; ++k) {
        const int rr = r + kDr[k], cc = c + kDc[k];
        if (rr >= 0 && rr < rows && cc >= 0 && cc < cols) b.adjacency[id].push_back(rr * cols + cc);
      }
      std::uint8_t t = 0;
      if (r == 0) t |= kBlackLeft;
      if (r == rows - 1) t |= kBlackRight;
      if (c == 0) t |= kWhiteTop;
      if (c == cols - 1) t |= kWhiteBottom;
      b.site_terminals[id] = t;
    }
  }
  return b;
}

// Bridg-It: L rows by L+1 columns of vertices; the left column is merged into
// the source terminal and the right column into the sink. Items are the
// L*L horizontal edges followed by the (L-1)*(L-1) interior vertical edges.
// Lattice coordinates live on the doubled grid: horizontal edge (r, c)-(r, c+1)
// is at (2r, 2c+1); vertical edge (r, c)-(r+1, c) is at (2r+1, 2c).
inline BoardGraph bridgit(int L) {
  detail::check_size(L, "L");
  detail::check_size(2LL * L * L, "edge count");
  BoardGraph b;
  b.kind = BoardKind::kBridgit;
  b.rows = L;
  b.cols = L + 1;
  BondStructure bonds;
  const int interior_cols = L - 1;
  bonds.vertex_count = 2 + L * interior_cols;
  auto vertex = [&](int r, int c) {
    if (c == 0) return 0;
    if (c == L) return 1;
    return 2 + r * interior_cols + (c - 1);
  };
  bonds.vertex_role.assign(bonds.vertex_count, 0);
  bonds.vertex_role[0] = 1;
  bonds.vertex_role[1] = 2;
  bonds.sources = {0};
  bonds.sinks = {1};
  for (int r = 0; r < L; ++r) {
    for (int c = 0; c < L; ++c) {
      Cell cell;
      cell.id = static_cast<int>(b.cells.size());
      cell.coords = std::array<int, 2>{2 * r, 2 * c + 1};
      b.cells.push_back(cell);
      bonds.ends.push_back({vertex(r, c), vertex(r, c + 1)});
    }
  }
  for (int r = 0; r + 1 < L; ++r) {
    for (int c = 1; c < L; ++c) {
      Cell cell;
      cell.id = static_cast<int>(b.cells.size());
      cell.coords = std::array<int, 2>{2 * r + 1, 2 * c};
      b.cells.push_back(cell);
      bonds.ends.push_back({vertex(r, c), vertex(r + 1, c)});
    }
  }
  b.n = static_cast<int>(b.cells.size());
  b.adjacency.resize(b.n);
  for (int i = 0; i < b.n; ++i) {
    for (int j = i + 1; j < b.n; ++j) {
      const auto& e = bonds.ends[i];
      const auto& f = bonds.ends[j];
      if (e[0] == f[0] || e[0] == f[1] || e[1] == f[0] || e[1] == f[1]) detail::link(b.adjacency, i, j);
    }
  }
  b.bonds = std::move(bonds);
  return b;
}

// 3x3 grid with king-move adjacency.
inline BoardGraph grid3x3() {
  BoardGraph b;
  b.kind = BoardKind::kGrid3x3;
  b.rows = 3;
  b.cols = 3;
  b.n = 9;
  b.cells.resize(9);
  b.adjacency.resize(9);
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      const int id = r * 3 + c;
      b.cells[id].id = id;
      b.cells[id].coords = std::array<int, 2>{r, c};
      for (int dr = -1; dr <= 1; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
          const int rr = r + dr, cc = c + dc;
          if ((dr || dc) && rr >= 0 && rr < 3 && cc >= 0 && cc < 3) b.adjacency[id].push_back(rr * 3 + cc);
        }
      }
    }
  }
  return b;
}

// Number of vertices at each depth 0..h of a tree with the given arities.
inline std::vector<long long> tree_level_sizes(const std::vector<int>& arities) {
  std::vector<long long> sizes{1};
  for (int a : arities) {
    if (a <= 0) throw SizingError("tree arity must be positive");
    const long long next = sizes.back() * a;
    if (next > detail::kMaxItems) throw SizingError("tree is too large to materialize");
    sizes.push_back(next);
  }
  return sizes;
}

// Rooted tree with `arities[d]` children under every depth-d vertex.
// Leaf items are numbered left to right; edge items are numbered in
// breadth-first order of their lower vertex, so edge i ends at vertex i+1.
inline BoardGraph tree(std::vector<int> arities, TreeItems items) {
  if (arities.empty()) {
    if (items == TreeItems::kEdges) throw SizingError("an edge tree needs depth >= 1");
  }
  const auto sizes = tree_level_sizes(arities);
  BoardGraph b;
  b.kind = BoardKind::kTree;
  b.arities = arities;
  b.tree_items = items;
  const int h = static_cast<int>(arities.size());

  // Breadth-first vertex list with parent pointers and paths.
  std::vector<int> parent{-1};
  std::vector<std::vector<int>> paths{{}};
  std::vector<int> level_begin{0};
  for (int d = 0; d < h; ++d) {
    const int begin = level_begin.back();
    const int end = static_cast<int>(parent.size());
    level_begin.push_back(end);
    for (int v = begin; v < end; ++v) {
      for (int k = 0; k < arities[d]; ++k) {
        parent.push_back(v);
        auto path = paths[v];
        path.push_back(k);
        paths.push_back(std::move(path));
      }
    }
  }
  const int vertex_count = static_cast<int>(parent.size());
  const int leaf_begin = level_begin.back();
  (void)sizes;

  if (items == TreeItems::kLeaves) {
    b.n = vertex_count - leaf_begin;
    b.cells.resize(b.n);
    b.adjacency.resize(b.n);
    for (int i = 0; i < b.n; ++i) {
      b.cells[i].id = i;
      b.cells[i].tree_path = paths[leaf_begin + i];
    }
    // Leaves sharing a parent are adjacent.
    for (int i = 0; i < b.n; ++i) {
      for (int j = i + 1; j < b.n; ++j) {
        if (parent[leaf_begin + i] == parent[leaf_begin + j]) detail::link(b.adjacency, i, j);
      }
    }
    return b;
  }

  BondStructure bonds;
  bonds.vertex_count = vertex_count;
  bonds.vertex_role.assign(vertex_count, 0);
  bonds.vertex_role[0] = 1;
  bonds.sources = {0};
  for (int v = leaf_begin; v < vertex_count; ++v) {
    bonds.vertex_role[v] = 2;
    bonds.sinks.push_back(v);
  }
  b.n = vertex_count - 1;
  b.cells.resize(b.n);
  b.adjacency.resize(b.n);
  std::vector<std::vector<int>> incident(vertex_count);
  for (int i = 0; i < b.n; ++i) {
    b.cells[i].id = i;
    b.cells[i].tree_path = paths[i + 1];
    bonds.ends.push_back({parent[i + 1], i + 1});
    incident[parent[i + 1]].push_back(i);
    incident[i + 1].push_back(i);
  }
  for (const auto& inc : incident) {
    for (std::size_t x = 0; x < inc.size(); ++x) {
      for (std::size_t y = x + 1; y < inc.size(); ++y) detail::link(b.adjacency, inc[x], inc[y]);
    }
  }
  b.bonds = std::move(bonds);
  return b;
}

inline BoardGraph uniform_tree(int arity, int depth, TreeItems items) {
  if (depth < 0) throw SizingError("depth must be nonnegative");
  detail::check_size(arity, "arity");
  return tree(std::vector<int>(depth, arity), items);
}

// n isolated items (Team Captains and other table-defined games).
inline BoardGraph generic(int n) {
  detail::check_size(n, "n");
  BoardGraph b;
  b.kind = BoardKind::kGeneric;
  b.n = n;
  b.cells.resize(n);
  b.adjacency.resize(n);
  for (int i = 0; i < n; ++i) b.cells[i].id = i;
  return b;
}

// Size parameters for build_board; unused fields are ignored.
struct BoardParams {
  int L = 0;                 // hex rows / bridgit size
  int cols = 0;              // hex cols; 0 means square
  std::vector<int> arities;  // tree
  TreeItems tree_items = TreeItems::kEdges;
  int n = 0;                 // generic
};

inline BoardGraph build_board(BoardKind kind, const BoardParams& params) {
  switch (kind) {
    case BoardKind::kHexLozenge: return hex_lozenge(params.L, params.cols == 0 ? params.L : params.cols);
    case BoardKind::kBridgit: return bridgit(params.L);
    case BoardKind::kGrid3x3: return grid3x3();
    case BoardKind::kTree: return tree(params.arities, params.tree_items);
    case BoardKind::kGeneric: return generic(params.n);
  }
  throw SizingError("unknown board kind");
}

}  // namespace rtsg
