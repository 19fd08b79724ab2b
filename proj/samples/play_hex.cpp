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

// One seeded game of hex between the sampling strategy and a random player.

#include <iostream>

#include "rtsg/rtsg.hpp"

int main(int argc, char** argv) {
  using namespace rtsg;
  const int L = argc > 1 ? std::atoi(argv[1]) : 7;
  const std::uint64_t seed = argc > 2 ? std::stoull(argv[2]) : 1;
  const auto spec = share(make_hex(L));
  const auto rec = selfplay(spec, mc_strategy({.samples = 2000}), random_strategy(), 0.5, seed);
  for (const auto& m : rec.moves) {
    const auto [r, c] = *spec->board.cells[m.cell].coords;
    std::cout << "turn " << m.turn << ": " << to_string(m.coin) << " plays (" << r << "," << c << ")\n";
  }
  std::cout << "winner " << to_string(rec.winner) << " after " << rec.moves.size() << " moves\n";
}
