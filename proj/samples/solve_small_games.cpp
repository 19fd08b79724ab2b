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

// Exact values and optimal first moves of a few small games.

#include <iostream>

#include "rtsg/rtsg.hpp"

int main() {
  using namespace rtsg;
  const SpecPtr games[] = {share(make_hex(3)), share(make_tictactoe()), share(make_recursive_majority(1)),
                           share(make_andor(2)), share(make_bridgit(2))};
  for (const auto& spec : games) {
    const GamePosition root(spec);
    ExactSolver<Rational> solver(root, Rational(1, 2));
    const auto moves = solver.optimal_moves(root);
    std::cout << spec->game << " (" << spec->n() << " items): value " << solver.value() << ", best first moves";
    for (int c : moves.cells) std::cout << " " << c;
    if (spec->monotone && spec->win_or_lose) std::cout << ", expected length " << solver.expected_length();
    std::cout << "\n";
  }
}
