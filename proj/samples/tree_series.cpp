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

// Recursions for the tree games next to simulated optimal play.

#include <cstdio>

#include "rtsg/rtsg.hpp"

int main() {
  using namespace rtsg;
  std::printf("AND-OR at p = %.6f\n h  closed form  simulated\n", kAndOrFixedPoint);
  for (int h = 2; h <= 10; h += 2) {
    const auto s = simulate_tree_games(TreeGameKind::kAndOr, complete_tree(2, h), kAndOrFixedPoint, 20000, h);
    std::printf("%2d  %10.4f  %9.4f\n", h, andor_expected_length(h), s.mean_length);
  }
  const auto series = switching_series(12);
  std::printf("ternary switching\n h  Cut wins  simulated length\n");
  for (int h = 1; h <= 12; ++h) {
    const auto s = simulate_tree_games(TreeGameKind::kSwitching, complete_tree(3, h), 0.5, 5000, h);
    std::printf("%2d  %8.6f  %8.3f\n", h, series.q[h], s.mean_length);
  }
}
