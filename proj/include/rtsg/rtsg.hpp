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

#pragma once

#define RTSG_VERSION "0.1.0"

#include "rtsg/board.hpp"
#include "rtsg/connectivity.hpp"
#include "rtsg/error.hpp"
#include "rtsg/exact_solver.hpp"
#include "rtsg/game.hpp"
#include "rtsg/harness.hpp"
#include "rtsg/influence.hpp"
#include "rtsg/mc_strategy.hpp"
#include "rtsg/parallel.hpp"
#include "rtsg/percolation.hpp"
#include "rtsg/rational.hpp"
#include "rtsg/rng.hpp"
#include "rtsg/serialize.hpp"
#include "rtsg/tree_analysis.hpp"
