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

// JSON encodings of records, positions and value dumps.

#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "rtsg/exact_solver.hpp"
#include "rtsg/game.hpp"
#include "rtsg/mc_strategy.hpp"
#include "rtsg/rational.hpp"

namespace rtsg {

using Json = nlohmann::ordered_json;

inline Side side_from_string(const std::string& s) {
  if (s == "I") return Side::kI;
  if (s == "II") return Side::kII;
  throw DomainError("side must be \"I\" or \"II\", got \"" + s + "\"");
}

inline Winner winner_from_string(const std::string& s) {
  if (s == "I") return Winner::kI;
  if (s == "II") return Winner::kII;
  if (s == "undetermined") return Winner::kUndetermined;
  throw DomainError("unknown winner \"" + s + "\"");
}

inline std::string rational_string(const Rational& r) { return r.get_str(); }

inline Json to_json(const GameRecord& r) {
  Json moves = Json::array();
  for (const auto& m : r.moves) moves.push_back({{"turn", m.turn}, {"coin", to_string(m.coin)}, {"cell", m.cell}});
  Json j;
  j["game"] = r.game;
  j["L"] = r.rows;
  j["cols"] = r.cols;
  j["p"] = r.p;
  j["seed"] = r.seed;
  j["moves"] = std::move(moves);
  j["winner"] = to_string(r.winner);
  j["value"] = r.value;
  j["length"] = r.length;
  j["connected_throughout"] = r.connected_throughout;
  j["disconnected_moves"] = r.disconnected_move_count;
  return j;
}

inline GameRecord record_from_json(const Json& j) {
  GameRecord r;
  r.game = j.at("game").get<std::string>();
  r.rows = j.at("L").get<int>();
  r.cols = j.value("cols", r.rows);
  r.p = j.at("p").get<double>();
  r.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& m : j.at("moves")) {
    r.moves.push_back({m.at("turn").get<int>(), side_from_string(m.at("coin").get<std::string>()), m.at("cell").get<int>()});
  }
  r.winner = winner_from_string(j.at("winner").get<std::string>());
  r.value = j.value("value", 0.0);
  r.length = j.at("length").get<int>();
  r.connected_throughout = j.at("connected_throughout").get<bool>();
  r.disconnected_move_count = j.at("disconnected_moves").get<int>();
  return r;
}

inline Json cell_json(const GameSpec& spec, int cell) {
  const auto& c = spec.board.cells.at(cell);
  if (c.coords) return Json::array({(*c.coords)[0], (*c.coords)[1]});
  return cell;
}

inline Json position_json(const GamePosition& pos) {
  return {{"t1", pos.t1()}, {"t2", pos.t2()}};
}

template <class Value>
Json value_json(const Value& v) {
  if constexpr (std::is_same_v<Value, Rational>) {
    return {{"exact", rational_string(v)}, {"approx", to_double(v)}};
  } else {
    return v;
  }
}

// {position, value, optimal_moves}
template <class Value>
Json value_dump(ExactSolver<Value>& solver, const GamePosition& pos) {
  Json j;
  j["position"] = position_json(pos);
  j["value"] = value_json(solver.value(pos));
  if (pos.undecided_count() > 0) {
    const auto ms = solver.optimal_moves(pos);
    j["optimal_moves"] = ms.cells;
    j["shared"] = ms.shared;
  } else {
    j["optimal_moves"] = Json::array();
  }
  return j;
}

}  // namespace rtsg
