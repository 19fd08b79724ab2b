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

// Human-vs-engine sessions. GameService holds the sessions and speaks JSON;
// register_routes() binds it to an HTTP server.
//
//   POST /games                 {game, L, p, human_side, engine_samples, seed}
//   GET  /games
//   GET  /games/{id}
//   POST /games/{id}/moves      {cell: [row, col] | id, turn?}
//   GET  /games/{id}/heatmap
//   POST /games/{id}/resign
//
// The server tosses every coin. After a human move it keeps tossing and lets
// the engine move until the human wins a toss or the game is decided.

#pragma once

#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "httplib.h"
#include "rtsg/error.hpp"
#include "rtsg/game.hpp"
#include "rtsg/harness.hpp"
#include "rtsg/mc_strategy.hpp"
#include "rtsg/percolation.hpp"
#include "rtsg/rng.hpp"
#include "rtsg/serialize.hpp"

namespace rtsg {

inline constexpr std::int64_t kDefaultEngineSamples = 2000;
inline constexpr std::int64_t kMaxEngineSamples = 200000;
inline constexpr int kMaxServiceBoard = 19;

struct ServiceOptions {
  std::int64_t max_engine_samples = kMaxEngineSamples;
  std::string log_path;  // JSON lines of finished games; empty disables
  unsigned threads = 1;
};

enum class SessionStatus { kAwaitingHuman, kFinished };

inline const char* to_string(SessionStatus s) { return s == SessionStatus::kFinished ? "finished" : "awaiting-human"; }

class GameService {
 public:
  explicit GameService(ServiceOptions options = {}) : options_(std::move(options)) {}

  Json create_game(const Json& body) {
    auto s = std::make_shared<Session>();
    const std::string game = body.value("game", std::string("hex"));
    if (game != "hex" && game != "bridgit") throw UnsupportedGameError("the service plays hex and bridgit");
    const Json& size = body.contains("L") ? body["L"] : body.contains("size") ? body["size"] : Json(5);
    if (!size.is_number_integer()) throw SizingError("L must be an integer");
    const int L = size.get<int>();
    if (L < 1 || L > kMaxServiceBoard) {
      throw SizingError("L must lie in [1, " + std::to_string(kMaxServiceBoard) + "]");
    }
    s->p = number_field(body, "p", 0.5);
    if (!(s->p >= 0.0 && s->p <= 1.0)) throw DomainError("p must lie in [0, 1]");
    s->human = side_from_string(body.value("human_side", std::string("I")));
    s->samples = body.value("engine_samples", kDefaultEngineSamples);
    if (s->samples < 1 || s->samples > options_.max_engine_samples) {
      throw DomainError("engine_samples must lie in [1, " + std::to_string(options_.max_engine_samples) + "]");
    }
    s->seed = body.value("seed", std::uint64_t{0});
    s->spec = game == "hex" ? share(make_hex(L)) : share(make_bridgit(L));
    s->position = std::make_unique<GamePosition>(s->spec, s->p);
    s->record.game = s->spec->game;
    s->record.rows = s->spec->board.rows;
    s->record.cols = s->spec->board.cols;
    s->record.p = s->p;
    s->record.seed = s->seed;
    s->played.assign(s->spec->n(), 0);

    std::unique_lock lock(sessions_mutex_);
    s->id = make_id(next_id_++);
    sessions_[s->id] = s;
    std::lock_guard guard(s->mutex);
    lock.unlock();
    s->tosses.clear();
    advance(*s);
    return snapshot(*s);
  }

  Json list_games() const {
    std::shared_lock lock(sessions_mutex_);
    Json out = Json::array();
    for (const auto& [id, s] : sessions_) {
      std::lock_guard guard(s->mutex);
      out.push_back({{"id", id}, {"game", s->spec->game}, {"status", to_string(s->status)}});
    }
    return out;
  }

  Json get_state(const std::string& id) const {
    auto s = find(id);
    std::lock_guard guard(s->mutex);
    return snapshot(*s);
  }

  Json post_move(const std::string& id, const Json& body) {
    auto s = find(id);
    std::lock_guard guard(s->mutex);
    if (s->status == SessionStatus::kFinished) throw GameOverError("game " + id + " is over");
    if (body.contains("turn") && body["turn"].get<int>() != s->turn) {
      throw NotYourTurnError("turn " + std::to_string(body["turn"].get<int>()) + " is not the awaited turn " +
                             std::to_string(s->turn));
    }
    if (!body.contains("cell")) throw DomainError("missing \"cell\"");
    const int cell = parse_cell(*s->spec, body["cell"]);
    if (!s->position->is_undecided(cell)) throw IllegalMoveError("cell is occupied");
    s->tosses.clear();
    play(*s, cell, s->human, "human");
    advance(*s);
    return snapshot(*s);
  }

  Json heatmap(const std::string& id) {
    auto s = find(id);
    std::lock_guard guard(s->mutex);
    const int key = static_cast<int>(s->record.moves.size());
    if (!s->heatmap || s->heatmap_key != key) {
      if (s->position->undecided_count() == 0) {
        s->heatmap = PivotalEstimate{std::vector<std::int64_t>(s->spec->n(), 0), s->samples, s->p, s->seed};
      } else {
        s->heatmap = estimate_pivotality(*s->position, s->samples, s->seed, options_.threads);
      }
      s->heatmap_key = key;
    }
    Json values = Json::array();
    for (int c = 0; c < s->spec->n(); ++c) {
      values.push_back({{"cell", cell_json(*s->spec, c)}, {"value", s->heatmap->estimate(c)}});
    }
    return {{"id", s->id}, {"turn", s->turn}, {"samples", s->samples}, {"seed", s->seed}, {"values", values}};
  }

  Json resign(const std::string& id) {
    auto s = find(id);
    std::lock_guard guard(s->mutex);
    if (s->status == SessionStatus::kFinished) throw GameOverError("game " + id + " is over");
    s->tosses.clear();
    s->resigned = true;
    finish(*s, s->human == Side::kI ? Winner::kII : Winner::kI);
    return snapshot(*s);
  }

  // Finished game as a record, for replay checks.
  GameRecord record(const std::string& id) const {
    auto s = find(id);
    std::lock_guard guard(s->mutex);
    return s->record;
  }

  SpecPtr spec(const std::string& id) const { return find(id)->spec; }

 private:
  struct Session {
    std::string id;
    SpecPtr spec;
    std::unique_ptr<GamePosition> position;
    GameRecord record;
    std::vector<std::string> movers;
    std::vector<char> played;
    Side human = Side::kI;
    double p = 0.5;
    std::int64_t samples = kDefaultEngineSamples;
    std::uint64_t seed = 0;
    int turn = 1;  // turn whose coin is tossed next, or awaited
    SessionStatus status = SessionStatus::kAwaitingHuman;
    Winner winner = Winner::kUndetermined;
    bool resigned = false;
    std::vector<MoveRecord> tosses;  // since the last request
    std::optional<PivotalEstimate> heatmap;
    int heatmap_key = -1;
    mutable std::mutex mutex;
  };

  static double number_field(const Json& body, const char* key, double fallback) {
    if (!body.contains(key)) return fallback;
    const auto& v = body[key];
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return to_double(parse_rational(v.get<std::string>()));
    throw DomainError(std::string(key) + " must be a number");
  }

  static int parse_cell(const GameSpec& spec, const Json& cell) {
    if (cell.is_number_integer()) {
      const int c = cell.get<int>();
      if (c < 0 || c >= spec.n()) throw IllegalMoveError("cell " + std::to_string(c) + " is off the board");
      return c;
    }
    if (cell.is_array() && cell.size() == 2 && cell[0].is_number_integer() && cell[1].is_number_integer()) {
      const int r = cell[0].get<int>(), c = cell[1].get<int>();
      for (const auto& x : spec.board.cells) {
        if (x.coords && (*x.coords)[0] == r && (*x.coords)[1] == c) return x.id;
      }
      throw IllegalMoveError("cell [" + std::to_string(r) + "," + std::to_string(c) + "] is off the board");
    }
    throw DomainError("cell must be [row, col] or an integer id");
  }

  std::string make_id(std::uint64_t n) const {
    char buf[24];
    std::snprintf(buf, sizeof buf, "g%012llx",
                  static_cast<unsigned long long>(derive_seed(0x5EED, n) & 0xFFFFFFFFFFFFull));
    return buf;
  }

  std::shared_ptr<Session> find(const std::string& id) const {
    std::shared_lock lock(sessions_mutex_);
    const auto it = sessions_.find(id);
    if (it == sessions_.end()) throw NoSuchGameError("no game with id \"" + id + "\"");
    return it->second;
  }

  void play(Session& s, int cell, Side mover, const char* by) {
    *s.position = s.position->apply_move(cell, mover);
    s.record.moves.push_back({s.turn, mover, cell});
    s.movers.push_back(by);
    if (s.record.moves.size() > 1) {
      bool touches = false;
      for (int d : s.spec->board.adjacency[cell]) touches = touches || s.played[d];
      if (!touches) ++s.record.disconnected_move_count;
    }
    s.played[cell] = 1;
    ++s.turn;
    const Outcome o = winner_determined(*s.position);
    if (o.winner != Winner::kUndetermined) finish(s, o.winner);
  }

  // Tosses coins and plays engine moves until the human is to move.
  void advance(Session& s) {
    const StrategyConfig config{s.samples, lowest_id_tie_rule(), options_.threads};
    while (s.status != SessionStatus::kFinished) {
      const Side mover = coin_for_turn(s.seed, s.turn, s.p);
      s.tosses.push_back({s.turn, mover, -1});
      if (mover == s.human) return;
      const int cell = choose_move_mc(*s.position, config, move_seed(s.seed, s.turn)).cell;
      s.tosses.back().cell = cell;
      play(s, cell, mover, "engine");
    }
  }

  void finish(Session& s, Winner w) {
    s.status = SessionStatus::kFinished;
    s.winner = w;
    s.record.winner = w;
    s.record.length = static_cast<int>(s.record.moves.size());
    s.record.value = w == Winner::kI ? 1.0 : -1.0;
    s.record.connected_throughout = s.record.disconnected_move_count == 0;
    if (!options_.log_path.empty()) {
      std::lock_guard guard(log_mutex_);
      std::ofstream out(options_.log_path, std::ios::app);
      Json j = to_json(s.record);
      j["id"] = s.id;
      j["resigned"] = s.resigned;
      out << j.dump() << "\n";
    }
  }

  Json snapshot(const Session& s) const {
    const auto& b = s.spec->board;
    Json cells = Json::array();
    for (int c = 0; c < b.n; ++c) {
      const int o = s.position->owner(c);
      cells.push_back({{"cell", cell_json(*s.spec, c)}, {"owner", o > 0 ? "I" : o < 0 ? "II" : ""}});
    }
    Json tosses = Json::array();
    for (const auto& t : s.tosses) {
      Json j{{"turn", t.turn}, {"coin", to_string(t.coin)}};
      if (t.cell >= 0) j["engine_cell"] = cell_json(*s.spec, t.cell);
      tosses.push_back(std::move(j));
    }
    Json moves = Json::array();
    for (std::size_t k = 0; k < s.record.moves.size(); ++k) {
      const auto& m = s.record.moves[k];
      moves.push_back(
          {{"turn", m.turn}, {"coin", to_string(m.coin)}, {"cell", cell_json(*s.spec, m.cell)}, {"by", s.movers[k]}});
    }
    Json to_win;
    if (b.is_site_crossing()) {
      to_win = {{"I", "connect row 0 to row " + std::to_string(b.rows - 1)},
                {"II", "connect column 0 to column " + std::to_string(b.cols - 1)}};
    } else {
      to_win = {{"I", "join the left and right sides with shorted edges"}, {"II", "cut every left-right path"}};
    }
    Json j;
    j["id"] = s.id;
    j["game"] = s.spec->game;
    j["board"] = {{"L", b.rows}, {"cols", b.cols}, {"cells", cells}};
    j["toWin"] = to_win;
    j["p"] = s.p;
    j["seed"] = s.seed;
    j["humanSide"] = to_string(s.human);
    j["engineSamples"] = s.samples;
    j["turn"] = s.turn;
    j["lastTosses"] = tosses;
    j["moves"] = moves;
    j["status"] = to_string(s.status);
    if (s.status == SessionStatus::kFinished) {
      j["winner"] = to_string(s.winner);
      j["resigned"] = s.resigned;
    }
    return j;
  }

  ServiceOptions options_;
  mutable std::shared_mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t next_id_ = 0;
  std::mutex log_mutex_;
};

// HTTP status for a wire error code.
inline int http_status_for(const std::string& code) {
  if (code == "no-such-game") return 404;
  if (code == "illegal-move" || code == "not-your-turn" || code == "game-over") return 409;
  return 400;
}

inline void register_routes(httplib::Server& server, GameService& service, const std::string& static_dir = "") {
  auto respond = [](httplib::Response& res, const auto& fn) {
    try {
      res.set_content(fn().dump(), "application/json");
    } catch (const Error& e) {
      res.status = http_status_for(e.code());
      res.set_content(Json{{"code", e.code()}, {"message", e.what()}}.dump(), "application/json");
    } catch (const Json::exception& e) {
      res.status = 400;
      res.set_content(Json{{"code", "bad-args"}, {"message", e.what()}}.dump(), "application/json");
    }
  };
  auto body_of = [](const httplib::Request& req) {
    if (req.body.empty()) return Json::object();
    return Json::parse(req.body);
  };
  server.Post("/games", [=, &service](const httplib::Request& req, httplib::Response& res) {
    respond(res, [&] { return service.create_game(body_of(req)); });
  });
  server.Get("/games", [=, &service](const httplib::Request&, httplib::Response& res) {
    respond(res, [&] { return service.list_games(); });
  });
  server.Get(R"(/games/([^/]+))", [=, &service](const httplib::Request& req, httplib::Response& res) {
    respond(res, [&] { return service.get_state(req.matches[1]); });
  });
  server.Post(R"(/games/([^/]+)/moves)", [=, &service](const httplib::Request& req, httplib::Response& res) {
    respond(res, [&] { return service.post_move(req.matches[1], body_of(req)); });
  });
  server.Get(R"(/games/([^/]+)/heatmap)", [=, &service](const httplib::Request& req, httplib::Response& res) {
    respond(res, [&] { return service.heatmap(req.matches[1]); });
  });
  server.Post(R"(/games/([^/]+)/resign)", [=, &service](const httplib::Request& req, httplib::Response& res) {
    respond(res, [&] { return service.resign(req.matches[1]); });
  });
  if (!static_dir.empty()) server.set_mount_point("/", static_dir);
}

}  // namespace rtsg
