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

#include <stdexcept>
#include <string>

namespace rtsg {

// Base of every error raised by the library. `code()` is a stable short
// identifier that the CLI and the HTTP service put on the wire.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

#define RTSG_DEFINE_ERROR(Name, wire_code)                     \
  class Name : public Error {                                  \
   public:                                                     \
    explicit Name(const std::string& message)                  \
        : Error(wire_code, message) {}                         \
  }

RTSG_DEFINE_ERROR(SizingError, "bad-size");
RTSG_DEFINE_ERROR(CapacityError, "capacity");
RTSG_DEFINE_ERROR(IllegalMoveError, "illegal-move");
RTSG_DEFINE_ERROR(UnsupportedGameError, "unsupported-game");
RTSG_DEFINE_ERROR(PrecoloringError, "precoloring-conflict");
RTSG_DEFINE_ERROR(GameOverError, "game-over");
RTSG_DEFINE_ERROR(GenericityError, "genericity-violation");
RTSG_DEFINE_ERROR(FaultingStrategyError, "faulting-strategy");
RTSG_DEFINE_ERROR(DegenerateFunctionError, "degenerate-function");
RTSG_DEFINE_ERROR(DomainError, "bad-args");
RTSG_DEFINE_ERROR(NotYourTurnError, "not-your-turn");
RTSG_DEFINE_ERROR(NoSuchGameError, "no-such-game");

#undef RTSG_DEFINE_ERROR

}  // namespace rtsg
