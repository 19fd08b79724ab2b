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

// Counter-based random numbers. Every draw is a pure function of
// (seed, stream, index, position), so sample i of a Monte-Carlo run can be
// produced by any worker in any order and still come out bit-identical.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace rtsg {

// Philox4x32-10 (Salmon, Moraes, Dror, Shaw; SC'11).
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr Counter apply(Counter ctr, Key key) noexcept {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kWeylA;
        key[1] += kWeylB;
      }
      const std::uint64_t p0 = std::uint64_t{kMulA} * ctr[0];
      const std::uint64_t p1 = std::uint64_t{kMulB} * ctr[2];
      const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
      const auto lo0 = static_cast<std::uint32_t>(p0);
      const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
      const auto lo1 = static_cast<std::uint32_t>(p1);
      ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
  }

 private:
  static constexpr std::uint32_t kMulA = 0xD2511F53u;
  static constexpr std::uint32_t kMulB = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeylA = 0x9E3779B9u;
  static constexpr std::uint32_t kWeylB = 0xBB67AE85u;
};

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Derives an independent 64-bit seed from a parent seed and a label.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t label) noexcept {
  return splitmix64(splitmix64(seed) ^ (label * 0xD6E8FEB86659FD93ull));
}

// Logical streams. Different purposes never share counters.
enum class Stream : std::uint32_t {
  kCompletion = 1,
  kCoin = 2,
  kMoveSeed = 3,
  kTable = 4,
  kConfiguration = 5,
  kTreeGame = 6,
  kRandomStrategy = 7,
  kGameSeed = 8,
};

class CounterRng {
 public:
  CounterRng(std::uint64_t seed, Stream stream) noexcept
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        stream_(static_cast<std::uint32_t>(stream)) {}

  // Four 32-bit words for block `block` of sample `index`.
  Philox4x32::Counter block(std::uint64_t index, std::uint32_t block) const noexcept {
    return Philox4x32::apply({block, static_cast<std::uint32_t>(index),
                              static_cast<std::uint32_t>(index >> 32), stream_},
                             key_);
  }

  std::uint32_t word(std::uint64_t index, std::uint64_t position) const noexcept {
    return block(index, static_cast<std::uint32_t>(position >> 2))[position & 3];
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform(std::uint64_t index, std::uint64_t position = 0) const noexcept {
    const auto b = block(index, static_cast<std::uint32_t>(position));
    const std::uint64_t bits = (std::uint64_t{b[0]} << 21) ^ (std::uint64_t{b[1]} >> 11);
    return static_cast<double>(bits & ((std::uint64_t{1} << 53) - 1)) * 0x1.0p-53;
  }

  std::uint64_t u64(std::uint64_t index, std::uint64_t position = 0) const noexcept {
    const auto b = block(index, static_cast<std::uint32_t>(position));
    return (std::uint64_t{b[0]} << 32) | b[1];
  }

 private:
  Philox4x32::Key key_;
  std::uint32_t stream_;
};

// A 32-bit word w is a success iff w < threshold; exact for p = k / 2^32.
inline std::uint64_t bernoulli_threshold(double p) noexcept {
  if (p <= 0.0) return 0;
  if (p >= 1.0) return std::uint64_t{1} << 32;
  return static_cast<std::uint64_t>(std::ldexp(p, 32));
}

}  // namespace rtsg
