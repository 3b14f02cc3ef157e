// Copyright 2026 The G-CADA Simulator Authors. All Rights Reserved.
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
// =============================================================================

#ifndef GCADA_RNG_HPP
#define GCADA_RNG_HPP

#include <array>
#include <cmath>
#include <cstdint>

namespace gcada {

// Philox4x32-10 block cipher (Salmon et al., SC'11). Stateless: every draw
// is a pure function of (key, counter), so streams can be addressed by
// (seed, iteration, worker) without any sequencing between consumers.
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

constexpr PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) {
  constexpr std::uint32_t kMul0 = 0xD2511F53u;
  constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
    const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

// Independent sub-streams of one experiment seed.
enum class StreamTag : std::uint32_t {
  kComputeTime = 0,
  kMiniBatch = 1,
  kMonteCarlo = 2,
  kPowerIteration = 3,
  kSynthFeatures = 4,
  kSynthTruth = 5,
  kSynthNoise = 6,
};

// Addressable uniform/normal draws keyed by a 64-bit seed.
class CounterRng {
 public:
  explicit constexpr CounterRng(std::uint64_t seed)
      : key_{static_cast<std::uint32_t>(seed),
             static_cast<std::uint32_t>(seed >> 32)} {}

  // Raw 128 bits for (tag, a, b, c).
  PhiloxCounter block(StreamTag tag, std::uint32_t a, std::uint32_t b,
                      std::uint32_t c) const {
    return philox4x32_10({c, b, a, static_cast<std::uint32_t>(tag)}, key_);
  }

  // Uniform on (0, 1], 53-bit resolution.
  double uniform(StreamTag tag, std::uint32_t a, std::uint32_t b,
                 std::uint32_t c) const {
    const auto w = block(tag, a, b, c);
    return to_open_closed(join(w[0], w[1]));
  }

  // Standard normal via Box-Muller (cosine branch only). Hand-rolled so the
  // value does not depend on the standard library implementation.
  double normal(StreamTag tag, std::uint32_t a, std::uint32_t b,
                std::uint32_t c) const {
    const auto w = block(tag, a, b, c);
    const double u1 = to_open_closed(join(w[0], w[1]));
    const double u2 = to_open_closed(join(w[2], w[3]));
    constexpr double kTwoPi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
  }

  std::uint64_t seed() const {
    return std::uint64_t{key_[0]} | (std::uint64_t{key_[1]} << 32);
  }

 private:
  static constexpr std::uint64_t join(std::uint32_t lo, std::uint32_t hi) {
    return std::uint64_t{lo} | (std::uint64_t{hi} << 32);
  }
  static constexpr double to_open_closed(std::uint64_t bits) {
    return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
  }

  PhiloxKey key_;
};

// Inverse-CDF exponential with mean `mean`: t = -mean * ln(u), u in (0, 1].
inline double exponential_from_uniform(double u, double mean) {
  return 0.0 - mean * std::log(u);  // +0.0 at u == 1
}

}  // namespace gcada

#endif  // GCADA_RNG_HPP
