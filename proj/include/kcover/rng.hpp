// Copyright 2026 The Authors.
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

#ifndef KCOVER_RNG_HPP_
#define KCOVER_RNG_HPP_

#include <cstdint>

namespace kcover {

// SplitMix64 (Steele/Lea/Flood, public-domain reference constants). Used to
// expand 64-bit seeds into generator state and to derive substream seeds.
struct SplitMix64 {
  std::uint64_t state;

  explicit constexpr SplitMix64(std::uint64_t seed) : state(seed) {}

  constexpr std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
};

// xoshiro256** 1.0 (Blackman/Vigna, public-domain reference algorithm),
// seeded through SplitMix64 so every 64-bit seed (including 0) yields a
// valid state. Integer-only arithmetic: streams are bit-identical across
// platforms, which is what makes seeded experiments replayable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    SplitMix64 sm(seed);
    for (auto& word : state_) word = sm.next();
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Unbiased uniform draw from [0, bound) by rejection. bound must be >= 1.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

  // Uniform cover index in {1, ..., k}.
  std::uint32_t next_index(std::uint32_t k) {
    return static_cast<std::uint32_t>(next_below(k)) + 1;
  }

  // Uniform double in [0, 1) with 53 significant bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int s) {
    return (x << s) | (x >> (64 - s));
  }

  std::uint64_t state_[4];
};

// Seed for an independent substream of `master`. Substreams with distinct
// indexes are decorrelated through the SplitMix64 mix.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  SplitMix64 sm(master ^ (0x9E3779B97F4A7C15ULL * (stream + 1)));
  return sm.next();
}

}  // namespace kcover

#endif  // KCOVER_RNG_HPP_
