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

// Portable seeded randomness. std::mt19937_64 output is pinned by the
// standard, but the standard <random> distributions are not, so every
// distribution used anywhere in the engine is implemented here by hand.
// Results are therefore bit-identical across compilers and platforms.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace hypersc {

// splitmix64 finalizer; used to derive independent stream seeds so that,
// e.g., toggling the budget strategy never perturbs workload generation.
inline std::uint64_t mix_seed(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream_tag) {
  return mix_seed(seed ^ mix_seed(stream_tag));
}

// Dedicated stream tags.
inline constexpr std::uint64_t kStreamWorkload = 0x776f726b6c6f6164ULL;
inline constexpr std::uint64_t kStreamAllocator = 0x616c6c6f63ULL;
inline constexpr std::uint64_t kStreamBudgetSplit = 0x73706c6974ULL;
inline constexpr std::uint64_t kStreamNsga = 0x6e736761ULL;
inline constexpr std::uint64_t kStreamHistory = 0x68697374ULL;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform double in (0, 1]; complement of uniform01.
  double uniform01_open_low() { return 1.0 - uniform01(); }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer in [0, n); fixed-point multiply keeps this portable.
  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    __extension__ using u128 = unsigned __int128;
    const u128 m = static_cast<u128>(engine_()) * static_cast<u128>(n);
    return static_cast<std::uint64_t>(m >> 64);
  }

  // Uniform integer in [lo, hi], inclusive.
  long long uniform_int(long long lo, long long hi) {
    if (hi <= lo) return lo;
    return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  // Knuth's product method; switches to a rounded normal approximation for
  // large means where exp(-mean) would underflow.
  long long poisson(double mean) {
    if (mean <= 0.0) return 0;
    if (mean > 500.0) {
      const double draw = mean + std::sqrt(mean) * normal();
      return draw < 0.0 ? 0 : static_cast<long long>(std::llround(draw));
    }
    const double limit = std::exp(-mean);
    long long count = -1;
    double product = 1.0;
    do {
      product *= uniform01_open_low();
      ++count;
    } while (product > limit);
    return count;
  }

  // Box-Muller; one value per call, spare cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform01_open_low();
    const double u2 = uniform01();
    const double mag = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * 3.14159265358979323846 * u2;
    spare_ = mag * std::sin(angle);
    has_spare_ = true;
    return mag * std::cos(angle);
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace hypersc
