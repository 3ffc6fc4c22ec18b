// Copyright 2026 The tinytrack Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TINYTRACK_RNG_HPP_
#define TINYTRACK_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <random>

namespace tinytrack {

// Deterministic draws built directly on the mt19937_64 bit stream. The
// std::*_distribution adaptors are implementation-defined sequences; these
// helpers pin byte-identical output to the seed alone.

inline double uniform01(std::mt19937_64& rng) {
  // 53 mantissa bits; result in [0, 1).
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_range(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi_inclusive) {
  const auto span = static_cast<std::uint64_t>(hi_inclusive - lo) + 1;
  return lo + static_cast<int>(rng() % span);
}

inline double exponential_draw(std::mt19937_64& rng, double lambda) {
  // Inverse CDF; log1p keeps precision for small uniforms.
  return -std::log1p(-uniform01(rng)) / lambda;
}

inline double normal_draw(std::mt19937_64& rng, double mean, double stddev) {
  // Box-Muller, one draw per call (the sine partner is discarded so the
  // stream stays a pure function of call count).
  double u1 = uniform01(rng);
  double u2 = uniform01(rng);
  while (u1 <= 0.0) u1 = uniform01(rng);
  const double z = std::sqrt(-2.0 * std::log(u1)) *
                   std::cos(2.0 * 3.14159265358979323846 * u2);
  return mean + stddev * z;
}

// splitmix64; used to derive independent per-frame seeds from a scenario seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace tinytrack

#endif  // TINYTRACK_RNG_HPP_
