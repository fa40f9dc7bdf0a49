/*
 * Copyright 2026 The HazardScout Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace hazardscout {

using Rng = std::mt19937_64;

/// Tags that keep the independent PRNG streams of one trial apart.
enum class Stream : std::uint32_t {
  kInstance = 1,
  kAugment = 2,
  kNoise = 3,
  kOptimizer = 4,
};

/// Builds a generator from a list of integers through std::seed_seq, so
/// neighbouring seeds do not produce correlated streams.
inline Rng make_rng(std::initializer_list<std::uint64_t> parts) {
  std::vector<std::uint32_t> words;
  words.reserve(parts.size() * 2);
  for (std::uint64_t p : parts) {
    words.push_back(static_cast<std::uint32_t>(p & 0xffffffffu));
    words.push_back(static_cast<std::uint32_t>(p >> 32));
  }
  std::seed_seq seq(words.begin(), words.end());
  return Rng(seq);
}

inline Rng make_stream(std::uint64_t seed, Stream stream,
                       std::uint64_t a = 0, std::uint64_t b = 0) {
  return make_rng({seed, static_cast<std::uint64_t>(stream), a, b});
}

/// Instance seed for one Monte Carlo trial.
/// Folds several integers into one 64-bit seed (splitmix64 finalizer).
inline std::uint64_t mix_seed(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (std::uint64_t p : parts) {
    std::uint64_t z = h ^ (p + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    h = z ^ (z >> 31);
  }
  return h;
}

inline std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t trial) {
  return base_seed * 1000000ULL + trial;
}

}  // namespace hazardscout
