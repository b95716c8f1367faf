/*
Copyright 2026 The PJ Codec Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS-IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

// Seed derivation. Every random decision is keyed by (seed, entity, slot) so
// results do not depend on iteration order or thread count.

#pragma once

#include <cstdint>
#include <random>

namespace pj {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  return splitmix64(splitmix64(splitmix64(seed) ^ a) ^ (b * 0xd1b54a32d192ed03ULL));
}

/// Uniform double in [0, 1) from the top 53 bits.
constexpr double to_unit(std::uint64_t x) { return static_cast<double>(x >> 11) * 0x1.0p-53; }

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() { return to_unit(gen_()); }
  bool bernoulli(double p) { return p > 0.0 && uniform() < p; }
  /// Uniform integer in [0, n); n > 0.
  unsigned below(unsigned n) { return static_cast<unsigned>(uniform() * n); }
  unsigned poisson(double mean) {
    if (mean <= 0.0) return 0;
    return std::poisson_distribution<unsigned>(mean)(gen_);
  }

 private:
  std::mt19937_64 gen_;
};

// Slot tags keep independent decisions for one entity uncorrelated.
inline constexpr std::uint64_t kSlotDrop = 0x64726f70;      // "drop"
inline constexpr std::uint64_t kSlotCoverage = 0x636f7665;  // "cove"
inline constexpr std::uint64_t kSlotRead = 0x72656164;      // "read"

}  // namespace pj
