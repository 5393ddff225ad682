// Copyright 2026 The qcoh authors.
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

#ifndef QCOH_RNG_HPP
#define QCOH_RNG_HPP

#include <cstdint>
#include <random>

namespace qcoh {

// SplitMix64 finalizer, used to derive independent sub-streams from
// (seed, counter...) tuples so that results do not depend on execution order.
inline uint64_t mix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline uint64_t sub_seed(uint64_t seed, uint64_t a) { return mix64(seed ^ mix64(a)); }

inline uint64_t sub_seed(uint64_t seed, uint64_t a, uint64_t b) {
  return mix64(seed ^ mix64(a ^ mix64(b)));
}

// mt19937_64 is fully specified by the standard, so identical seeds give
// bit-identical streams on every platform.
inline std::mt19937_64 make_rng(uint64_t seed) { return std::mt19937_64(seed); }

}  // namespace qcoh

#endif
