// Copyright 2026 The finsent Authors.
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

#ifndef FINSENT_RANDOM_H_
#define FINSENT_RANDOM_H_

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace finsent {

// SplitMix64. Used to derive independent sub-seeds from one run seed: the
// k-th derived seed (k = 0, 1, ...) is the (k+1)-th output of a generator
// whose state starts at the run seed.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t state) : state_(state) {}
  uint64_t Next() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

 private:
  uint64_t state_;
};

inline uint64_t DeriveSeed(uint64_t run_seed, uint64_t k) {
  SplitMix64 g(run_seed);
  uint64_t out = 0;
  for (uint64_t i = 0; i <= k; ++i) out = g.Next();
  return out;
}

// Uniform integer in [0, n) by rejection; identical across standard
// libraries, unlike std::uniform_int_distribution.
inline uint64_t UniformIndex(std::mt19937_64& rng, uint64_t n) {
  const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return r % n;
}

// Uniform double in [0, 1) from the top 53 bits.
inline double UniformUnit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template <typename T>
void Shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (size_t i = v.size(); i > 1; --i) {
    const size_t j = UniformIndex(rng, i);
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace finsent

#endif  // FINSENT_RANDOM_H_
