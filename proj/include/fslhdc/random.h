/**
 * Copyright 2026 The fslhdc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef FSLHDC_RANDOM_H_
#define FSLHDC_RANDOM_H_

#include <cstddef>
#include <cstdint>
#include <span>

namespace fslhdc {

// Stateless 64-bit mixer (the SplitMix64 finalizer).
uint64_t Mix64(uint64_t x);

// Derives an independent key from a parent key and a tag. Used to give every
// consumer of the master seed its own stream, so draws in one place never shift
// draws in another.
uint64_t DeriveSeed(uint64_t seed, uint64_t tag);
uint64_t DeriveSeed(uint64_t seed, uint64_t tag, uint64_t index);

// Counter-based generator: the n-th output is Mix64(key + n * golden). Two
// streams built from the same (seed, stream, index) produce identical output,
// independent of any other stream's history.
class RandomStream {
 public:
  explicit RandomStream(uint64_t seed, uint64_t stream = 0, uint64_t index = 0);

  uint64_t Next();
  // Uniform integer in [0, bound) by rejection; bound must be positive.
  uint64_t Uniform(uint64_t bound);
  // Uniform double in [0, 1) with 53 random bits.
  double Uniform01();

 private:
  uint64_t key_;
  uint64_t counter_ = 0;
};

// Fisher-Yates shuffle driven by `rng`; portable across standard libraries.
template <typename T>
void Shuffle(std::span<T> items, RandomStream &rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng.Uniform(i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace fslhdc

#endif  // FSLHDC_RANDOM_H_
