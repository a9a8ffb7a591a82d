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

#include "fslhdc/random.h"

#include <cstdint>
#include <stdexcept>

namespace fslhdc {
namespace {
constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}  // namespace

uint64_t Mix64(uint64_t x) {
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

uint64_t DeriveSeed(uint64_t seed, uint64_t tag) { return Mix64(Mix64(seed + kGolden) ^ (tag * kGolden + 1)); }

uint64_t DeriveSeed(uint64_t seed, uint64_t tag, uint64_t index) {
  return Mix64(DeriveSeed(seed, tag) ^ Mix64(index + 0x632BE59BD9B4E019ULL));
}

RandomStream::RandomStream(uint64_t seed, uint64_t stream, uint64_t index)
    : key_(DeriveSeed(seed, stream, index)) {}

uint64_t RandomStream::Next() {
  ++counter_;
  return Mix64(key_ + counter_ * kGolden);
}

uint64_t RandomStream::Uniform(uint64_t bound) {
  if (bound == 0) {
    throw std::invalid_argument("RandomStream::Uniform: bound must be positive");
  }
  // Reject the tail that would bias the modulus.
  const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  uint64_t x = Next();
  while (x >= limit) {
    x = Next();
  }
  return x % bound;
}

double RandomStream::Uniform01() { return static_cast<double>(Next() >> 11) * 0x1.0p-53; }

}  // namespace fslhdc
