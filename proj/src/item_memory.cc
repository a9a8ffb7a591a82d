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

#include "fslhdc/item_memory.h"

#include <numeric>
#include <string>

namespace fslhdc::hdc {
namespace {
enum Bank : uint64_t { kPositionBank = 1, kValueBank = 2, kLevelOrderBank = 3 };
}  // namespace

ItemMemory::ItemMemory(const ItemMemoryOptions &options) : options_(options) {
  const std::size_t dim = options.dim;
  if (dim == 0) throw InvalidArgument("item memory: dim must be positive");
  if (options.num_positions == 0 || options.num_levels == 0) {
    throw InvalidArgument("item memory: bank sizes must be positive");
  }
  if (options.num_levels > 256) throw InvalidArgument("item memory: at most 256 value levels");

  position_hvs_.reserve(options.num_positions);
  for (std::size_t k = 0; k < options.num_positions; ++k) {
    RandomStream rng(options.seed, kPositionBank, k);
    position_hvs_.push_back(RandomBipolar(dim, rng));
  }

  value_hvs_.reserve(options.num_levels);
  if (options.value_encoding == ValueEncoding::kRandom) {
    for (std::size_t v = 0; v < options.num_levels; ++v) {
      RandomStream rng(options.seed, kValueBank, v);
      value_hvs_.push_back(RandomBipolar(dim, rng));
    }
  } else {
    RandomStream base_rng(options.seed, kValueBank, 0);
    const Hypervector base = RandomBipolar(dim, base_rng);
    std::vector<std::size_t> order(dim);
    std::iota(order.begin(), order.end(), std::size_t{0});
    RandomStream order_rng(options.seed, kLevelOrderBank, 0);
    Shuffle(std::span<std::size_t>(order), order_rng);
    const std::size_t half = dim / 2;
    const std::size_t top = options.num_levels - 1;
    Hypervector current = base;
    std::size_t flipped = 0;
    for (std::size_t v = 0; v < options.num_levels; ++v) {
      const std::size_t target = top == 0 ? 0 : v * half / top;
      for (; flipped < target; ++flipped) current[order[flipped]] = -current[order[flipped]];
      value_hvs_.push_back(current);
    }
  }

  position_table_.resize(options.num_positions * dim);
  base_.assign(dim, 0);
  const auto v0 = value_hvs_[0].values();
  for (std::size_t k = 0; k < options.num_positions; ++k) {
    const auto p = position_hvs_[k].values();
    int16_t *row = &position_table_[k * dim];
    for (std::size_t i = 0; i < dim; ++i) {
      row[i] = static_cast<int16_t>(p[i]);
      base_[i] += p[i] * v0[i];
    }
  }
  delta_table_.resize(options.num_levels * dim);
  for (std::size_t v = 0; v < options.num_levels; ++v) {
    const auto hv = value_hvs_[v].values();
    int16_t *row = &delta_table_[v * dim];
    for (std::size_t i = 0; i < dim; ++i) row[i] = static_cast<int16_t>(hv[i] - v0[i]);
  }
}

Hypervector ItemMemory::Encode(std::span<const uint8_t> pixels) const {
  if (pixels.size() != options_.num_positions) {
    throw InvalidArgument("encode: expected " + std::to_string(options_.num_positions) + " pixels, got " +
                          std::to_string(pixels.size()));
  }
  for (uint8_t p : pixels) {
    if (p >= options_.num_levels) throw InvalidArgument("encode: pixel value " + std::to_string(p) + " out of range");
  }
  return EncodeChecked(pixels);
}

Hypervector ItemMemory::Encode(std::span<const int> pixels) const {
  if (pixels.size() != options_.num_positions) {
    throw InvalidArgument("encode: expected " + std::to_string(options_.num_positions) + " pixels, got " +
                          std::to_string(pixels.size()));
  }
  std::vector<uint8_t> bytes(pixels.size());
  for (std::size_t k = 0; k < pixels.size(); ++k) {
    if (pixels[k] < 0 || static_cast<std::size_t>(pixels[k]) >= options_.num_levels) {
      throw InvalidArgument("encode: pixel value " + std::to_string(pixels[k]) + " out of range");
    }
    bytes[k] = static_cast<uint8_t>(pixels[k]);
  }
  return EncodeChecked(bytes);
}

Hypervector ItemMemory::EncodeChecked(std::span<const uint8_t> pixels) const {
  const std::size_t dim = options_.dim;
  // |partial| <= 2 * num_positions; int16 holds it for up to 16383 positions.
  std::vector<int16_t> partial(dim, 0);
  std::vector<int32_t> out(base_);
  std::size_t terms = 0;
  auto flush = [&] {
    for (std::size_t i = 0; i < dim; ++i) {
      out[i] += partial[i];
      partial[i] = 0;
    }
    terms = 0;
  };
  for (std::size_t k = 0; k < pixels.size(); ++k) {
    if (pixels[k] == 0) continue;
    const int16_t *pos = &position_table_[k * dim];
    const int16_t *delta = &delta_table_[pixels[k] * dim];
    int16_t *acc = partial.data();
    for (std::size_t i = 0; i < dim; ++i) acc[i] = static_cast<int16_t>(acc[i] + pos[i] * delta[i]);
    if (++terms == 8192) flush();
  }
  flush();
  return Hypervector(std::move(out));
}

}  // namespace fslhdc::hdc
