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

#ifndef FSLHDC_ITEM_MEMORY_H_
#define FSLHDC_ITEM_MEMORY_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fslhdc/hypervector.h"

namespace fslhdc::hdc {

enum class ValueEncoding {
  // value_hvs[v] flips the first floor(v * (D/2) / (levels-1)) entries of a
  // fixed random ordering of D/2 positions, so nearby intensities stay similar.
  kLevel,
  // Every value HV drawn independently.
  kRandom,
};

struct ItemMemoryOptions {
  std::size_t dim = 10000;
  uint64_t seed = 0;
  std::size_t num_positions = 784;
  std::size_t num_levels = 256;
  ValueEncoding value_encoding = ValueEncoding::kLevel;
};

// Position bank (one bipolar HV per pixel location) and value bank (one bipolar
// HV per intensity). Every HV is a pure function of (seed, bank, index), so any
// party regenerating from the same options gets bit-identical banks.
// Immutable after construction.
class ItemMemory {
 public:
  explicit ItemMemory(const ItemMemoryOptions &options);

  const ItemMemoryOptions &options() const { return options_; }
  std::size_t dim() const { return options_.dim; }
  const std::vector<Hypervector> &position_hvs() const { return position_hvs_; }
  const std::vector<Hypervector> &value_hvs() const { return value_hvs_; }

  // Record-based encoding: sum over k of position_hvs[k] (*) value_hvs[pixels[k]].
  // Throws InvalidArgument on a wrong pixel count or out-of-range value.
  Hypervector Encode(std::span<const uint8_t> pixels) const;
  Hypervector Encode(std::span<const int> pixels) const;

 private:
  Hypervector EncodeChecked(std::span<const uint8_t> pixels) const;

  ItemMemoryOptions options_;
  std::vector<Hypervector> position_hvs_;
  std::vector<Hypervector> value_hvs_;

  // Encoder tables. Writing value_hvs[v] = value_hvs[0] + delta[v], the
  // encoding is base + sum over pixels with v != 0 of position[k] (*) delta[v],
  // where base = sum over all k of position[k] (*) value_hvs[0].
  std::vector<int16_t> position_table_;  // num_positions x dim, entries +-1
  std::vector<int16_t> delta_table_;     // num_levels x dim, entries in {-2, 0, 2}
  std::vector<int32_t> base_;            // dim
};

// Convenience free function with the argument order used elsewhere.
inline Hypervector EncodeSample(std::span<const uint8_t> pixels, const ItemMemory &im) { return im.Encode(pixels); }

}  // namespace fslhdc::hdc

#endif  // FSLHDC_ITEM_MEMORY_H_
