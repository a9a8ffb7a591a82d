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

#ifndef FSLHDC_DATASET_H_
#define FSLHDC_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace fslhdc::data {

// Images stored row-major in one buffer. `ids` carries each sample's index in
// the file it was loaded from, so subsets and partitions stay traceable.
struct Dataset {
  std::string name;
  std::size_t image_size = 784;
  std::vector<uint8_t> pixels;
  std::vector<int> labels;
  std::vector<std::size_t> ids;

  std::size_t size() const { return labels.size(); }
  std::span<const uint8_t> image(std::size_t i) const {
    return std::span<const uint8_t>(pixels).subspan(i * image_size, image_size);
  }

  // Copies the given rows, in the given order.
  Dataset Select(std::span<const std::size_t> rows, std::string new_name) const;
  void Append(const Dataset &other, std::size_t row);
};

enum class PartitionMode { kIid, kNonIidShards };

struct PartitionSpec {
  PartitionMode mode = PartitionMode::kIid;
  std::size_t num_clients = 10;
  std::size_t per_class_per_client = 60;
  std::size_t num_shards = 20;
  std::size_t shards_per_client = 2;
  uint64_t seed = 0;
};

// Parses an IDX image file (magic 0x00000803) and label file (magic
// 0x00000801). Either may be gzip-compressed. Throws FormatError naming the
// offending field; never returns a partial dataset.
Dataset LoadIdx(const std::string &images_path, const std::string &labels_path, std::string name = "mnist");

// Exactly `per_class` samples of each label 0-9, drawn without replacement.
// Output is ordered by source row.
Dataset Subsample(const Dataset &ds, std::size_t per_class, uint64_t seed);

// Rows of `ds` not present (by id) in `exclude`.
Dataset Complement(const Dataset &ds, const Dataset &exclude);

// `count` rows drawn uniformly without replacement, ordered by source row.
Dataset SampleRows(const Dataset &ds, std::size_t count, uint64_t seed, std::string name);

// Each client receives per_class_per_client samples of every label, disjoint
// across clients, in a seeded shuffled order.
std::vector<Dataset> PartitionIid(const Dataset &ds, const PartitionSpec &spec);

// Stable sort by (label, source row), cut into num_shards contiguous shards,
// deal shards_per_client shards to each client through a seeded permutation.
std::vector<Dataset> PartitionNonIidShards(const Dataset &ds, const PartitionSpec &spec);

std::vector<Dataset> Partition(const Dataset &ds, const PartitionSpec &spec);

}  // namespace fslhdc::data

#endif  // FSLHDC_DATASET_H_
