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

#include "fslhdc/dataset.h"

#include <zlib.h>

#include <algorithm>
#include <array>
#include <numeric>
#include <unordered_set>

#include "fslhdc/errors.h"
#include "fslhdc/random.h"

namespace fslhdc::data {
namespace {

constexpr uint32_t kImageMagic = 0x00000803;
constexpr uint32_t kLabelMagic = 0x00000801;
constexpr int kNumLabels = 10;
enum : uint64_t { kTagSubsample = 11, kTagIid = 12, kTagShards = 13, kTagRows = 14 };

// Whole-file read; gzread passes uncompressed files through unchanged.
std::vector<uint8_t> ReadAll(const std::string &path, const std::string &field) {
  gzFile f = gzopen(path.c_str(), "rb");
  if (f == nullptr) throw FormatError(field, "cannot open " + path);
  std::vector<uint8_t> out;
  std::array<uint8_t, 1 << 16> buf{};
  int n = 0;
  while ((n = gzread(f, buf.data(), buf.size())) > 0) out.insert(out.end(), buf.begin(), buf.begin() + n);
  const bool failed = n < 0;
  gzclose(f);
  if (failed) throw FormatError(field, "read error in " + path);
  return out;
}

uint32_t BigEndian32(const std::vector<uint8_t> &bytes, std::size_t offset, const std::string &field) {
  if (bytes.size() < offset + 4) throw FormatError(field, "truncated header: missing " + field);
  return (uint32_t{bytes[offset]} << 24) | (uint32_t{bytes[offset + 1]} << 16) | (uint32_t{bytes[offset + 2]} << 8) |
         uint32_t{bytes[offset + 3]};
}

std::array<std::vector<std::size_t>, kNumLabels> RowsByLabel(const Dataset &ds) {
  std::array<std::vector<std::size_t>, kNumLabels> rows;
  for (std::size_t i = 0; i < ds.size(); ++i) rows.at(static_cast<std::size_t>(ds.labels[i])).push_back(i);
  return rows;
}

}  // namespace

Dataset Dataset::Select(std::span<const std::size_t> rows, std::string new_name) const {
  Dataset out;
  out.name = std::move(new_name);
  out.image_size = image_size;
  out.pixels.reserve(rows.size() * image_size);
  out.labels.reserve(rows.size());
  out.ids.reserve(rows.size());
  for (std::size_t r : rows) out.Append(*this, r);
  return out;
}

void Dataset::Append(const Dataset &other, std::size_t row) {
  auto img = other.image(row);
  pixels.insert(pixels.end(), img.begin(), img.end());
  labels.push_back(other.labels[row]);
  ids.push_back(other.ids[row]);
}

Dataset LoadIdx(const std::string &images_path, const std::string &labels_path, std::string name) {
  const auto images = ReadAll(images_path, "images_path");
  const auto labels = ReadAll(labels_path, "labels_path");

  if (BigEndian32(images, 0, "image magic") != kImageMagic) throw FormatError("image magic", "bad image magic number");
  if (BigEndian32(labels, 0, "label magic") != kLabelMagic) throw FormatError("label magic", "bad label magic number");
  const uint32_t count = BigEndian32(images, 4, "image count");
  const uint32_t rows = BigEndian32(images, 8, "image rows");
  const uint32_t cols = BigEndian32(images, 12, "image cols");
  const uint32_t label_count = BigEndian32(labels, 4, "label count");
  if (count != label_count) {
    throw FormatError("label count", "image count " + std::to_string(count) + " != label count " +
                                         std::to_string(label_count));
  }
  const std::size_t image_size = std::size_t{rows} * cols;
  if (image_size == 0) throw FormatError("image rows", "zero-sized images");
  if (images.size() != 16 + std::size_t{count} * image_size) {
    throw FormatError("image data", "image payload is " + std::to_string(images.size() - 16) + " bytes, expected " +
                                        std::to_string(std::size_t{count} * image_size));
  }
  if (labels.size() != 8 + std::size_t{count}) {
    throw FormatError("label data", "label payload is " + std::to_string(labels.size() - 8) + " bytes, expected " +
                                        std::to_string(count));
  }

  Dataset ds;
  ds.name = std::move(name);
  ds.image_size = image_size;
  ds.pixels.assign(images.begin() + 16, images.end());
  ds.labels.resize(count);
  ds.ids.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const uint8_t label = labels[8 + i];
    if (label >= kNumLabels) {
      throw FormatError("label data", "label " + std::to_string(label) + " at index " + std::to_string(i) +
                                          " outside 0-9");
    }
    ds.labels[i] = label;
    ds.ids[i] = i;
  }
  return ds;
}

Dataset Subsample(const Dataset &ds, std::size_t per_class, uint64_t seed) {
  auto by_label = RowsByLabel(ds);
  std::vector<std::size_t> chosen;
  for (int label = 0; label < kNumLabels; ++label) {
    auto &rows = by_label[static_cast<std::size_t>(label)];
    if (rows.size() < per_class) {
      throw InvalidArgument("subsample: label " + std::to_string(label) + " has " + std::to_string(rows.size()) +
                            " samples, need " + std::to_string(per_class));
    }
    RandomStream rng(seed, kTagSubsample, static_cast<uint64_t>(label));
    Shuffle(std::span<std::size_t>(rows), rng);
    chosen.insert(chosen.end(), rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(per_class));
  }
  std::sort(chosen.begin(), chosen.end());
  return ds.Select(chosen, ds.name + "/subsample");
}

Dataset Complement(const Dataset &ds, const Dataset &exclude) {
  std::unordered_set<std::size_t> skip(exclude.ids.begin(), exclude.ids.end());
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (skip.count(ds.ids[i]) == 0) rows.push_back(i);
  }
  return ds.Select(rows, ds.name + "/complement");
}

Dataset SampleRows(const Dataset &ds, std::size_t count, uint64_t seed, std::string name) {
  if (count > ds.size()) {
    throw InvalidArgument("sample: requested " + std::to_string(count) + " rows from " + std::to_string(ds.size()));
  }
  std::vector<std::size_t> rows(ds.size());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  RandomStream rng(seed, kTagRows);
  Shuffle(std::span<std::size_t>(rows), rng);
  rows.resize(count);
  std::sort(rows.begin(), rows.end());
  return ds.Select(rows, std::move(name));
}

std::vector<Dataset> PartitionIid(const Dataset &ds, const PartitionSpec &spec) {
  if (spec.mode != PartitionMode::kIid) throw InvalidArgument("partition_iid: spec is not in iid mode");
  if (spec.num_clients == 0) throw InvalidArgument("partition_iid: num_clients must be positive");
  const std::size_t need = spec.num_clients * spec.per_class_per_client;
  auto by_label = RowsByLabel(ds);
  std::vector<std::vector<std::size_t>> client_rows(spec.num_clients);
  for (int label = 0; label < kNumLabels; ++label) {
    auto &rows = by_label[static_cast<std::size_t>(label)];
    if (rows.size() < need) {
      throw InvalidArgument("partition_iid: label " + std::to_string(label) + " has " + std::to_string(rows.size()) +
                            " samples, need " + std::to_string(need));
    }
    RandomStream rng(spec.seed, kTagIid, static_cast<uint64_t>(label));
    Shuffle(std::span<std::size_t>(rows), rng);
    for (std::size_t c = 0; c < spec.num_clients; ++c) {
      auto first = rows.begin() + static_cast<std::ptrdiff_t>(c * spec.per_class_per_client);
      client_rows[c].insert(client_rows[c].end(), first,
                            first + static_cast<std::ptrdiff_t>(spec.per_class_per_client));
    }
  }
  std::vector<Dataset> clients;
  for (std::size_t c = 0; c < spec.num_clients; ++c) {
    RandomStream rng(spec.seed, kTagIid, 1000 + c);
    Shuffle(std::span<std::size_t>(client_rows[c]), rng);
    clients.push_back(ds.Select(client_rows[c], "client" + std::to_string(c)));
  }
  return clients;
}

std::vector<Dataset> PartitionNonIidShards(const Dataset &ds, const PartitionSpec &spec) {
  if (spec.mode != PartitionMode::kNonIidShards) throw InvalidArgument("partition_noniid: spec is not in shard mode");
  if (spec.num_shards == 0 || spec.num_clients == 0) throw InvalidArgument("partition_noniid: counts must be positive");
  if (spec.num_shards != spec.num_clients * spec.shards_per_client) {
    throw InvalidArgument("partition_noniid: num_shards must equal num_clients * shards_per_client");
  }
  if (ds.size() % spec.num_shards != 0) {
    throw InvalidArgument("partition_noniid: " + std::to_string(ds.size()) + " samples not divisible into " +
                          std::to_string(spec.num_shards) + " shards");
  }
  std::vector<std::size_t> sorted(ds.size());
  std::iota(sorted.begin(), sorted.end(), std::size_t{0});
  std::stable_sort(sorted.begin(), sorted.end(), [&](std::size_t a, std::size_t b) {
    if (ds.labels[a] != ds.labels[b]) return ds.labels[a] < ds.labels[b];
    return ds.ids[a] < ds.ids[b];
  });
  const std::size_t shard_size = ds.size() / spec.num_shards;
  std::vector<std::size_t> shard_order(spec.num_shards);
  std::iota(shard_order.begin(), shard_order.end(), std::size_t{0});
  RandomStream rng(spec.seed, kTagShards);
  Shuffle(std::span<std::size_t>(shard_order), rng);

  std::vector<Dataset> clients;
  for (std::size_t c = 0; c < spec.num_clients; ++c) {
    std::vector<std::size_t> rows;
    for (std::size_t s = 0; s < spec.shards_per_client; ++s) {
      const std::size_t shard = shard_order[c * spec.shards_per_client + s];
      auto first = sorted.begin() + static_cast<std::ptrdiff_t>(shard * shard_size);
      rows.insert(rows.end(), first, first + static_cast<std::ptrdiff_t>(shard_size));
    }
    clients.push_back(ds.Select(rows, "client" + std::to_string(c)));
  }
  return clients;
}

std::vector<Dataset> Partition(const Dataset &ds, const PartitionSpec &spec) {
  return spec.mode == PartitionMode::kIid ? PartitionIid(ds, spec) : PartitionNonIidShards(ds, spec);
}

}  // namespace fslhdc::data
