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

#include <unistd.h>
#include <zlib.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "fslhdc/dataset.h"
#include "fslhdc/errors.h"

using namespace fslhdc;
using namespace fslhdc::data;
namespace fs = std::filesystem;

namespace {

void PutBE(std::vector<uint8_t> &out, uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<uint8_t>(v >> shift));
}

std::vector<uint8_t> ImageFile(uint32_t count, uint32_t rows, uint32_t cols, uint32_t magic = 0x803) {
  std::vector<uint8_t> out;
  PutBE(out, magic);
  PutBE(out, count);
  PutBE(out, rows);
  PutBE(out, cols);
  for (uint32_t i = 0; i < count * rows * cols; ++i) out.push_back(static_cast<uint8_t>(i % 251));
  return out;
}

std::vector<uint8_t> LabelFile(const std::vector<uint8_t> &labels, uint32_t magic = 0x801) {
  std::vector<uint8_t> out;
  PutBE(out, magic);
  PutBE(out, static_cast<uint32_t>(labels.size()));
  out.insert(out.end(), labels.begin(), labels.end());
  return out;
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("fslhdc_ds_" + std::to_string(::getpid()))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }

  std::string Write(const std::string &name, const std::vector<uint8_t> &bytes) const {
    const auto p = (path_ / name).string();
    std::ofstream(p, std::ios::binary).write(reinterpret_cast<const char *>(bytes.data()),
                                             static_cast<std::streamsize>(bytes.size()));
    return p;
  }
  std::string WriteGz(const std::string &name, const std::vector<uint8_t> &bytes) const {
    const auto p = (path_ / name).string();
    gzFile f = gzopen(p.c_str(), "wb");
    gzwrite(f, bytes.data(), static_cast<unsigned>(bytes.size()));
    gzclose(f);
    return p;
  }

 private:
  fs::path path_;
};

std::string FieldOf(const std::string &images, const std::string &labels) {
  try {
    LoadIdx(images, labels);
  } catch (const FormatError &e) {
    return e.field();
  }
  return "";
}

// n samples per label for labels 0-9, rows interleaved by label.
Dataset Synthetic(std::size_t per_label, std::size_t image_size = 4) {
  Dataset ds;
  ds.name = "synthetic";
  ds.image_size = image_size;
  for (std::size_t i = 0; i < per_label * 10; ++i) {
    ds.labels.push_back(static_cast<int>(i % 10));
    ds.ids.push_back(i);
    for (std::size_t k = 0; k < image_size; ++k) ds.pixels.push_back(static_cast<uint8_t>((i + k) % 256));
  }
  return ds;
}

std::size_t CountLabel(const Dataset &ds, int label) {
  return static_cast<std::size_t>(std::count(ds.labels.begin(), ds.labels.end(), label));
}

}  // namespace

TEST_CASE("load_idx reads plain and gzip files") {
  TempDir dir;
  const std::vector<uint8_t> labels{0, 9, 3};
  const auto img = dir.Write("img", ImageFile(3, 2, 2));
  const auto lab = dir.Write("lab", LabelFile(labels));
  const auto ds = LoadIdx(img, lab);
  CHECK(ds.size() == 3);
  CHECK(ds.image_size == 4);
  CHECK(ds.labels == std::vector<int>{0, 9, 3});
  CHECK(ds.ids == std::vector<std::size_t>{0, 1, 2});
  CHECK(ds.image(1)[0] == 4);

  const auto gz = LoadIdx(dir.WriteGz("img.gz", ImageFile(3, 2, 2)), dir.WriteGz("lab.gz", LabelFile(labels)));
  CHECK(gz.pixels == ds.pixels);
  CHECK(gz.labels == ds.labels);
}

TEST_CASE("load_idx names the offending field") {
  TempDir dir;
  const auto good_img = dir.Write("img", ImageFile(3, 2, 2));
  const auto good_lab = dir.Write("lab", LabelFile({1, 2, 3}));
  CHECK(FieldOf(dir.Write("bad_magic", ImageFile(3, 2, 2, 0x804)), good_lab) == "image magic");
  CHECK(FieldOf(good_img, dir.Write("bad_lmagic", LabelFile({1, 2, 3}, 0x802))) == "label magic");
  CHECK(FieldOf(good_img, dir.Write("short_lab", LabelFile({1, 2}))) == "label count");
  CHECK(FieldOf(good_img, dir.Write("big_label", LabelFile({1, 10, 3}))) == "label data");
  auto truncated = ImageFile(3, 2, 2);
  truncated.pop_back();
  CHECK(FieldOf(dir.Write("trunc", truncated), good_lab) == "image data");
  CHECK(FieldOf(dir.Write("header", std::vector<uint8_t>{0, 0, 8}), good_lab) == "image magic");
  auto header_only = ImageFile(0, 2, 2);
  header_only.resize(10);
  CHECK(FieldOf(dir.Write("header2", header_only), good_lab) == "image rows");
  CHECK(FieldOf((fs::temp_directory_path() / "fslhdc_missing_file").string(), good_lab) == "images_path");
}

TEST_CASE("subsample takes exactly per_class rows per label") {
  const auto ds = Synthetic(50);
  const auto sub = Subsample(ds, 7, 3);
  CHECK(sub.size() == 70);
  for (int label = 0; label < 10; ++label) CHECK(CountLabel(sub, label) == 7);
  CHECK(std::is_sorted(sub.ids.begin(), sub.ids.end()));
  CHECK(Subsample(ds, 7, 3).ids == sub.ids);
  CHECK(Subsample(ds, 7, 4).ids != sub.ids);
  CHECK_THROWS_AS(Subsample(ds, 51, 3), InvalidArgument);
}

TEST_CASE("complement and sample_rows") {
  const auto ds = Synthetic(20);
  const auto sub = Subsample(ds, 5, 1);
  const auto rest = Complement(ds, sub);
  CHECK(rest.size() == ds.size() - sub.size());
  std::set<std::size_t> all(sub.ids.begin(), sub.ids.end());
  for (auto id : rest.ids) CHECK(all.insert(id).second);
  CHECK(all.size() == ds.size());

  const auto drawn = SampleRows(rest, 30, 9, "main");
  CHECK(drawn.size() == 30);
  CHECK(drawn.name == "main");
  CHECK(std::set<std::size_t>(drawn.ids.begin(), drawn.ids.end()).size() == 30);
  CHECK(SampleRows(rest, 30, 9, "x").ids == drawn.ids);
  CHECK_THROWS_AS(SampleRows(rest, rest.size() + 1, 9, "x"), InvalidArgument);
}

TEST_CASE("iid partition gives balanced disjoint clients") {
  const auto ds = Synthetic(60);
  const PartitionSpec spec{.mode = PartitionMode::kIid, .num_clients = 5, .per_class_per_client = 12, .seed = 2};
  const auto clients = Partition(ds, spec);
  REQUIRE(clients.size() == 5);
  std::set<std::size_t> seen;
  for (const auto &c : clients) {
    CHECK(c.size() == 120);
    for (int label = 0; label < 10; ++label) CHECK(CountLabel(c, label) == 12);
    for (auto id : c.ids) CHECK(seen.insert(id).second);
  }
  CHECK(seen.size() == ds.size());
  CHECK(Partition(ds, spec)[0].ids == clients[0].ids);
  CHECK_THROWS_AS(PartitionIid(ds, {.per_class_per_client = 7}), InvalidArgument);
}

TEST_CASE("shard partition uses every shard once and limits labels per client") {
  const auto ds = Synthetic(60);
  const PartitionSpec spec{.mode = PartitionMode::kNonIidShards, .num_clients = 10, .num_shards = 20,
                           .shards_per_client = 2, .seed = 5};
  const auto clients = Partition(ds, spec);
  REQUIRE(clients.size() == 10);
  std::set<std::size_t> seen;
  for (const auto &c : clients) {
    CHECK(c.size() == 60);
    CHECK(std::set<int>(c.labels.begin(), c.labels.end()).size() <= 4);
    for (auto id : c.ids) CHECK(seen.insert(id).second);
  }
  CHECK(seen.size() == ds.size());
}

TEST_CASE("shard partition rejects inconsistent counts") {
  const auto ds = Synthetic(6);
  CHECK_THROWS_AS(
      PartitionNonIidShards(ds, {.mode = PartitionMode::kNonIidShards, .num_clients = 3, .num_shards = 20}),
      InvalidArgument);
  CHECK_THROWS_AS(PartitionNonIidShards(ds, {.mode = PartitionMode::kNonIidShards, .num_clients = 7,
                                             .num_shards = 14, .shards_per_client = 2}),
                  InvalidArgument);
  CHECK_THROWS_AS(PartitionNonIidShards(ds, {.mode = PartitionMode::kIid}), InvalidArgument);
}

TEST_CASE("iid and shard partitions cover the same pool") {
  const auto ds = Synthetic(60);
  auto ids_of = [](const std::vector<Dataset> &clients) {
    std::multiset<std::size_t> ids;
    for (const auto &c : clients) ids.insert(c.ids.begin(), c.ids.end());
    return ids;
  };
  const auto iid = Partition(ds, {.mode = PartitionMode::kIid, .num_clients = 10, .per_class_per_client = 6});
  const auto shards = Partition(ds, {.mode = PartitionMode::kNonIidShards});
  CHECK(ids_of(iid) == ids_of(shards));
}
