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

#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "fslhdc/config.h"
#include "fslhdc/errors.h"

using namespace fslhdc;
using namespace fslhdc::cli;

namespace {

std::string KeyOfError(ExperimentConfig &c, const std::string &text) {
  try {
    ApplyConfigText(c, text);
    Validate(c);
  } catch (const ConfigError &e) {
    return e.key();
  }
  return "";
}

}  // namespace

TEST_CASE("defaults describe the reference experiment") {
  const ExperimentConfig c;
  CHECK(c.hv_dim == 10000);
  CHECK(c.client_per_class == 600);
  CHECK(c.main_server_samples == 2000);
  CHECK(c.partition.num_clients == 10);
  CHECK(c.partition.per_class_per_client == 60);
  CHECK(c.fed_epochs == 15);
  CHECK(c.alpha == 1.0);
  CHECK(c.weight_w == 1.0);
  CHECK(c.num_users == 10);
  CHECK(c.bandwidth_mhz == 100.0);
  CHECK(c.energy_j == 5.0);
  CHECK(c.payload_bits == 6e6);
  CHECK_NOTHROW(Validate(c));
}

TEST_CASE("config text sets keys, ignores comments and trims whitespace") {
  ExperimentConfig c;
  ApplyConfigText(c, "# comment\n  hv_dim = 2048  \n\npartition=noniid # trailing\nalpha = 0.5\n"
                     "sweep_bandwidths_mhz = 100, 250\ntrack_fed_epochs = false\ntask = net_sweep\n");
  CHECK(c.hv_dim == 2048);
  CHECK(c.partition.mode == data::PartitionMode::kNonIidShards);
  CHECK(c.alpha == 0.5);
  CHECK(c.sweep_bandwidths_mhz == std::vector<double>{100, 250});
  CHECK_FALSE(c.track_fed_epochs);
  CHECK(c.task == Task::kNetSweep);
}

TEST_CASE("config errors name the offending key") {
  ExperimentConfig c;
  CHECK(KeyOfError(c, "no_such_key = 1") == "no_such_key");
  c = {};
  CHECK(KeyOfError(c, "hv_dim =") == "hv_dim");
  c = {};
  CHECK(KeyOfError(c, "hv_dim = 0") == "hv_dim");
  c = {};
  CHECK(KeyOfError(c, "hv_dim = ten") == "hv_dim");
  c = {};
  CHECK(KeyOfError(c, "alpha = -1") == "alpha");
  c = {};
  CHECK(KeyOfError(c, "partition = random") == "partition");
  c = {};
  CHECK(KeyOfError(c, "track_fed_epochs = maybe") == "track_fed_epochs");
  c = {};
  CHECK(KeyOfError(c, "task = train") == "task");
  c = {};
  CHECK(KeyOfError(c, "per_class_per_client = 61") == "per_class_per_client");
  c = {};
  CHECK(KeyOfError(c, "partition = noniid\nnum_shards = 30") == "num_shards");
  c = {};
  CHECK(KeyOfError(c, "nlos_exponent = 1.5") == "los_exponent");
  c = {};
  CHECK(KeyOfError(c, "sweep_p_max_w = 1, -2") == "sweep_p_max_w");
  c = {};
  CHECK_THROWS_AS(ApplyConfigText(c, "just words"), ConfigError);
}

TEST_CASE("config files") {
  const auto path = std::filesystem::temp_directory_path() / "fslhdc_config_test.cfg";
  std::ofstream(path) << "fed_epochs = 3\nmaster_seed = 42\n";
  ExperimentConfig c;
  ApplyConfigFile(c, path.string());
  CHECK(c.fed_epochs == 3);
  CHECK(c.master_seed == 42);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(ApplyConfigFile(c, path.string()), ConfigError);
}

TEST_CASE("task names round-trip and every key is listed") {
  for (Task t : {Task::kFslHdc, Task::kFlHdc, Task::kHdcUnit, Task::kNetOpt, Task::kNetSweep, Task::kCompare}) {
    CHECK(ParseTask(TaskName(t)) == t);
  }
  const auto &keys = KnownKeys();
  for (const char *k : {"hv_dim", "alpha", "weight_w", "partition", "bandwidth_mhz", "sweep_p_max_w"}) {
    CHECK(std::find(keys.begin(), keys.end(), k) != keys.end());
  }
}
