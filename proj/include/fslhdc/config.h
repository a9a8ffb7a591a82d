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

#ifndef FSLHDC_CONFIG_H_
#define FSLHDC_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fslhdc/dataset.h"
#include "fslhdc/item_memory.h"

namespace fslhdc::cli {

enum class Task { kFslHdc, kFlHdc, kHdcUnit, kNetOpt, kNetSweep, kCompare };

std::string_view TaskName(Task task);
// Throws ConfigError("task", ...) for an unknown name.
Task ParseTask(std::string_view name);

struct ExperimentConfig {
  Task task = Task::kFslHdc;
  uint64_t master_seed = 1;
  std::string output_dir = "out";

  // Data. Empty paths resolve against mnist_dir with the standard file names.
  std::string mnist_dir;
  std::string train_images;
  std::string train_labels;
  std::string test_images;
  std::string test_labels;
  std::size_t client_per_class = 600;
  std::size_t main_server_samples = 2000;
  std::size_t test_limit = 0;  // 0 keeps the whole test set

  // HDC model and protocol.
  std::size_t hv_dim = 10000;
  hdc::ValueEncoding value_encoding = hdc::ValueEncoding::kLevel;
  bool bipolarize_samples = true;
  data::PartitionSpec partition;  // seed is derived from master_seed
  int fed_epochs = 15;
  int main_epochs = 30;
  double alpha = 1.0;
  double weight_w = 1.0;
  double holdout_fraction = 0.1;
  int patience = 3;
  bool track_fed_epochs = true;

  // Network scenario.
  std::size_t num_users = 10;
  double bandwidth_mhz = 100.0;
  double p_max_w = 1.0;
  double energy_j = 5.0;
  double payload_bits = 6e6;
  double carrier_ghz = 28.0;
  double noise_dbm_per_hz = -174.0;
  double los_exponent = 2.0;
  double nlos_exponent = 3.3;
  double area_side_m = 200.0;
  std::vector<double> sweep_bandwidths_mhz = {100, 200, 300, 400, 500};
  std::vector<double> sweep_p_max_w;  // empty: just p_max_w
};

// Applies one `key = value` assignment. Unknown keys and unparsable or empty
// values throw ConfigError naming the key.
void ApplySetting(ExperimentConfig &config, std::string_view key, std::string_view value);

// Flat text: one `key = value` per line, `#` starts a comment.
void ApplyConfigText(ExperimentConfig &config, std::string_view text);
void ApplyConfigFile(ExperimentConfig &config, const std::string &path);

// Range checks; throws ConfigError naming the first offending key.
void Validate(const ExperimentConfig &config);

// Every key ApplySetting accepts, in documentation order.
const std::vector<std::string> &KnownKeys();

}  // namespace fslhdc::cli

#endif  // FSLHDC_CONFIG_H_
