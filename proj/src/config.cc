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

#include "fslhdc/config.h"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <type_traits>
#include <utility>

#include "fslhdc/errors.h"

namespace fslhdc::cli {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T ParseNumber(std::string_view key, std::string_view value) {
  T out{};
  if constexpr (std::is_floating_point_v<T>) {
    // from_chars for double is missing from older libstdc++.
    std::string copy(value);
    std::size_t used = 0;
    try {
      out = static_cast<T>(std::stod(copy, &used));
    } catch (const std::exception &) {
      used = 0;
    }
    if (used != copy.size() || copy.empty()) throw ConfigError(std::string(key), "not a number: '" + copy + "'");
  } else {
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
      throw ConfigError(std::string(key), "not an integer: '" + std::string(value) + "'");
    }
  }
  return out;
}

bool ParseBool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError(std::string(key), "not a boolean: '" + std::string(value) + "'");
}

std::vector<double> ParseList(std::string_view key, std::string_view value) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    const auto comma = value.find(',', start);
    const auto item = Trim(value.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    out.push_back(ParseNumber<double>(key, item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

using Setter = std::function<void(ExperimentConfig &, std::string_view key, std::string_view value)>;

template <typename T, typename Field>
Setter Number(Field field) {
  return [field](ExperimentConfig &c, std::string_view k, std::string_view v) { c.*field = ParseNumber<T>(k, v); };
}

const std::vector<std::pair<std::string, Setter>> &Table() {
  using C = ExperimentConfig;
  static const std::vector<std::pair<std::string, Setter>> table = {
      {"task", [](C &c, std::string_view, std::string_view v) { c.task = ParseTask(v); }},
      {"master_seed", Number<uint64_t>(&C::master_seed)},
      {"output_dir", [](C &c, std::string_view, std::string_view v) { c.output_dir = v; }},
      {"mnist_dir", [](C &c, std::string_view, std::string_view v) { c.mnist_dir = v; }},
      {"train_images", [](C &c, std::string_view, std::string_view v) { c.train_images = v; }},
      {"train_labels", [](C &c, std::string_view, std::string_view v) { c.train_labels = v; }},
      {"test_images", [](C &c, std::string_view, std::string_view v) { c.test_images = v; }},
      {"test_labels", [](C &c, std::string_view, std::string_view v) { c.test_labels = v; }},
      {"client_per_class", Number<std::size_t>(&C::client_per_class)},
      {"main_server_samples", Number<std::size_t>(&C::main_server_samples)},
      {"test_limit", Number<std::size_t>(&C::test_limit)},
      {"hv_dim", Number<std::size_t>(&C::hv_dim)},
      {"value_encoding",
       [](C &c, std::string_view k, std::string_view v) {
         if (v == "level") {
           c.value_encoding = hdc::ValueEncoding::kLevel;
         } else if (v == "random") {
           c.value_encoding = hdc::ValueEncoding::kRandom;
         } else {
           throw ConfigError(std::string(k), "expected 'level' or 'random'");
         }
       }},
      {"bipolarize_samples", [](C &c, std::string_view k, std::string_view v) { c.bipolarize_samples = ParseBool(k, v); }},
      {"partition",
       [](C &c, std::string_view k, std::string_view v) {
         if (v == "iid") {
           c.partition.mode = data::PartitionMode::kIid;
         } else if (v == "noniid" || v == "noniid_shards") {
           c.partition.mode = data::PartitionMode::kNonIidShards;
         } else {
           throw ConfigError(std::string(k), "expected 'iid' or 'noniid'");
         }
       }},
      {"num_clients",
       [](C &c, std::string_view k, std::string_view v) { c.partition.num_clients = ParseNumber<std::size_t>(k, v); }},
      {"per_class_per_client",
       [](C &c, std::string_view k, std::string_view v) {
         c.partition.per_class_per_client = ParseNumber<std::size_t>(k, v);
       }},
      {"num_shards",
       [](C &c, std::string_view k, std::string_view v) { c.partition.num_shards = ParseNumber<std::size_t>(k, v); }},
      {"shards_per_client",
       [](C &c, std::string_view k, std::string_view v) {
         c.partition.shards_per_client = ParseNumber<std::size_t>(k, v);
       }},
      {"fed_epochs", Number<int>(&C::fed_epochs)},
      {"main_epochs", Number<int>(&C::main_epochs)},
      {"alpha", Number<double>(&C::alpha)},
      {"weight_w", Number<double>(&C::weight_w)},
      {"holdout_fraction", Number<double>(&C::holdout_fraction)},
      {"patience", Number<int>(&C::patience)},
      {"track_fed_epochs", [](C &c, std::string_view k, std::string_view v) { c.track_fed_epochs = ParseBool(k, v); }},
      {"num_users", Number<std::size_t>(&C::num_users)},
      {"bandwidth_mhz", Number<double>(&C::bandwidth_mhz)},
      {"p_max_w", Number<double>(&C::p_max_w)},
      {"energy_j", Number<double>(&C::energy_j)},
      {"payload_bits", Number<double>(&C::payload_bits)},
      {"carrier_ghz", Number<double>(&C::carrier_ghz)},
      {"noise_dbm_per_hz", Number<double>(&C::noise_dbm_per_hz)},
      {"los_exponent", Number<double>(&C::los_exponent)},
      {"nlos_exponent", Number<double>(&C::nlos_exponent)},
      {"area_side_m", Number<double>(&C::area_side_m)},
      {"sweep_bandwidths_mhz",
       [](C &c, std::string_view k, std::string_view v) { c.sweep_bandwidths_mhz = ParseList(k, v); }},
      {"sweep_p_max_w", [](C &c, std::string_view k, std::string_view v) { c.sweep_p_max_w = ParseList(k, v); }},
  };
  return table;
}

void Require(bool ok, const char *key, const std::string &reason) {
  if (!ok) throw ConfigError(key, reason);
}

}  // namespace

std::string_view TaskName(Task task) {
  switch (task) {
    case Task::kFslHdc:
      return "fsl_hdc";
    case Task::kFlHdc:
      return "fl_hdc";
    case Task::kHdcUnit:
      return "hdc_unit";
    case Task::kNetOpt:
      return "net_opt";
    case Task::kNetSweep:
      return "net_sweep";
    case Task::kCompare:
      return "compare";
  }
  return "unknown";
}

Task ParseTask(std::string_view name) {
  for (Task t : {Task::kFslHdc, Task::kFlHdc, Task::kHdcUnit, Task::kNetOpt, Task::kNetSweep, Task::kCompare}) {
    if (TaskName(t) == name) return t;
  }
  throw ConfigError("task", "unknown task '" + std::string(name) + "'");
}

void ApplySetting(ExperimentConfig &config, std::string_view key, std::string_view value) {
  key = Trim(key);
  value = Trim(value);
  for (const auto &[name, setter] : Table()) {
    if (name == key) {
      if (value.empty()) throw ConfigError(name, "missing value");
      setter(config, key, value);
      return;
    }
  }
  throw ConfigError(std::string(key), "unknown configuration key");
}

void ApplyConfigText(ExperimentConfig &config, std::string_view text) {
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(std::string(Trim(line)), "line " + std::to_string(line_no) + " is not 'key = value'");
    }
    ApplySetting(config, line.substr(0, eq), line.substr(eq + 1));
  }
}

void ApplyConfigFile(ExperimentConfig &config, const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  ApplyConfigText(config, buffer.str());
}

void Validate(const ExperimentConfig &c) {
  Require(c.hv_dim > 0, "hv_dim", "must be positive");
  Require(c.client_per_class > 0, "client_per_class", "must be positive");
  Require(c.main_server_samples > 0, "main_server_samples", "must be positive");
  Require(c.partition.num_clients > 0, "num_clients", "must be positive");
  Require(c.partition.per_class_per_client > 0, "per_class_per_client", "must be positive");
  Require(c.partition.num_shards > 0, "num_shards", "must be positive");
  Require(c.partition.shards_per_client > 0, "shards_per_client", "must be positive");
  if (c.partition.mode == data::PartitionMode::kIid) {
    Require(c.partition.num_clients * c.partition.per_class_per_client <= c.client_per_class, "per_class_per_client",
            "num_clients * per_class_per_client exceeds client_per_class");
  } else {
    Require(c.partition.num_shards == c.partition.num_clients * c.partition.shards_per_client, "num_shards",
            "must equal num_clients * shards_per_client");
  }
  Require(c.fed_epochs >= 0, "fed_epochs", "must be >= 0");
  Require(c.main_epochs >= 0, "main_epochs", "must be >= 0");
  Require(c.alpha > 0, "alpha", "must be positive");
  Require(c.weight_w >= 0, "weight_w", "must be non-negative");
  Require(c.holdout_fraction >= 0 && c.holdout_fraction < 1, "holdout_fraction", "must be in [0, 1)");
  Require(c.patience > 0, "patience", "must be positive");
  Require(c.num_users > 0, "num_users", "must be positive");
  Require(c.bandwidth_mhz > 0, "bandwidth_mhz", "must be positive");
  Require(c.p_max_w > 0, "p_max_w", "must be positive");
  Require(c.energy_j > 0, "energy_j", "must be positive");
  Require(c.payload_bits > 0, "payload_bits", "must be positive");
  Require(c.carrier_ghz > 0, "carrier_ghz", "must be positive");
  Require(c.los_exponent > 0 && c.los_exponent < c.nlos_exponent, "los_exponent",
          "must be positive and below nlos_exponent");
  Require(c.area_side_m > 0, "area_side_m", "must be positive");
  Require(!c.sweep_bandwidths_mhz.empty(), "sweep_bandwidths_mhz", "must not be empty");
  for (double b : c.sweep_bandwidths_mhz) Require(b > 0, "sweep_bandwidths_mhz", "entries must be positive");
  for (double p : c.sweep_p_max_w) Require(p > 0, "sweep_p_max_w", "entries must be positive");
}

const std::vector<std::string> &KnownKeys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> out;
    for (const auto &[name, setter] : Table()) out.push_back(name);
    return out;
  }();
  return keys;
}

}  // namespace fslhdc::cli
