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

#ifndef FSLHDC_EXPERIMENT_H_
#define FSLHDC_EXPERIMENT_H_

#include <cstddef>
#include <cstdint>
#include <exception>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "fslhdc/allocation.h"
#include "fslhdc/config.h"
#include "fslhdc/dataset.h"
#include "fslhdc/protocol.h"

namespace fslhdc::cli {

// One CSV line. Unset optionals print as empty cells; the per-user list
// columns are ';'-joined.
struct MetricsRow {
  std::string run_id;
  uint64_t seed = 0;
  std::string task;
  std::string stage;
  std::optional<int> epoch;
  std::optional<std::size_t> train_errors;
  std::optional<double> accuracy;
  std::optional<double> bandwidth_hz;
  std::optional<double> p_max_w;
  std::string method;
  std::optional<double> objective_s;
  std::vector<double> powers_w;
  std::vector<double> bandwidths_hz;
  std::vector<double> times_s;
};

// run_id,seed,task,stage,epoch,train_errors,accuracy,bandwidth_hz,p_max_w,
// method,objective_s,powers_w,bandwidths_hz,times_s
const std::string &MetricsHeader();
std::string FormatMetricsCsv(std::span<const MetricsRow> rows);

struct RunOutput {
  std::vector<MetricsRow> rows;
  nlohmann::ordered_json summary;
};

struct MnistData {
  data::Dataset train;
  data::Dataset test;
};

// Resolves the four IDX paths (explicit keys first, then mnist_dir with the
// standard names, trying a .gz suffix) and loads them.
MnistData LoadMnist(const ExperimentConfig &config);

// Everything the HDC tasks share for one master seed: the item memory, the
// client/main-server/test splits and their encodings.
struct PreparedHdc {
  std::shared_ptr<const hdc::ItemMemory> item_memory;
  data::Dataset client_pool;
  std::vector<hdc::LabeledHV> pool_encoded;  // row-aligned with client_pool
  std::vector<data::Dataset> clients;
  data::Dataset main_local;
  data::Dataset test;
  std::vector<std::vector<hdc::LabeledHV>> uploads;
  std::vector<hdc::LabeledHV> main_encoded;
  std::vector<hdc::LabeledHV> test_encoded;

  std::vector<hdc::LabeledHV> Pooled() const { return protocol::PoolUploads(uploads); }
};

PreparedHdc PrepareHdc(const ExperimentConfig &config, const MnistData &mnist);

// Re-partitions the prepared client pool under config.partition. Encoding is
// deterministic, so uploads are regrouped from pool_encoded instead of redone.
PreparedHdc Repartition(const PreparedHdc &prepared, const ExperimentConfig &config);

protocol::FslOptions FslOptionsFor(const ExperimentConfig &config);
protocol::FedServerOptions FedOptionsFor(const ExperimentConfig &config);
wireless::NetworkScenario ScenarioFor(const ExperimentConfig &config, double bandwidth_mhz, double p_max_w);

std::vector<MetricsRow> CurveRows(const ExperimentConfig &config, std::string_view task,
                                  std::span<const protocol::EpochMetric> curve);

RunOutput RunExperiment(const ExperimentConfig &config);
RunOutput RunExperiment(const ExperimentConfig &config, const MnistData &mnist);

// Runs FSL-HDC and FL-HDC on identical encodings.
RunOutput CompareMethods(const ExperimentConfig &config, const PreparedHdc &prepared);

// Writes <dir>/metrics.csv and <dir>/summary.json.
void WriteOutputs(const RunOutput &output, const std::string &dir);

// 2 config, 3 data, 4 infeasible scenario, 1 anything else.
int ExitCodeFor(const std::exception &error);

}  // namespace fslhdc::cli

#endif  // FSLHDC_EXPERIMENT_H_
