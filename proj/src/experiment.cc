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

#include "fslhdc/experiment.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <unordered_map>

#include <fmt/format.h>

#include "fslhdc/errors.h"
#include "fslhdc/random.h"

namespace fslhdc::cli {
namespace {

enum : uint64_t {
  kTagItemMemory = 41,
  kTagSubsample = 42,
  kTagPartition = 43,
  kTagMainDraw = 44,
  kTagFedOrder = 45,
  kTagMainOrder = 46,
  kTagPositions = 47,
};

std::string Num(double v) { return fmt::format("{:.10g}", v); }

std::string Cell(const std::optional<double> &v) { return v ? Num(*v) : std::string(); }

std::string JoinList(const std::vector<double> &values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ';';
    out += Num(values[i]);
  }
  return out;
}

std::string ResolvePath(const std::string &explicit_path, const std::string &dir, const std::string &file,
                        const char *key) {
  if (!explicit_path.empty()) return explicit_path;
  if (dir.empty()) throw ConfigError(key, "no path given and mnist_dir is unset");
  const auto plain = std::filesystem::path(dir) / file;
  if (std::filesystem::exists(plain)) return plain.string();
  const auto gz = std::filesystem::path(dir) / (file + ".gz");
  if (std::filesystem::exists(gz)) return gz.string();
  throw FormatError(key, "missing " + plain.string() + " (or .gz)");
}

std::string RunId(const ExperimentConfig &config, std::string_view task) {
  return fmt::format("{}-{}", task, config.master_seed);
}

MetricsRow BaseRow(const ExperimentConfig &config, std::string_view task, std::string stage) {
  MetricsRow row;
  row.run_id = RunId(config, task);
  row.seed = config.master_seed;
  row.task = std::string(task);
  row.stage = std::move(stage);
  return row;
}

MetricsRow AllocationRow(const ExperimentConfig &config, std::string_view task, const std::string &method,
                         const wireless::NetworkScenario &scenario, const wireless::AllocationResult &r) {
  MetricsRow row = BaseRow(config, task, "allocation");
  row.bandwidth_hz = scenario.total_bandwidth_hz;
  row.p_max_w = scenario.max_power_w;
  row.method = method;
  row.objective_s = r.objective_s;
  row.powers_w = r.power_w;
  row.bandwidths_hz = r.bandwidth_hz;
  row.times_s = r.time_s;
  return row;
}

RunOutput RunFslTask(const ExperimentConfig &config, const PreparedHdc &prepared) {
  const auto pooled = prepared.Pooled();
  const auto result = protocol::RunFsl(pooled, prepared.main_encoded, prepared.test_encoded, FslOptionsFor(config));
  RunOutput out;
  out.rows = CurveRows(config, "fsl_hdc", result.curve);
  MetricsRow final_row = BaseRow(config, "fsl_hdc", "final");
  final_row.accuracy = result.accuracy;
  out.rows.push_back(final_row);
  out.summary["task"] = "fsl_hdc";
  out.summary["seed"] = config.master_seed;
  out.summary["partition"] = config.partition.mode == data::PartitionMode::kIid ? "iid" : "noniid";
  out.summary["fsl_accuracy"] = result.accuracy;
  return out;
}

RunOutput RunFlTask(const ExperimentConfig &config, const PreparedHdc &prepared) {
  const auto pooled = prepared.Pooled();
  const auto result =
      protocol::FlHdcBaseline(pooled, FedOptionsFor(config), protocol::ParityMap{}, prepared.test_encoded);
  RunOutput out;
  out.rows = CurveRows(config, "fl_hdc", result.curve);
  MetricsRow final_row = BaseRow(config, "fl_hdc", "final");
  final_row.accuracy = result.accuracy;
  out.rows.push_back(final_row);
  out.summary["task"] = "fl_hdc";
  out.summary["seed"] = config.master_seed;
  out.summary["fl_accuracy"] = result.accuracy;
  return out;
}

RunOutput RunHdcUnitTask(const ExperimentConfig &config, const PreparedHdc &prepared) {
  const auto pooled = prepared.Pooled();
  std::vector<protocol::EpochMetric> curve;
  protocol::FedServerTrain(pooled, FedOptionsFor(config), [&](const protocol::EpochSnapshot &s) {
    curve.push_back({"digit", s.epoch, s.train_errors, hdc::Evaluate(s.model, prepared.test_encoded)});
  });
  RunOutput out;
  out.rows = CurveRows(config, "hdc_unit", curve);
  out.summary["task"] = "hdc_unit";
  out.summary["seed"] = config.master_seed;
  out.summary["digit_accuracy_one_pass"] = curve.front().accuracy;
  out.summary["digit_accuracy_final"] = curve.back().accuracy;
  return out;
}

RunOutput RunNetTask(const ExperimentConfig &config, bool sweep) {
  const std::string_view task = sweep ? "net_sweep" : "net_opt";
  std::vector<double> bandwidths = sweep ? config.sweep_bandwidths_mhz : std::vector<double>{config.bandwidth_mhz};
  std::vector<double> powers = sweep && !config.sweep_p_max_w.empty() ? config.sweep_p_max_w
                                                                      : std::vector<double>{config.p_max_w};
  RunOutput out;
  out.summary["task"] = task;
  out.summary["seed"] = config.master_seed;
  auto points = nlohmann::ordered_json::array();
  for (double p_max : powers) {
    for (double b_mhz : bandwidths) {
      const auto scenario = ScenarioFor(config, b_mhz, p_max);
      const auto joint = wireless::AlternatingOptimize(scenario);
      const auto baseline = wireless::BaselineUniform(scenario);
      out.rows.push_back(AllocationRow(config, task, "joint", scenario, joint));
      out.rows.push_back(AllocationRow(config, task, "baseline", scenario, baseline));
      nlohmann::ordered_json point;
      point["bandwidth_hz"] = scenario.total_bandwidth_hz;
      point["p_max_w"] = p_max;
      point["T_joint_s"] = joint.objective_s;
      point["T_baseline_s"] = baseline.objective_s;
      point["improvement"] = (baseline.objective_s - joint.objective_s) / baseline.objective_s;
      point["iterations"] = joint.iterations;
      points.push_back(point);
    }
  }
  if (sweep) {
    out.summary["points"] = points;
  } else {
    for (auto &[key, value] : points.front().items()) out.summary[key] = value;
  }
  return out;
}

}  // namespace

const std::string &MetricsHeader() {
  static const std::string header =
      "run_id,seed,task,stage,epoch,train_errors,accuracy,bandwidth_hz,p_max_w,method,objective_s,powers_w,"
      "bandwidths_hz,times_s";
  return header;
}

std::string FormatMetricsCsv(std::span<const MetricsRow> rows) {
  std::string out = MetricsHeader() + "\n";
  for (const auto &r : rows) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", r.run_id, r.seed, r.task, r.stage,
                       r.epoch ? std::to_string(*r.epoch) : "", r.train_errors ? std::to_string(*r.train_errors) : "",
                       Cell(r.accuracy), Cell(r.bandwidth_hz), Cell(r.p_max_w), r.method, Cell(r.objective_s),
                       JoinList(r.powers_w), JoinList(r.bandwidths_hz), JoinList(r.times_s));
  }
  return out;
}

MnistData LoadMnist(const ExperimentConfig &config) {
  const auto &dir = config.mnist_dir;
  MnistData mnist{
      data::LoadIdx(ResolvePath(config.train_images, dir, "train-images-idx3-ubyte", "train_images"),
                    ResolvePath(config.train_labels, dir, "train-labels-idx1-ubyte", "train_labels"), "mnist-train"),
      data::LoadIdx(ResolvePath(config.test_images, dir, "t10k-images-idx3-ubyte", "test_images"),
                    ResolvePath(config.test_labels, dir, "t10k-labels-idx1-ubyte", "test_labels"), "mnist-test"),
  };
  return mnist;
}

PreparedHdc PrepareHdc(const ExperimentConfig &config, const MnistData &mnist) {
  const uint64_t seed = config.master_seed;
  PreparedHdc p;
  hdc::ItemMemoryOptions im;
  im.dim = config.hv_dim;
  im.seed = DeriveSeed(seed, kTagItemMemory);
  im.num_positions = mnist.train.image_size;
  im.value_encoding = config.value_encoding;
  p.item_memory = std::make_shared<const hdc::ItemMemory>(im);

  p.client_pool = data::Subsample(mnist.train, config.client_per_class, DeriveSeed(seed, kTagSubsample));
  p.main_local = data::SampleRows(data::Complement(mnist.train, p.client_pool), config.main_server_samples,
                                  DeriveSeed(seed, kTagMainDraw), "main-server");
  if (config.test_limit > 0 && config.test_limit < mnist.test.size()) {
    std::vector<std::size_t> rows(config.test_limit);
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
    p.test = mnist.test.Select(rows, mnist.test.name);
  } else {
    p.test = mnist.test;
  }

  p.pool_encoded = protocol::EncodeDataset(p.client_pool, *p.item_memory, config.bipolarize_samples);
  p.main_encoded = protocol::EncodeDataset(p.main_local, *p.item_memory, config.bipolarize_samples);
  p.test_encoded = protocol::EncodeDataset(p.test, *p.item_memory, config.bipolarize_samples);
  return Repartition(p, config);
}

PreparedHdc Repartition(const PreparedHdc &prepared, const ExperimentConfig &config) {
  PreparedHdc p = prepared;
  data::PartitionSpec spec = config.partition;
  spec.seed = DeriveSeed(config.master_seed, kTagPartition);
  p.clients = data::Partition(p.client_pool, spec);
  std::unordered_map<std::size_t, std::size_t> row_of_id;
  for (std::size_t i = 0; i < p.client_pool.size(); ++i) row_of_id[p.client_pool.ids[i]] = i;
  p.uploads.clear();
  for (const auto &client : p.clients) {
    std::vector<hdc::LabeledHV> upload;
    upload.reserve(client.size());
    for (std::size_t id : client.ids) upload.push_back(p.pool_encoded[row_of_id.at(id)]);
    p.uploads.push_back(std::move(upload));
  }
  return p;
}

protocol::FedServerOptions FedOptionsFor(const ExperimentConfig &config) {
  protocol::FedServerOptions fed;
  fed.epochs = config.fed_epochs;
  fed.alpha = config.alpha;
  fed.order_seed = DeriveSeed(config.master_seed, kTagFedOrder);
  return fed;
}

protocol::FslOptions FslOptionsFor(const ExperimentConfig &config) {
  protocol::FslOptions options;
  options.fed = FedOptionsFor(config);
  options.main.max_epochs = config.main_epochs;
  options.main.alpha = config.alpha;
  options.main.weight_w = config.weight_w;
  options.main.holdout_fraction = config.holdout_fraction;
  options.main.patience = config.patience;
  options.main.order_seed = DeriveSeed(config.master_seed, kTagMainOrder);
  options.track_fed_epochs = config.track_fed_epochs;
  return options;
}

wireless::NetworkScenario ScenarioFor(const ExperimentConfig &config, double bandwidth_mhz, double p_max_w) {
  wireless::NetworkScenario s;
  s.channel.carrier_freq_hz = config.carrier_ghz * 1e9;
  s.channel.noise_psd_w_per_hz = std::pow(10.0, config.noise_dbm_per_hz / 10.0) * 1e-3;
  s.channel.los_exponent = config.los_exponent;
  s.channel.nlos_exponent = config.nlos_exponent;
  s.channel.area_side_m = config.area_side_m;
  s.total_bandwidth_hz = bandwidth_mhz * 1e6;
  s.max_power_w = p_max_w;
  s.energy_budget_j = config.energy_j;
  s.payload_bits = config.payload_bits;
  s.distances_m = wireless::RandomUserDistances(config.num_users, s.channel, DeriveSeed(config.master_seed,
                                                                                        kTagPositions));
  return s;
}

std::vector<MetricsRow> CurveRows(const ExperimentConfig &config, std::string_view task,
                                  std::span<const protocol::EpochMetric> curve) {
  std::vector<MetricsRow> rows;
  for (const auto &m : curve) {
    MetricsRow row = BaseRow(config, task, m.stage);
    row.epoch = m.epoch;
    row.train_errors = m.train_errors;
    row.accuracy = m.accuracy;
    rows.push_back(std::move(row));
  }
  return rows;
}

RunOutput CompareMethods(const ExperimentConfig &config, const PreparedHdc &prepared) {
  auto fsl = RunFslTask(config, prepared);
  auto fl = RunFlTask(config, prepared);
  RunOutput out;
  for (auto *part : {&fsl.rows, &fl.rows}) {
    for (auto &row : *part) {
      row.run_id = RunId(config, "compare");
      out.rows.push_back(std::move(row));
    }
  }
  const double fsl_acc = fsl.summary["fsl_accuracy"];
  const double fl_acc = fl.summary["fl_accuracy"];
  out.summary["task"] = "compare";
  out.summary["seed"] = config.master_seed;
  out.summary["fsl_accuracy"] = fsl_acc;
  out.summary["fl_accuracy"] = fl_acc;
  out.summary["delta_fl_minus_fsl"] = fl_acc - fsl_acc;
  return out;
}

RunOutput RunExperiment(const ExperimentConfig &config) {
  Validate(config);
  if (config.task == Task::kNetOpt || config.task == Task::kNetSweep) return RunExperiment(config, MnistData{});
  return RunExperiment(config, LoadMnist(config));
}

RunOutput RunExperiment(const ExperimentConfig &config, const MnistData &mnist) {
  Validate(config);
  switch (config.task) {
    case Task::kNetOpt:
      return RunNetTask(config, false);
    case Task::kNetSweep:
      return RunNetTask(config, true);
    default:
      break;
  }
  const PreparedHdc prepared = PrepareHdc(config, mnist);
  switch (config.task) {
    case Task::kFslHdc:
      return RunFslTask(config, prepared);
    case Task::kFlHdc:
      return RunFlTask(config, prepared);
    case Task::kHdcUnit:
      return RunHdcUnitTask(config, prepared);
    default:
      return CompareMethods(config, prepared);
  }
}

void WriteOutputs(const RunOutput &output, const std::string &dir) {
  std::filesystem::create_directories(dir);
  std::ofstream csv(std::filesystem::path(dir) / "metrics.csv", std::ios::binary);
  csv << FormatMetricsCsv(output.rows);
  std::ofstream json(std::filesystem::path(dir) / "summary.json", std::ios::binary);
  json << output.summary.dump(2) << "\n";
  if (!csv || !json) throw std::runtime_error("failed writing outputs to " + dir);
}

int ExitCodeFor(const std::exception &error) {
  if (dynamic_cast<const ConfigError *>(&error) != nullptr) return 2;
  if (dynamic_cast<const FormatError *>(&error) != nullptr) return 3;
  if (dynamic_cast<const InfeasibleEnergy *>(&error) != nullptr) return 4;
  if (dynamic_cast<const UnreachableRate *>(&error) != nullptr) return 4;
  return 1;
}

}  // namespace fslhdc::cli
