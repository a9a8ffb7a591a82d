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

#ifndef FSLHDC_PROTOCOL_H_
#define FSLHDC_PROTOCOL_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "fslhdc/associative_memory.h"
#include "fslhdc/dataset.h"
#include "fslhdc/item_memory.h"

namespace fslhdc::protocol {

using hdc::AnyAssociativeMemory;
using hdc::AssociativeMemory;
using hdc::LabeledHV;

// Digit -> parity class: even digits 0, odd digits 1.
struct ParityMap {
  int operator()(int digit) const;
};

struct ClientState {
  std::size_t client_id = 0;
  data::Dataset local_samples;
  std::shared_ptr<const hdc::ItemMemory> item_memory;
};

// Digit-class AM with every element in {+1, -1}; the fed server's upload.
class SmashedAM {
 public:
  // Throws InvalidArgument unless every class HV is bipolar.
  explicit SmashedAM(AssociativeMemory am);
  const AssociativeMemory &am() const { return am_; }

 private:
  AssociativeMemory am_;
};

// Exactly two parity classes.
class GlobalAM {
 public:
  explicit GlobalAM(AnyAssociativeMemory am);
  const AnyAssociativeMemory &am() const { return am_; }

 private:
  AnyAssociativeMemory am_;
};

// Encodes each sample with the shared item memory; bipolarizes when asked.
std::vector<LabeledHV> EncodeDataset(const data::Dataset &ds, const hdc::ItemMemory &im, bool bipolarize_samples);
std::vector<LabeledHV> ClientEncode(const ClientState &client, bool bipolarize_samples = true);

// Relabels digit-labelled HVs with their parity.
std::vector<LabeledHV> ToParity(std::span<const LabeledHV> digits, const ParityMap &parity);

struct EpochSnapshot {
  int epoch = 0;  // 0 is the one-pass model
  std::size_t train_errors = 0;
  const AnyAssociativeMemory &model;
};
using EpochObserver = std::function<void(const EpochSnapshot &)>;

struct FedServerOptions {
  int epochs = 15;
  double alpha = 1.0;
  // Seeds the retraining order, fixed across epochs.
  uint64_t order_seed = 0;
};

// Concatenates client uploads in client order.
std::vector<LabeledHV> PoolUploads(std::span<const std::vector<LabeledHV>> uploads);

// One-pass train over the pooled uploads, `epochs` online retraining passes in
// a seeded order, then bipolarization of every class HV.
SmashedAM FedServerTrain(std::span<const LabeledHV> pooled, const FedServerOptions &options,
                         const EpochObserver &observer = {});

struct MainServerOptions {
  // Retraining cap. Training stops early on an error-free epoch or when
  // held-out accuracy has not improved for `patience` consecutive epochs.
  int max_epochs = 30;
  double alpha = 1.0;
  double weight_w = 1.0;
  double holdout_fraction = 0.1;
  int patience = 3;
  uint64_t order_seed = 0;
};

struct MainServerResult {
  GlobalAM global;
  int epochs_run = 0;
  int selected_epoch = 0;
};

// Parity class n = weight_w * (sum of smashed digit HVs with parity n) + (sum of
// local sample HVs with parity n), then online retraining on the local HVs.
// `local_digits` carries digit labels. Returns the model with the best
// held-out accuracy (earliest on ties), or the last one if nothing is held out.
MainServerResult MainServerTrain(const SmashedAM &smashed, std::span<const LabeledHV> local_digits,
                                 const ParityMap &parity, const MainServerOptions &options,
                                 const EpochObserver &observer = {});
MainServerResult MainServerTrain(const SmashedAM &smashed, const data::Dataset &local, const hdc::ItemMemory &im,
                                 bool bipolarize_samples, const ParityMap &parity, const MainServerOptions &options);

// Client-side inference with the downloaded global AM.
double BroadcastAndEvaluate(const GlobalAM &global, std::span<const LabeledHV> test_digits, const ParityMap &parity);
double BroadcastAndEvaluate(const GlobalAM &global, const data::Dataset &test, const hdc::ItemMemory &im,
                            bool bipolarize_samples, const ParityMap &parity);

struct EpochMetric {
  std::string stage;
  int epoch = 0;
  std::size_t train_errors = 0;
  double accuracy = 0.0;
};

struct FlHdcResult {
  double accuracy = 0.0;
  AnyAssociativeMemory model;
  std::vector<EpochMetric> curve;  // stage "fl"
};

// FL-HDC: the fed server trains and retrains a parity AM directly on the
// pooled client HVs; no main-server stage.
FlHdcResult FlHdcBaseline(std::span<const LabeledHV> pooled, const FedServerOptions &options,
                          const ParityMap &parity, std::span<const LabeledHV> test_digits);

struct FslOptions {
  FedServerOptions fed;
  MainServerOptions main;
  // Also complete the pipeline from every fed-server epoch's smashed AM.
  bool track_fed_epochs = true;
};

struct FslResult {
  double accuracy = 0.0;
  AssociativeMemory one_pass;  // fed server model before retraining
  std::vector<EpochMetric> curve;
};

// Full protocol on pre-encoded data. Curve stages:
//   "fed"        fed-server epoch, digit test accuracy of the un-bipolarized AM
//   "fsl_by_fed" parity test accuracy of the full pipeline run from that epoch
//   "main"       main-server epoch of the final run, parity test accuracy
FslResult RunFsl(std::span<const LabeledHV> pooled, std::span<const LabeledHV> main_local_digits,
                 std::span<const LabeledHV> test_digits, const FslOptions &options);

}  // namespace fslhdc::protocol

#endif  // FSLHDC_PROTOCOL_H_
