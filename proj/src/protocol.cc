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

#include "fslhdc/protocol.h"

#include <cmath>
#include <numeric>
#include <variant>
#include <string>

#include "fslhdc/errors.h"
#include "fslhdc/random.h"

namespace fslhdc::protocol {
namespace {

enum : uint64_t { kTagFedOrder = 21, kTagMainOrder = 22 };

AssociativeMemory BipolarizeAll(const AnyAssociativeMemory &am) {
  return std::visit(
      [](const auto &m) {
        AssociativeMemory out(m.dim());
        for (const auto &[label, hv] : m.classes()) out.set(label, hdc::Bipolarize(hv));
        return out;
      },
      am);
}

std::vector<LabeledHV> InOrder(std::span<const LabeledHV> samples, uint64_t seed, uint64_t tag) {
  std::vector<std::size_t> order(samples.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  RandomStream rng(seed, tag);
  Shuffle(std::span<std::size_t>(order), rng);
  std::vector<LabeledHV> out;
  out.reserve(samples.size());
  for (std::size_t i : order) out.push_back(samples[i]);
  return out;
}

std::size_t CountErrors(const AnyAssociativeMemory &am, std::span<const LabeledHV> samples) {
  const double acc = hdc::Evaluate(am, samples);
  return static_cast<std::size_t>(std::llround((1.0 - acc) * static_cast<double>(samples.size())));
}

// One-pass model plus `epochs` retraining passes over `ordered`.
AnyAssociativeMemory TrainAndRetrain(std::span<const LabeledHV> ordered, const AssociativeMemory &one_pass,
                                     int epochs, double alpha, const EpochObserver &observer) {
  AnyAssociativeMemory model = hdc::IsIntegral(alpha) ? AnyAssociativeMemory(one_pass)
                                                      : AnyAssociativeMemory(hdc::ToReal(one_pass));
  if (observer) observer({0, CountErrors(model, ordered), model});
  for (int epoch = 1; epoch <= epochs; ++epoch) {
    const std::size_t errors = hdc::RetrainEpoch(model, ordered, alpha);
    if (observer) observer({epoch, errors, model});
  }
  return model;
}

}  // namespace

int ParityMap::operator()(int digit) const {
  if (digit < 0 || digit > 9) throw InvalidArgument("parity: digit " + std::to_string(digit) + " outside 0-9");
  return digit % 2;
}

SmashedAM::SmashedAM(AssociativeMemory am) : am_(std::move(am)) {
  for (const auto &[label, hv] : am_.classes()) {
    if (!hv.is_bipolar()) throw InvalidArgument("smashed AM: class " + std::to_string(label) + " is not bipolar");
  }
}

GlobalAM::GlobalAM(AnyAssociativeMemory am) : am_(std::move(am)) {
  const auto classes = std::visit([](const auto &m) { return m.num_classes(); }, am_);
  if (classes != 2) throw InvalidArgument("global AM: expected 2 parity classes, got " + std::to_string(classes));
}

std::vector<LabeledHV> EncodeDataset(const data::Dataset &ds, const hdc::ItemMemory &im, bool bipolarize_samples) {
  std::vector<LabeledHV> out;
  out.reserve(ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) {
    hdc::Hypervector hv = im.Encode(ds.image(i));
    if (bipolarize_samples) hv = hdc::Bipolarize(hv);
    out.push_back({std::move(hv), ds.labels[i]});
  }
  return out;
}

std::vector<LabeledHV> ClientEncode(const ClientState &client, bool bipolarize_samples) {
  if (client.local_samples.size() == 0) {
    throw InvalidArgument("client " + std::to_string(client.client_id) + ": empty local dataset");
  }
  if (!client.item_memory) throw InvalidArgument("client " + std::to_string(client.client_id) + ": no item memory");
  return EncodeDataset(client.local_samples, *client.item_memory, bipolarize_samples);
}

std::vector<LabeledHV> ToParity(std::span<const LabeledHV> digits, const ParityMap &parity) {
  std::vector<LabeledHV> out;
  out.reserve(digits.size());
  for (const auto &s : digits) out.push_back({s.hv, parity(s.label)});
  return out;
}

std::vector<LabeledHV> PoolUploads(std::span<const std::vector<LabeledHV>> uploads) {
  std::vector<LabeledHV> pooled;
  for (const auto &u : uploads) pooled.insert(pooled.end(), u.begin(), u.end());
  return pooled;
}

SmashedAM FedServerTrain(std::span<const LabeledHV> pooled, const FedServerOptions &options,
                         const EpochObserver &observer) {
  if (pooled.empty()) throw InvalidArgument("fed server: no uploads");
  if (options.epochs < 0) throw InvalidArgument("fed server: epochs must be >= 0");
  const AssociativeMemory one_pass = hdc::TrainOnePass(pooled);
  const auto ordered = InOrder(pooled, options.order_seed, kTagFedOrder);
  const auto model = TrainAndRetrain(ordered, one_pass, options.epochs, options.alpha, observer);
  return SmashedAM(BipolarizeAll(model));
}

MainServerResult MainServerTrain(const SmashedAM &smashed, std::span<const LabeledHV> local_digits,
                                 const ParityMap &parity, const MainServerOptions &options,
                                 const EpochObserver &observer) {
  if (local_digits.empty()) throw InvalidArgument("main server: no local samples");
  if (options.max_epochs < 0) throw InvalidArgument("main server: max_epochs must be >= 0");
  if (!(options.holdout_fraction >= 0.0 && options.holdout_fraction < 1.0)) {
    throw InvalidArgument("main server: holdout_fraction must be in [0, 1)");
  }
  const auto shuffled = InOrder(ToParity(local_digits, parity), options.order_seed, kTagMainOrder);
  const auto holdout_count =
      static_cast<std::size_t>(std::floor(options.holdout_fraction * static_cast<double>(shuffled.size())));
  const std::span<const LabeledHV> holdout(shuffled.data(), holdout_count);
  const std::span<const LabeledHV> train(shuffled.data() + holdout_count, shuffled.size() - holdout_count);
  if (train.empty()) throw InvalidArgument("main server: nothing left to train on after holdout");

  const std::size_t dim = train.front().hv.dim();
  if (smashed.am().dim() != dim) throw InvalidArgument("main server: smashed AM dimension mismatch");
  const bool integral = hdc::IsIntegral(options.alpha) && hdc::IsIntegral(options.weight_w);

  auto build = [&](auto tag) {
    using T = decltype(tag);
    hdc::BasicAssociativeMemory<T> am(dim);
    am.get_or_create(0);
    am.get_or_create(1);
    for (const auto &[digit, hv] : smashed.am().classes()) {
      auto acc = am.at(parity(digit)).values();
      for (std::size_t i = 0; i < dim; ++i) acc[i] += static_cast<T>(options.weight_w) * static_cast<T>(hv[i]);
    }
    for (const auto &s : train) {
      auto acc = am.at(s.label).values();
      for (std::size_t i = 0; i < dim; ++i) acc[i] += static_cast<T>(s.hv[i]);
    }
    return AnyAssociativeMemory(std::move(am));
  };
  AnyAssociativeMemory model = integral ? build(int32_t{}) : build(double{});

  const bool use_holdout = !holdout.empty();
  AnyAssociativeMemory best = model;
  double best_holdout = use_holdout ? hdc::Evaluate(model, holdout) : 0.0;
  int best_epoch = 0;
  int since_improvement = 0;
  int epochs_run = 0;
  if (observer) observer({0, CountErrors(model, train), model});
  for (int epoch = 1; epoch <= options.max_epochs; ++epoch) {
    const std::size_t errors = hdc::RetrainEpoch(model, train, options.alpha);
    epochs_run = epoch;
    if (observer) observer({epoch, errors, model});
    if (use_holdout) {
      const double acc = hdc::Evaluate(model, holdout);
      if (acc > best_holdout) {
        best_holdout = acc;
        best = model;
        best_epoch = epoch;
        since_improvement = 0;
      } else {
        ++since_improvement;
      }
    }
    if (errors == 0 || (use_holdout && since_improvement >= options.patience)) break;
  }
  if (!use_holdout) {
    best = std::move(model);
    best_epoch = epochs_run;
  }
  return MainServerResult{GlobalAM(std::move(best)), epochs_run, best_epoch};
}

MainServerResult MainServerTrain(const SmashedAM &smashed, const data::Dataset &local, const hdc::ItemMemory &im,
                                 bool bipolarize_samples, const ParityMap &parity, const MainServerOptions &options) {
  if (local.size() == 0) throw InvalidArgument("main server: no local samples");
  const auto encoded = EncodeDataset(local, im, bipolarize_samples);
  return MainServerTrain(smashed, encoded, parity, options);
}

double BroadcastAndEvaluate(const GlobalAM &global, std::span<const LabeledHV> test_digits, const ParityMap &parity) {
  if (test_digits.empty()) throw InvalidArgument("evaluate: empty test set");
  return hdc::Evaluate(global.am(), ToParity(test_digits, parity));
}

double BroadcastAndEvaluate(const GlobalAM &global, const data::Dataset &test, const hdc::ItemMemory &im,
                            bool bipolarize_samples, const ParityMap &parity) {
  if (test.size() == 0) throw InvalidArgument("evaluate: empty test set");
  return BroadcastAndEvaluate(global, EncodeDataset(test, im, bipolarize_samples), parity);
}

FlHdcResult FlHdcBaseline(std::span<const LabeledHV> pooled, const FedServerOptions &options,
                          const ParityMap &parity, std::span<const LabeledHV> test_digits) {
  if (pooled.empty()) throw InvalidArgument("fl-hdc: no uploads");
  if (options.epochs < 0) throw InvalidArgument("fl-hdc: epochs must be >= 0");
  const auto parity_samples = ToParity(pooled, parity);
  const auto parity_test = ToParity(test_digits, parity);
  const auto ordered = InOrder(parity_samples, options.order_seed, kTagFedOrder);
  std::vector<EpochMetric> curve;
  auto model = TrainAndRetrain(ordered, hdc::TrainOnePass(parity_samples), options.epochs, options.alpha,
                               [&](const EpochSnapshot &s) {
                                 curve.push_back({"fl", s.epoch, s.train_errors, hdc::Evaluate(s.model, parity_test)});
                               });
  const double accuracy = curve.back().accuracy;
  return FlHdcResult{accuracy, std::move(model), std::move(curve)};
}

FslResult RunFsl(std::span<const LabeledHV> pooled, std::span<const LabeledHV> main_local_digits,
                 std::span<const LabeledHV> test_digits, const FslOptions &options) {
  const ParityMap parity;
  std::vector<EpochMetric> fed_curve;
  std::vector<EpochMetric> by_fed_curve;
  const SmashedAM smashed = FedServerTrain(pooled, options.fed, [&](const EpochSnapshot &s) {
    fed_curve.push_back({"fed", s.epoch, s.train_errors, hdc::Evaluate(s.model, test_digits)});
    if (options.track_fed_epochs && s.epoch < options.fed.epochs) {
      const auto main = MainServerTrain(SmashedAM(BipolarizeAll(s.model)), main_local_digits, parity, options.main);
      by_fed_curve.push_back(
          {"fsl_by_fed", s.epoch, s.train_errors, BroadcastAndEvaluate(main.global, test_digits, parity)});
    }
  });

  const auto parity_test = ToParity(test_digits, parity);
  std::vector<EpochMetric> main_curve;
  const auto main = MainServerTrain(smashed, main_local_digits, parity, options.main, [&](const EpochSnapshot &s) {
    main_curve.push_back({"main", s.epoch, s.train_errors, hdc::Evaluate(s.model, parity_test)});
  });
  const double accuracy = BroadcastAndEvaluate(main.global, test_digits, parity);
  if (options.track_fed_epochs) {
    by_fed_curve.push_back({"fsl_by_fed", options.fed.epochs, fed_curve.back().train_errors, accuracy});
  }

  FslResult result{accuracy, hdc::TrainOnePass(pooled), {}};
  for (auto *part : {&fed_curve, &by_fed_curve, &main_curve}) {
    result.curve.insert(result.curve.end(), part->begin(), part->end());
  }
  return result;
}

}  // namespace fslhdc::protocol
