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

#include <map>
#include <memory>
#include <set>
#include <variant>
#include <vector>

#include "doctest.h"
#include "fslhdc/protocol.h"
#include "oracles.h"

using namespace fslhdc;
using namespace fslhdc::hdc;
using namespace fslhdc::protocol;

namespace {

constexpr std::size_t kDim = 512;

// Noisy copies of ten random digit prototypes; flip probability sets the difficulty.
std::vector<LabeledHV> Clustered(uint64_t seed, std::size_t per_digit, double flip) {
  RandomStream proto_rng(1234);
  std::vector<Hypervector> protos;
  for (int d = 0; d < 10; ++d) protos.push_back(RandomBipolar(kDim, proto_rng));
  RandomStream rng(seed);
  std::vector<LabeledHV> out;
  for (std::size_t i = 0; i < per_digit; ++i) {
    for (int d = 0; d < 10; ++d) {
      Hypervector h = protos[d];
      for (auto &v : h.values()) {
        if (rng.Uniform01() < flip) v = -v;
      }
      out.push_back({std::move(h), d});
    }
  }
  return out;
}

}  // namespace

TEST_CASE("parity map") {
  const ParityMap parity;
  for (int d = 0; d < 10; ++d) CHECK(parity(d) == d % 2);
  CHECK_THROWS_AS(parity(10), InvalidArgument);
  CHECK_THROWS_AS(parity(-1), InvalidArgument);
}

TEST_CASE("smashed and global AM invariants") {
  AssociativeMemory am(2);
  am.set(0, Hypervector{1, -1});
  CHECK_NOTHROW(SmashedAM{am});
  am.set(1, Hypervector{2, -1});
  CHECK_THROWS_AS(SmashedAM{am}, InvalidArgument);
  CHECK_NOTHROW(GlobalAM{AnyAssociativeMemory(am)});
  am.set(2, Hypervector{1, 1});
  CHECK_THROWS_AS(GlobalAM{AnyAssociativeMemory(am)}, InvalidArgument);
}

TEST_CASE("client encode uses the shared item memory") {
  auto im = std::make_shared<const ItemMemory>(ItemMemoryOptions{.dim = 256, .seed = 7, .num_positions = 4});
  data::Dataset ds{.name = "c", .image_size = 4, .pixels = {0, 10, 200, 255, 5, 5, 5, 5}, .labels = {3, 8}, .ids = {0, 1}};
  const ClientState client{0, ds, im};
  const auto raw = ClientEncode(client, false);
  const auto bip = ClientEncode(client);
  REQUIRE(raw.size() == 2);
  CHECK(raw[0].label == 3);
  CHECK(raw[1].hv == im->Encode(ds.image(1)));
  CHECK(bip[0].hv == Bipolarize(raw[0].hv));
  CHECK_THROWS_AS(ClientEncode(ClientState{1, data::Dataset{}, im}), InvalidArgument);
  CHECK_THROWS_AS(ClientEncode(ClientState{2, ds, nullptr}), InvalidArgument);
}

TEST_CASE("pooled one-pass model does not depend on how samples are split across clients") {
  const auto samples = Clustered(1, 20, 0.2);
  std::vector<std::vector<LabeledHV>> by_index(4), by_label(4);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    by_index[i % 4].push_back(samples[i]);
    by_label[static_cast<std::size_t>(samples[i].label) % 4].push_back(samples[i]);
  }
  CHECK(TrainOnePass(PoolUploads(by_index)) == TrainOnePass(PoolUploads(by_label)));
  CHECK(PoolUploads(by_index).size() == samples.size());
}

TEST_CASE("fed server returns a bipolar digit AM") {
  const auto pooled = Clustered(2, 30, 0.3);
  const FedServerOptions opts{.epochs = 3, .alpha = 1.0, .order_seed = 5};
  std::vector<int> epochs;
  const auto smashed = FedServerTrain(pooled, opts, [&](const EpochSnapshot &s) { epochs.push_back(s.epoch); });
  CHECK(smashed.am().num_classes() == 10);
  for (const auto &[label, hv] : smashed.am().classes()) CHECK(hv.is_bipolar());
  CHECK(epochs == std::vector<int>{0, 1, 2, 3});
  CHECK(FedServerTrain(pooled, opts).am() == smashed.am());

  const auto zero = FedServerTrain(pooled, {.epochs = 0});
  const auto one_pass = TrainOnePass(pooled);
  for (const auto &[label, hv] : one_pass.classes()) CHECK(zero.am().at(label) == Bipolarize(hv));
  CHECK_THROWS_AS(FedServerTrain(std::vector<LabeledHV>{}, opts), InvalidArgument);
}

TEST_CASE("main server combines weighted smashed classes with local sums") {
  const auto pooled = Clustered(3, 10, 0.25);
  const auto local = Clustered(4, 5, 0.25);
  const auto smashed = FedServerTrain(pooled, {.epochs = 1});
  const ParityMap parity;
  const MainServerOptions opts{.max_epochs = 0, .weight_w = 3.0, .holdout_fraction = 0.0};
  const auto result = MainServerTrain(smashed, local, parity, opts);
  const auto &am = std::get<AssociativeMemory>(result.global.am());
  for (int n = 0; n < 2; ++n) {
    std::vector<int64_t> expected(kDim, 0);
    for (const auto &[digit, hv] : smashed.am().classes()) {
      if (digit % 2 != n) continue;
      for (std::size_t i = 0; i < kDim; ++i) expected[i] += 3 * hv[i];
    }
    for (const auto &s : local) {
      if (s.label % 2 != n) continue;
      for (std::size_t i = 0; i < kDim; ++i) expected[i] += s.hv[i];
    }
    for (std::size_t i = 0; i < kDim; ++i) CHECK(am.at(n)[i] == expected[i]);
  }
  CHECK(result.epochs_run == 0);
}

TEST_CASE("main server uses real storage for non-integral weights") {
  const auto pooled = Clustered(5, 10, 0.25);
  const auto smashed = FedServerTrain(pooled, {.epochs = 0});
  const auto result = MainServerTrain(smashed, pooled, ParityMap{}, {.max_epochs = 2, .weight_w = 0.5});
  CHECK(std::holds_alternative<RealAssociativeMemory>(result.global.am()));
}

TEST_CASE("main server early stopping bookkeeping") {
  const auto pooled = Clustered(6, 20, 0.4);
  const auto local = Clustered(7, 20, 0.4);
  const auto smashed = FedServerTrain(pooled, {.epochs = 2});
  for (int patience : {1, 3}) {
    const MainServerOptions opts{.max_epochs = 30, .patience = patience, .order_seed = 9};
    std::vector<std::size_t> errors;
    const auto r = MainServerTrain(smashed, local, ParityMap{}, opts,
                                   [&](const EpochSnapshot &s) { errors.push_back(s.train_errors); });
    CHECK(r.epochs_run <= 30);
    CHECK(r.selected_epoch <= r.epochs_run);
    CHECK(errors.size() == static_cast<std::size_t>(r.epochs_run) + 1);
    const bool clean_stop = errors.back() == 0;
    const bool patience_stop = r.epochs_run - r.selected_epoch >= patience;
    CHECK((clean_stop || patience_stop || r.epochs_run == 30));
  }
  CHECK_THROWS_AS(MainServerTrain(smashed, local, ParityMap{}, {.holdout_fraction = 1.0}), InvalidArgument);
  CHECK_THROWS_AS(MainServerTrain(smashed, std::vector<LabeledHV>{}, ParityMap{}, {}), InvalidArgument);
}

TEST_CASE("full protocol on separable clusters") {
  const auto pooled = Clustered(8, 40, 0.3);
  const auto local = Clustered(9, 20, 0.3);
  const auto test = Clustered(10, 20, 0.3);
  const FslOptions opts{.fed = {.epochs = 4, .order_seed = 1}, .main = {.order_seed = 2}};
  const auto fsl = RunFsl(pooled, local, test, opts);
  CHECK(fsl.accuracy > 0.95);
  CHECK(fsl.one_pass == TrainOnePass(pooled));
  std::map<std::string, int> stages;
  for (const auto &m : fsl.curve) ++stages[m.stage];
  CHECK(stages["fed"] == 5);
  CHECK(stages["fsl_by_fed"] == 5);
  CHECK(stages["main"] >= 1);
  CHECK(fsl.curve[9].stage == "fsl_by_fed");
  CHECK(fsl.curve[9].accuracy == fsl.accuracy);

  const auto fl = FlHdcBaseline(pooled, opts.fed, ParityMap{}, test);
  CHECK(fl.accuracy > 0.95);
  CHECK(fl.curve.size() == 5);
  CHECK(std::visit([](const auto &m) { return m.num_classes(); }, fl.model) == 2);

  auto untracked = opts;
  untracked.track_fed_epochs = false;
  const auto quick = RunFsl(pooled, local, test, untracked);
  CHECK(quick.accuracy == fsl.accuracy);
  for (const auto &m : quick.curve) CHECK(m.stage != "fsl_by_fed");
}
