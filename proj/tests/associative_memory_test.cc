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

#include <numeric>
#include <vector>

#include "doctest.h"
#include "fslhdc/associative_memory.h"
#include "oracles.h"

using namespace fslhdc;
using namespace fslhdc::hdc;

namespace {

std::vector<LabeledHV> RandomSamples(RandomStream &rng, std::size_t n, std::size_t dim, int classes) {
  std::vector<LabeledHV> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back({RandomBipolar(dim, rng), static_cast<int>(rng.Uniform(static_cast<uint64_t>(classes)))});
  }
  return out;
}

template <typename T>
std::vector<double> ClassSum(const BasicAssociativeMemory<T> &am) {
  std::vector<double> sum(am.dim(), 0.0);
  for (const auto &[label, hv] : am.classes()) {
    for (std::size_t i = 0; i < am.dim(); ++i) sum[i] += static_cast<double>(hv[i]);
  }
  return sum;
}

}  // namespace

TEST_CASE("one-pass training sums sample HVs per class") {
  RandomStream rng(1);
  const auto samples = RandomSamples(rng, 200, 64, 5);
  const auto am = TrainOnePass(samples);
  const auto ref = testing::NaiveClassSums(samples);
  REQUIRE(am.num_classes() == ref.size());
  for (const auto &[label, sum] : ref) {
    for (std::size_t i = 0; i < 64; ++i) CHECK(am.at(label)[i] == sum[i]);
  }
  CHECK_THROWS_AS(TrainOnePass(std::vector<LabeledHV>{}), InvalidArgument);
}

TEST_CASE("one-pass training is invariant to sample order") {
  RandomStream rng(2);
  auto samples = RandomSamples(rng, 100, 32, 3);
  const auto am = TrainOnePass(samples);
  Shuffle(std::span<LabeledHV>(samples), rng);
  CHECK(TrainOnePass(samples) == am);
}

TEST_CASE("classify picks the most similar class and breaks ties to the smallest label") {
  AssociativeMemory am(2);
  am.set(3, Hypervector{1, 0});
  am.set(1, Hypervector{0, 1});
  CHECK(Classify(Hypervector{2, 1}, am) == 3);
  CHECK(Classify(Hypervector{1, 2}, am) == 1);
  CHECK(Classify(Hypervector{1, 1}, am) == 1);
  CHECK_THROWS_AS(Classify(Hypervector{0, 0}, am), DegenerateInput);
  CHECK_THROWS_AS(Classify(Hypervector{1, 1}, AssociativeMemory(2)), InvalidArgument);
}

TEST_CASE("classify is invariant to positive scaling of a class HV") {
  RandomStream rng(4);
  const auto samples = RandomSamples(rng, 60, 128, 4);
  const auto am = TrainOnePass(samples);
  for (int label : am.labels()) {
    auto scaled = am;
    for (auto &v : scaled.at(label).values()) v *= 7;
    for (const auto &s : samples) CHECK(Classify(s.hv, scaled) == Classify(s.hv, am));
  }
}

TEST_CASE("retraining update on a hand-worked example") {
  AssociativeMemory am(2);
  am.set(0, Hypervector{4, 0});
  am.set(1, Hypervector{0, 4});
  const std::vector<LabeledHV> batch{{Hypervector{3, 1}, 1}};
  CHECK(RetrainEpoch(am, batch, 1.0) == 1);
  CHECK(am.at(0) == Hypervector{1, -1});
  CHECK(am.at(1) == Hypervector{3, 5});
  CHECK(RetrainEpoch(am, batch, 1.0) == 0);
}

TEST_CASE("retraining conserves the sum of class HVs for integer alpha") {
  RandomStream rng(5);
  for (double alpha : {1.0, 3.0}) {
    const auto samples = RandomSamples(rng, 300, 200, 10);
    auto am = TrainOnePass(samples);
    const auto before = ClassSum(am);
    for (int epoch = 0; epoch < 5; ++epoch) {
      RetrainEpoch(am, samples, alpha);
      CHECK(ClassSum(am) == before);
    }
  }
}

TEST_CASE("retraining with real alpha uses real storage and conserves the sum within rounding") {
  RandomStream rng(6);
  const auto samples = RandomSamples(rng, 200, 64, 4);
  auto am = ToReal(TrainOnePass(samples));
  const auto before = ClassSum(am);
  RetrainEpoch(am, samples, 0.37);
  const auto after = ClassSum(am);
  for (std::size_t i = 0; i < before.size(); ++i) CHECK(after[i] == doctest::Approx(before[i]).epsilon(1e-9));
}

TEST_CASE("retraining validates its inputs") {
  AssociativeMemory am(2);
  am.set(0, Hypervector{1, 0});
  const std::vector<LabeledHV> batch{{Hypervector{0, 1}, 1}};
  CHECK_THROWS_AS(RetrainEpoch(am, batch, 0.5), InvalidArgument);
  CHECK_THROWS_AS(RetrainEpoch(am, batch, 0.0), InvalidArgument);
  CHECK_THROWS_AS(RetrainEpoch(am, std::vector<LabeledHV>{}, 1.0), InvalidArgument);
  CHECK_THROWS_AS(RetrainEpoch(am, std::vector<LabeledHV>{{Hypervector{1, 1, 1}, 0}}, 1.0), InvalidArgument);
  // A label absent from the model is created on its first miss.
  CHECK(RetrainEpoch(am, batch, 1.0) == 1);
  CHECK(am.at(1) == Hypervector{0, 1});
  CHECK(am.at(0) == Hypervector{1, -1});
}

TEST_CASE("variant wrappers dispatch on storage") {
  RandomStream rng(8);
  const auto samples = RandomSamples(rng, 50, 32, 3);
  AnyAssociativeMemory integral = TrainOnePass(samples);
  AnyAssociativeMemory real = ToReal(TrainOnePass(samples));
  CHECK(Dim(integral) == 32);
  CHECK(Evaluate(integral, samples) == Evaluate(real, samples));
  CHECK(RetrainEpoch(integral, samples, 1.0) == RetrainEpoch(real, samples, 1.0));
  CHECK(IsIntegral(2.0));
  CHECK_FALSE(IsIntegral(2.5));
  CHECK_THROWS_AS(Evaluate(integral, std::vector<LabeledHV>{}), InvalidArgument);
}
