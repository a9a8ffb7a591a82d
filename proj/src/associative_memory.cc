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

#include "fslhdc/associative_memory.h"

namespace fslhdc::hdc {

RealAssociativeMemory ToReal(const AssociativeMemory &am) {
  RealAssociativeMemory out(am.dim());
  for (const auto &[label, hv] : am.classes()) {
    std::vector<double> values(hv.values().begin(), hv.values().end());
    out.set(label, RealHypervector(std::move(values)));
  }
  return out;
}

AssociativeMemory TrainOnePass(std::span<const LabeledHV> samples) {
  if (samples.empty()) throw InvalidArgument("train: no samples");
  AssociativeMemory am(samples.front().hv.dim());
  for (const auto &s : samples) {
    detail::CheckSameDim(am.dim(), s.hv.dim(), "train");
    auto acc = am.get_or_create(s.label).values();
    auto v = s.hv.values();
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += v[i];
  }
  return am;
}

}  // namespace fslhdc::hdc
