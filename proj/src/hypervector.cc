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

#include "fslhdc/hypervector.h"

#include <string>

namespace fslhdc::hdc {

namespace detail {
void CheckSameDim(std::size_t a, std::size_t b, const char *op) {
  if (a != b) {
    throw InvalidArgument(std::string(op) + ": dimension mismatch (" + std::to_string(a) + " vs " +
                          std::to_string(b) + ")");
  }
}
}  // namespace detail

Hypervector RandomBipolar(std::size_t dim, RandomStream &rng) {
  Hypervector h(dim);
  auto out = h.values();
  uint64_t bits = 0;
  for (std::size_t i = 0; i < dim; ++i) {
    if (i % 64 == 0) bits = rng.Next();
    out[i] = (bits & 1U) ? 1 : -1;
    bits >>= 1;
  }
  return h;
}

Hypervector Bind(const Hypervector &a, const Hypervector &b) {
  detail::CheckSameDim(a.dim(), b.dim(), "bind");
  Hypervector out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) out[i] = a[i] * b[i];
  return out;
}

Hypervector Bundle(std::span<const Hypervector> hvs) {
  if (hvs.empty()) throw InvalidArgument("bundle: empty input");
  Hypervector out(hvs.front().dim());
  auto acc = out.values();
  for (const auto &h : hvs) {
    detail::CheckSameDim(out.dim(), h.dim(), "bundle");
    auto v = h.values();
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += v[i];
  }
  return out;
}

Hypervector Permute(const Hypervector &h, long long k) {
  if (h.dim() == 0) return h;
  const auto dim = static_cast<long long>(h.dim());
  const auto shift = static_cast<std::size_t>(((k % dim) + dim) % dim);
  Hypervector out(h.dim());
  for (std::size_t i = 0; i < h.dim(); ++i) out[(i + shift) % h.dim()] = h[i];
  return out;
}

Hypervector Bipolarize(const Hypervector &h) {
  Hypervector out(h.dim());
  for (std::size_t i = 0; i < h.dim(); ++i) out[i] = h[i] < 0 ? -1 : 1;
  return out;
}

Hypervector Bipolarize(const RealHypervector &h) {
  Hypervector out(h.dim());
  for (std::size_t i = 0; i < h.dim(); ++i) out[i] = h[i] < 0.0 ? -1 : 1;
  return out;
}

double NormalizedHamming(const Hypervector &a, const Hypervector &b) {
  detail::CheckSameDim(a.dim(), b.dim(), "hamming");
  std::size_t diff = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) diff += a[i] != b[i];
  return static_cast<double>(diff) / static_cast<double>(a.dim());
}

}  // namespace fslhdc::hdc
