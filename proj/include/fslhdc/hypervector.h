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

#ifndef FSLHDC_HYPERVECTOR_H_
#define FSLHDC_HYPERVECTOR_H_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "fslhdc/errors.h"
#include "fslhdc/random.h"

namespace fslhdc::hdc {

// Fixed-dimension vector of HDC elements. The dimension is set at construction
// and never changes; every operation below preserves it.
template <typename T>
class BasicHypervector {
 public:
  using value_type = T;

  BasicHypervector() = default;
  explicit BasicHypervector(std::size_t dim) : values_(CheckedDim(dim), T{0}) {}
  explicit BasicHypervector(std::vector<T> values) : values_(std::move(values)) { CheckedDim(values_.size()); }
  BasicHypervector(std::initializer_list<T> values) : values_(values) { CheckedDim(values_.size()); }

  std::size_t dim() const { return values_.size(); }
  std::span<const T> values() const { return values_; }
  std::span<T> values() { return values_; }
  T operator[](std::size_t i) const { return values_[i]; }
  T &operator[](std::size_t i) { return values_[i]; }

  bool is_bipolar() const {
    for (T v : values_) {
      if (v != T{1} && v != T{-1}) return false;
    }
    return !values_.empty();
  }

  bool operator==(const BasicHypervector &) const = default;

 private:
  static std::size_t CheckedDim(std::size_t dim) {
    if (dim == 0) throw InvalidArgument("hypervector dimension must be positive");
    return dim;
  }

  std::vector<T> values_;
};

using Hypervector = BasicHypervector<int32_t>;
using RealHypervector = BasicHypervector<double>;

// Each element independently +1/-1 with probability 1/2, 64 elements per draw.
Hypervector RandomBipolar(std::size_t dim, RandomStream &rng);

Hypervector Bind(const Hypervector &a, const Hypervector &b);
Hypervector Bundle(std::span<const Hypervector> hvs);
// Circular right shift: out[(i + k) mod D] = h[i]. Negative k shifts left.
Hypervector Permute(const Hypervector &h, long long k);
// Element-wise sign with 0 -> +1.
Hypervector Bipolarize(const Hypervector &h);
Hypervector Bipolarize(const RealHypervector &h);

// Fraction of positions where a and b differ.
double NormalizedHamming(const Hypervector &a, const Hypervector &b);

namespace detail {

// Eight independent accumulators in a fixed order: exact for integer data
// (|sum| < 2^53) and reproducible for real data.
template <typename A, typename B>
double Dot(std::span<const A> a, std::span<const B> b) {
  double acc[8] = {0, 0, 0, 0, 0, 0, 0, 0};
  const std::size_t n = a.size();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    for (int j = 0; j < 8; ++j) {
      acc[j] += static_cast<double>(a[i + j]) * static_cast<double>(b[i + j]);
    }
  }
  for (int j = 0; i < n; ++i, ++j) {
    acc[j] += static_cast<double>(a[i]) * static_cast<double>(b[i]);
  }
  return ((acc[0] + acc[1]) + (acc[2] + acc[3])) + ((acc[4] + acc[5]) + (acc[6] + acc[7]));
}

void CheckSameDim(std::size_t a, std::size_t b, const char *op);

}  // namespace detail

template <typename A, typename B>
double Dot(const BasicHypervector<A> &a, const BasicHypervector<B> &b) {
  detail::CheckSameDim(a.dim(), b.dim(), "dot");
  return detail::Dot(a.values(), b.values());
}

template <typename T>
double Norm(const BasicHypervector<T> &h) {
  return std::sqrt(detail::Dot(h.values(), h.values()));
}

// dot(a, b) / (|a| |b|). Throws DegenerateInput when either operand is all-zero.
template <typename A, typename B>
double CosineSimilarity(const BasicHypervector<A> &a, const BasicHypervector<B> &b) {
  detail::CheckSameDim(a.dim(), b.dim(), "cosine_similarity");
  const double na = Norm(a);
  const double nb = Norm(b);
  if (na == 0.0 || nb == 0.0) throw DegenerateInput("cosine_similarity: zero-norm operand");
  return detail::Dot(a.values(), b.values()) / (na * nb);
}

}  // namespace fslhdc::hdc

#endif  // FSLHDC_HYPERVECTOR_H_
