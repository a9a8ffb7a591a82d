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

#ifndef FSLHDC_ASSOCIATIVE_MEMORY_H_
#define FSLHDC_ASSOCIATIVE_MEMORY_H_

#include <cmath>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "fslhdc/errors.h"
#include "fslhdc/hypervector.h"

namespace fslhdc::hdc {

struct LabeledHV {
  Hypervector hv;
  int label = 0;

  bool operator==(const LabeledHV &) const = default;
};

// Label -> class hypervector. Labels iterate in ascending order.
template <typename T>
class BasicAssociativeMemory {
 public:
  using ClassHV = BasicHypervector<T>;

  explicit BasicAssociativeMemory(std::size_t dim) : dim_(dim) {
    if (dim == 0) throw InvalidArgument("associative memory: dim must be positive");
  }

  std::size_t dim() const { return dim_; }
  std::size_t num_classes() const { return classes_.size(); }
  bool empty() const { return classes_.empty(); }
  bool contains(int label) const { return classes_.count(label) != 0; }

  std::vector<int> labels() const {
    std::vector<int> out;
    out.reserve(classes_.size());
    for (const auto &[label, hv] : classes_) out.push_back(label);
    return out;
  }

  const ClassHV &at(int label) const {
    auto it = classes_.find(label);
    if (it == classes_.end()) throw InvalidArgument("associative memory: unknown label " + std::to_string(label));
    return it->second;
  }
  ClassHV &at(int label) { return const_cast<ClassHV &>(std::as_const(*this).at(label)); }

  // Zero-filled class HV for `label`, created on first use.
  ClassHV &get_or_create(int label) { return classes_.try_emplace(label, dim_).first->second; }

  void set(int label, ClassHV hv) {
    detail::CheckSameDim(dim_, hv.dim(), "associative memory");
    classes_.insert_or_assign(label, std::move(hv));
  }

  const std::map<int, ClassHV> &classes() const { return classes_; }

  bool operator==(const BasicAssociativeMemory &) const = default;

 private:
  std::size_t dim_;
  std::map<int, ClassHV> classes_;
};

using AssociativeMemory = BasicAssociativeMemory<int32_t>;
using RealAssociativeMemory = BasicAssociativeMemory<double>;

RealAssociativeMemory ToReal(const AssociativeMemory &am);

// One-pass training: each class HV is the element-wise sum of its samples.
AssociativeMemory TrainOnePass(std::span<const LabeledHV> samples);

namespace detail {

// Class norms cached next to an AM; refreshed per class after each update.
template <typename T>
class Scorer {
 public:
  explicit Scorer(const BasicAssociativeMemory<T> &am) : am_(am) {
    for (const auto &[label, hv] : am.classes()) norms_[label] = Norm(hv);
  }

  void Refresh(int label) { norms_[label] = Norm(am_.at(label)); }

  // Highest cosine wins; a strict comparison in ascending label order makes
  // the smallest label win ties. Zero-norm classes score 0.
  int Predict(const Hypervector &query) const {
    if (am_.empty()) throw InvalidArgument("classify: empty associative memory");
    CheckSameDim(query.dim(), am_.dim(), "classify");
    const double qn = Norm(query);
    if (qn == 0.0) throw DegenerateInput("classify: zero-norm query");
    int best = 0;
    double best_score = -2.0;
    for (const auto &[label, hv] : am_.classes()) {
      const double cn = norms_.at(label);
      const double score = cn == 0.0 ? 0.0 : Dot(query.values(), hv.values()) / (qn * cn);
      if (score > best_score) {
        best_score = score;
        best = label;
      }
    }
    return best;
  }

 private:
  const BasicAssociativeMemory<T> &am_;
  std::map<int, double> norms_;
};

template <typename T>
void Axpy(BasicHypervector<T> &y, double alpha, const Hypervector &x) {
  auto out = y.values();
  auto in = x.values();
  if constexpr (std::is_integral_v<T>) {
    const auto a = static_cast<T>(alpha);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += a * static_cast<T>(in[i]);
  } else {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += alpha * static_cast<T>(in[i]);
  }
}

}  // namespace detail

// Label whose class HV has the highest cosine similarity with `query`;
// ties go to the smallest label.
template <typename T>
int Classify(const Hypervector &query, const BasicAssociativeMemory<T> &am) {
  return detail::Scorer<T>(am).Predict(query);
}

// One online retraining pass in sample order. Each sample is classified
// against the live AM; on a miss, alpha * hv moves from the predicted class to
// the true class. Returns the number of misses. Integer AMs require an
// integer-valued alpha.
template <typename T>
std::size_t RetrainEpoch(BasicAssociativeMemory<T> &am, std::span<const LabeledHV> samples, double alpha) {
  if (!(alpha > 0.0)) throw InvalidArgument("retrain: alpha must be positive");
  if constexpr (std::is_integral_v<T>) {
    if (alpha != std::floor(alpha)) throw InvalidArgument("retrain: integer AM needs an integer alpha");
  }
  if (samples.empty()) throw InvalidArgument("retrain: no samples");
  for (const auto &s : samples) detail::CheckSameDim(s.hv.dim(), am.dim(), "retrain");
  detail::Scorer<T> scorer(am);
  std::size_t misses = 0;
  for (const auto &s : samples) {
    const int predicted = scorer.Predict(s.hv);
    if (predicted == s.label) continue;
    ++misses;
    detail::Axpy(am.at(predicted), -alpha, s.hv);
    detail::Axpy(am.get_or_create(s.label), alpha, s.hv);
    scorer.Refresh(predicted);
    scorer.Refresh(s.label);
  }
  return misses;
}

// Fraction of `test` whose predicted label matches.
template <typename T>
double Evaluate(const BasicAssociativeMemory<T> &am, std::span<const LabeledHV> test) {
  if (test.empty()) throw InvalidArgument("evaluate: empty test set");
  detail::Scorer<T> scorer(am);
  std::size_t correct = 0;
  for (const auto &s : test) correct += scorer.Predict(s.hv) == s.label;
  return static_cast<double>(correct) / static_cast<double>(test.size());
}

// Integer storage while every update weight is integral, real storage otherwise.
using AnyAssociativeMemory = std::variant<AssociativeMemory, RealAssociativeMemory>;

inline std::size_t Dim(const AnyAssociativeMemory &am) {
  return std::visit([](const auto &m) { return m.dim(); }, am);
}
inline int Classify(const Hypervector &query, const AnyAssociativeMemory &am) {
  return std::visit([&](const auto &m) { return Classify(query, m); }, am);
}
inline std::size_t RetrainEpoch(AnyAssociativeMemory &am, std::span<const LabeledHV> samples, double alpha) {
  return std::visit([&](auto &m) { return RetrainEpoch(m, samples, alpha); }, am);
}
inline double Evaluate(const AnyAssociativeMemory &am, std::span<const LabeledHV> test) {
  return std::visit([&](const auto &m) { return Evaluate(m, test); }, am);
}
inline bool IsIntegral(double x) { return std::isfinite(x) && x == std::floor(x); }

}  // namespace fslhdc::hdc

#endif  // FSLHDC_ASSOCIATIVE_MEMORY_H_
