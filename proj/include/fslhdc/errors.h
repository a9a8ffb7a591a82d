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

#ifndef FSLHDC_ERRORS_H_
#define FSLHDC_ERRORS_H_

#include <stdexcept>
#include <string>

namespace fslhdc {

// Precondition violated by a caller-supplied argument.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input is well-formed but numerically degenerate (e.g. a zero-norm vector).
class DegenerateInput : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed on-disk data. `field()` names the offending header field or record.
class FormatError : public std::runtime_error {
 public:
  FormatError(std::string field, const std::string &what)
      : std::runtime_error(what), field_(std::move(field)) {}
  const std::string &field() const { return field_; }

 private:
  std::string field_;
};

// No positive transmit power satisfies a user's energy budget.
class InfeasibleEnergy : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Requested rate is at or above the bandwidth-unbounded supremum p/(n0 L ln2).
class UnreachableRate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Experiment configuration rejected. `key()` names the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string &reason)
      : std::runtime_error(key + ": " + reason), key_(std::move(key)) {}
  const std::string &key() const { return key_; }

 private:
  std::string key_;
};

}  // namespace fslhdc

#endif  // FSLHDC_ERRORS_H_
