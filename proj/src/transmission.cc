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

#include "fslhdc/transmission.h"

#include <cmath>
#include <numbers>
#include <algorithm>
#include <string>

#include "fslhdc/errors.h"
#include "fslhdc/random.h"

namespace fslhdc::wireless {
namespace {
enum : uint64_t { kTagPositions = 31 };

void CheckDistance(double d) {
  if (!(d > 0.0)) throw InvalidArgument("distance must be positive, got " + std::to_string(d));
}
}  // namespace

void Validate(const ChannelParams &ch) {
  if (!(ch.carrier_freq_hz > 0 && ch.noise_psd_w_per_hz > 0 && ch.los_exponent > 0 && ch.nlos_exponent > 0 &&
        ch.area_side_m > 0 && ch.reference_distance_m > 0)) {
    throw InvalidArgument("channel parameters must all be positive");
  }
  if (!(ch.los_exponent < ch.nlos_exponent)) throw InvalidArgument("LoS exponent must be below the NLoS exponent");
}

double ReferenceLoss(const ChannelParams &ch) {
  const double root = 4.0 * std::numbers::pi * ch.carrier_freq_hz * ch.reference_distance_m / kSpeedOfLight;
  return root * root;
}

double LosProbability(double distance_m) {
  CheckDistance(distance_m);
  if (distance_m <= 18.0) return 1.0;
  const double near = 18.0 / distance_m;
  return near + std::exp(-(distance_m - 18.0) / 63.0) * (1.0 - near);
}

double PathLoss(double distance_m, const ChannelParams &ch) {
  const double los = LosProbability(distance_m);
  const double beta = ReferenceLoss(ch);
  const double los_loss = beta * std::pow(distance_m, ch.los_exponent);
  if (los == 1.0) return los_loss;
  return los * los_loss + (1.0 - los) * beta * std::pow(distance_m, ch.nlos_exponent);
}

double Rate(double bandwidth_hz, double power_w, double loss, const ChannelParams &ch) {
  if (!(bandwidth_hz > 0.0)) throw InvalidArgument("rate: bandwidth must be positive");
  if (power_w < 0.0) throw InvalidArgument("rate: power must be non-negative");
  if (!(loss > 0.0)) throw InvalidArgument("rate: loss must be positive");
  return bandwidth_hz * std::log1p(power_w / (ch.noise_psd_w_per_hz * bandwidth_hz * loss)) / std::numbers::ln2;
}

double RateSupremum(double power_w, double loss, const ChannelParams &ch) {
  return power_w / (ch.noise_psd_w_per_hz * loss * std::numbers::ln2);
}

std::vector<double> NetworkScenario::PathLosses() const {
  std::vector<double> out;
  out.reserve(distances_m.size());
  for (double d : distances_m) out.push_back(PathLoss(d, channel));
  return out;
}

void Validate(const NetworkScenario &scenario) {
  Validate(scenario.channel);
  if (scenario.distances_m.empty()) throw InvalidArgument("scenario: no users");
  for (double d : scenario.distances_m) CheckDistance(d);
  if (!(scenario.total_bandwidth_hz > 0.0)) throw InvalidArgument("scenario: total bandwidth must be positive");
  if (!(scenario.max_power_w > 0.0)) throw InvalidArgument("scenario: max power must be positive");
  if (!(scenario.energy_budget_j > 0.0)) throw InvalidArgument("scenario: energy budget must be positive");
  if (!(scenario.payload_bits > 0.0)) throw InvalidArgument("scenario: payload must be positive");
}

std::vector<double> RandomUserDistances(std::size_t num_users, const ChannelParams &ch, uint64_t seed) {
  RandomStream rng(seed, kTagPositions);
  std::vector<double> out;
  out.reserve(num_users);
  const double half = ch.area_side_m / 2.0;
  for (std::size_t u = 0; u < num_users; ++u) {
    const double x = rng.Uniform01() * ch.area_side_m - half;
    const double y = rng.Uniform01() * ch.area_side_m - half;
    out.push_back(std::max(ch.reference_distance_m, std::hypot(x, y)));
  }
  return out;
}

}  // namespace fslhdc::wireless
