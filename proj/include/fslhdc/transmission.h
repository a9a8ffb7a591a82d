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

#ifndef FSLHDC_TRANSMISSION_H_
#define FSLHDC_TRANSMISSION_H_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace fslhdc::wireless {

inline constexpr double kSpeedOfLight = 299792458.0;

struct ChannelParams {
  double carrier_freq_hz = 28e9;
  double noise_psd_w_per_hz = std::pow(10.0, -17.4) * 1e-3;  // -174 dBm/Hz
  double los_exponent = 2.0;
  double nlos_exponent = 3.3;
  double area_side_m = 200.0;
  double reference_distance_m = 1.0;
};

// Throws InvalidArgument unless every field is positive and los < nlos.
void Validate(const ChannelParams &ch);

// Free-space loss at the reference distance, (4 pi f_c d0 / c)^2.
double ReferenceLoss(const ChannelParams &ch);

// 1 up to 18 m, then 18/d + exp(-(d - 18)/63) (1 - 18/d).
double LosProbability(double distance_m);

// Expected linear path loss: P_LoS beta d^l + (1 - P_LoS) beta d^n.
double PathLoss(double distance_m, const ChannelParams &ch);

// b log2(1 + p / (n0 b L)) in bit/s.
double Rate(double bandwidth_hz, double power_w, double loss, const ChannelParams &ch);

// Limit of Rate as bandwidth grows without bound: p / (n0 L ln 2).
double RateSupremum(double power_w, double loss, const ChannelParams &ch);

struct NetworkScenario {
  std::vector<double> distances_m;
  double total_bandwidth_hz = 100e6;
  double max_power_w = 1.0;
  double energy_budget_j = 5.0;
  double payload_bits = 6e6;
  ChannelParams channel;

  std::size_t num_users() const { return distances_m.size(); }
  std::vector<double> PathLosses() const;
};

void Validate(const NetworkScenario &scenario);

// Users uniform in the area square with the fed server at its center;
// distances floored at the reference distance.
std::vector<double> RandomUserDistances(std::size_t num_users, const ChannelParams &ch, uint64_t seed);

}  // namespace fslhdc::wireless

#endif  // FSLHDC_TRANSMISSION_H_
