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

#ifndef FSLHDC_ALLOCATION_H_
#define FSLHDC_ALLOCATION_H_

#include <cstddef>
#include <span>
#include <vector>

#include "fslhdc/transmission.h"

namespace fslhdc::wireless {

struct AllocationResult {
  std::vector<double> power_w;
  std::vector<double> bandwidth_hz;
  std::vector<double> rate_bps;
  std::vector<double> time_s;
  double objective_s = 0.0;  // max over users of time_s
  double gamma = 0.0;        // 1 / objective_s
  int iterations = 0;
  // Objective after every half-step (power, bandwidth, power, ...). Alternating only.
  std::vector<double> history_s;
};

// Fills rates, times, objective and gamma from powers and bandwidths.
AllocationResult Evaluate(const NetworkScenario &scenario, std::vector<double> power_w,
                          std::vector<double> bandwidth_hz);

// p_hat solving b log2(1 + p / (n0 b L)) / p = Q / E, by bisection on that
// strictly decreasing function. Throws InfeasibleEnergy when its p -> 0 limit,
// 1 / (n0 L ln 2), does not exceed Q / E.
double EnergyLimitedPower(double bandwidth_hz, double loss, const NetworkScenario &scenario);

// min(P_max, p_hat): the largest power meeting both the cap and the energy budget.
double OptimalPower(double bandwidth_hz, double loss, const NetworkScenario &scenario);

// Unique b with Rate(b, p, L) = target. Throws UnreachableRate when target is at
// or above RateSupremum(p, L).
double MinBandwidthForRate(double power_w, double loss, double target_rate_bps, const ChannelParams &ch);

// Max gamma over bandwidths for fixed powers, by outer bisection on gamma.
// Each user needs enough bandwidth for rate Q gamma and for the energy rate
// Q p / E; leftover budget is spread proportionally so the sum equals B.
AllocationResult BandwidthAllocation(std::span<const double> power_w, const NetworkScenario &scenario);

struct AlternatingOptions {
  int max_iterations = 50;
  double relative_tolerance = 1e-6;
};

// Uniform bandwidth start, then power and bandwidth steps in turn until the
// objective settles.
AllocationResult AlternatingOptimize(const NetworkScenario &scenario, const AlternatingOptions &options = {});

// B / U each, powers from OptimalPower.
AllocationResult BaselineUniform(const NetworkScenario &scenario);

// Exhaustive search over bandwidth splits in steps of B / grid_steps (every
// user at least one step), with OptimalPower at each point. At most 3 users.
AllocationResult BruteForceOracle(const NetworkScenario &scenario, std::size_t grid_steps);

}  // namespace fslhdc::wireless

#endif  // FSLHDC_ALLOCATION_H_
