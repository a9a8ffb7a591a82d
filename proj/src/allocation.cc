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

#include "fslhdc/allocation.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>
#include <numbers>
#include <string>
#include <utility>

#include "fslhdc/errors.h"

namespace fslhdc::wireless {
namespace {

constexpr int kMaxBisections = 200;
constexpr double kBracketRelWidth = 1e-15;

// Brackets the boundary of a monotone predicate around `guess` by doubling or
// halving: returns (lo, hi) with is_low(lo) and !is_low(hi).
template <typename Pred>
std::pair<double, double> Bracket(const Pred &is_low, double guess) {
  double lo = guess;
  double hi = guess;
  if (is_low(guess)) {
    for (int i = 0; i < 2000 && is_low(hi); ++i) {
      lo = hi;
      hi *= 2.0;
      if (!std::isfinite(hi)) throw std::runtime_error("bisection bracket diverged");
    }
  } else {
    for (int i = 0; i < 2000 && !is_low(lo); ++i) {
      hi = lo;
      lo /= 2.0;
      if (lo == 0.0) break;
    }
  }
  return {lo, hi};
}

// Narrows (lo, hi) around the predicate boundary to a relative width of ~1e-15.
template <typename Pred>
std::pair<double, double> Bisect(const Pred &is_low, double lo, double hi) {
  for (int i = 0; i < kMaxBisections; ++i) {
    const double mid = lo + (hi - lo) / 2.0;
    if (mid <= lo || mid >= hi || hi - lo <= kBracketRelWidth * hi) break;
    (is_low(mid) ? lo : hi) = mid;
  }
  return {lo, hi};
}

double EnergyEfficiency(double b, double p, double loss, const ChannelParams &ch) {
  return b * std::log1p(p / (ch.noise_psd_w_per_hz * b * loss)) / (p * std::numbers::ln2);
}

void CheckEnergyFeasible(double loss, const NetworkScenario &scenario, std::size_t user) {
  const double limit = 1.0 / (scenario.channel.noise_psd_w_per_hz * loss * std::numbers::ln2);
  if (!(limit > scenario.payload_bits / scenario.energy_budget_j)) {
    throw InfeasibleEnergy("user " + std::to_string(user) +
                           ": no positive power meets the energy budget (needs E > Q n0 L ln2)");
  }
}

}  // namespace

AllocationResult Evaluate(const NetworkScenario &scenario, std::vector<double> power_w,
                          std::vector<double> bandwidth_hz) {
  const auto losses = scenario.PathLosses();
  AllocationResult r;
  r.power_w = std::move(power_w);
  r.bandwidth_hz = std::move(bandwidth_hz);
  r.objective_s = 0.0;
  for (std::size_t i = 0; i < losses.size(); ++i) {
    const double rate = Rate(r.bandwidth_hz[i], r.power_w[i], losses[i], scenario.channel);
    r.rate_bps.push_back(rate);
    r.time_s.push_back(scenario.payload_bits / rate);
    r.objective_s = std::max(r.objective_s, r.time_s.back());
  }
  r.gamma = 1.0 / r.objective_s;
  return r;
}

double EnergyLimitedPower(double bandwidth_hz, double loss, const NetworkScenario &scenario) {
  if (!(bandwidth_hz > 0.0)) throw InvalidArgument("power: bandwidth must be positive");
  CheckEnergyFeasible(loss, scenario, 0);
  const double target = scenario.payload_bits / scenario.energy_budget_j;
  const auto &ch = scenario.channel;
  auto is_low = [&](double p) { return EnergyEfficiency(bandwidth_hz, p, loss, ch) > target; };
  auto [lo, hi] = Bracket(is_low, scenario.max_power_w);
  std::tie(lo, hi) = Bisect(is_low, lo, hi);
  return lo + (hi - lo) / 2.0;
}

double OptimalPower(double bandwidth_hz, double loss, const NetworkScenario &scenario) {
  if (!(bandwidth_hz > 0.0)) throw InvalidArgument("power: bandwidth must be positive");
  CheckEnergyFeasible(loss, scenario, 0);
  const double target = scenario.payload_bits / scenario.energy_budget_j;
  // f decreasing: f(P_max) >= Q/E means p_hat >= P_max and the cap binds.
  if (EnergyEfficiency(bandwidth_hz, scenario.max_power_w, loss, scenario.channel) >= target) {
    return scenario.max_power_w;
  }
  return std::min(scenario.max_power_w, EnergyLimitedPower(bandwidth_hz, loss, scenario));
}

double MinBandwidthForRate(double power_w, double loss, double target_rate_bps, const ChannelParams &ch) {
  if (!(power_w > 0.0)) throw InvalidArgument("bandwidth: power must be positive");
  if (target_rate_bps <= 0.0) return 0.0;
  if (target_rate_bps >= RateSupremum(power_w, loss, ch)) {
    throw UnreachableRate("bandwidth: rate " + std::to_string(target_rate_bps) + " bit/s is not reachable");
  }
  auto is_low = [&](double b) { return Rate(b, power_w, loss, ch) < target_rate_bps; };
  auto [lo, hi] = Bracket(is_low, 1e6);
  std::tie(lo, hi) = Bisect(is_low, lo, hi);
  return hi;
}

AllocationResult BandwidthAllocation(std::span<const double> power_w, const NetworkScenario &scenario) {
  Validate(scenario);
  const std::size_t users = scenario.num_users();
  if (power_w.size() != users) throw InvalidArgument("bandwidth allocation: one power per user required");
  const auto losses = scenario.PathLosses();
  const auto &ch = scenario.channel;
  const double q = scenario.payload_bits;

  std::vector<double> energy_bw(users);
  double gamma_hi = std::numeric_limits<double>::infinity();
  double energy_total = 0.0;
  for (std::size_t i = 0; i < users; ++i) {
    if (!(power_w[i] > 0.0 && power_w[i] <= scenario.max_power_w)) {
      throw InvalidArgument("bandwidth allocation: power of user " + std::to_string(i) + " outside (0, P_max]");
    }
    CheckEnergyFeasible(losses[i], scenario, i);
    energy_bw[i] = MinBandwidthForRate(power_w[i], losses[i], q * power_w[i] / scenario.energy_budget_j, ch);
    energy_total += energy_bw[i];
    gamma_hi = std::min(gamma_hi, RateSupremum(power_w[i], losses[i], ch) / q * (1.0 - 1e-12));
  }
  if (energy_total > scenario.total_bandwidth_hz) {
    throw InfeasibleEnergy("bandwidth allocation: budget cannot cover every user's energy constraint");
  }

  auto demand = [&](double gamma, std::vector<double> *out) {
    double total = 0.0;
    for (std::size_t i = 0; i < users; ++i) {
      const double b = std::max(energy_bw[i], MinBandwidthForRate(power_w[i], losses[i], q * gamma, ch));
      if (out != nullptr) (*out)[i] = b;
      total += b;
    }
    return total;
  };
  auto feasible = [&](double gamma) { return demand(gamma, nullptr) <= scenario.total_bandwidth_hz; };

  double gamma = gamma_hi;
  if (!feasible(gamma_hi)) gamma = Bisect(feasible, 0.0, gamma_hi).first;

  std::vector<double> bandwidth(users);
  const double used = demand(gamma, &bandwidth);
  if (used > 0.0) {
    const double scale = scenario.total_bandwidth_hz / used;
    for (double &b : bandwidth) b *= scale;
  } else {
    std::fill(bandwidth.begin(), bandwidth.end(), scenario.total_bandwidth_hz / static_cast<double>(users));
  }
  return Evaluate(scenario, std::vector<double>(power_w.begin(), power_w.end()), std::move(bandwidth));
}

AllocationResult AlternatingOptimize(const NetworkScenario &scenario, const AlternatingOptions &options) {
  Validate(scenario);
  const auto losses = scenario.PathLosses();
  const std::size_t users = scenario.num_users();
  std::vector<double> bandwidth(users, scenario.total_bandwidth_hz / static_cast<double>(users));
  std::vector<double> history;
  double previous = std::numeric_limits<double>::infinity();
  AllocationResult result;
  int iteration = 0;
  while (iteration < options.max_iterations) {
    ++iteration;
    std::vector<double> power(users);
    for (std::size_t i = 0; i < users; ++i) power[i] = OptimalPower(bandwidth[i], losses[i], scenario);
    history.push_back(Evaluate(scenario, power, bandwidth).objective_s);
    result = BandwidthAllocation(power, scenario);
    history.push_back(result.objective_s);
    bandwidth = result.bandwidth_hz;
    if (std::abs(previous - result.objective_s) < options.relative_tolerance * result.objective_s) break;
    previous = result.objective_s;
  }
  result.iterations = iteration;
  result.history_s = std::move(history);
  return result;
}

AllocationResult BaselineUniform(const NetworkScenario &scenario) {
  Validate(scenario);
  const auto losses = scenario.PathLosses();
  const std::size_t users = scenario.num_users();
  const double share = scenario.total_bandwidth_hz / static_cast<double>(users);
  std::vector<double> power(users);
  for (std::size_t i = 0; i < users; ++i) power[i] = OptimalPower(share, losses[i], scenario);
  return Evaluate(scenario, std::move(power), std::vector<double>(users, share));
}

AllocationResult BruteForceOracle(const NetworkScenario &scenario, std::size_t grid_steps) {
  Validate(scenario);
  const std::size_t users = scenario.num_users();
  if (users > 3) throw InvalidArgument("oracle: at most 3 users (got " + std::to_string(users) + ")");
  if (grid_steps < users) throw InvalidArgument("oracle: grid too coarse for the number of users");
  const auto losses = scenario.PathLosses();
  const double step = scenario.total_bandwidth_hz / static_cast<double>(grid_steps);

  // Per-user time at every grid bandwidth k * step, k = 1 .. grid_steps.
  std::vector<std::vector<double>> times(users, std::vector<double>(grid_steps + 1));
  for (std::size_t u = 0; u < users; ++u) {
    for (std::size_t k = 1; k <= grid_steps; ++k) {
      const double b = static_cast<double>(k) * step;
      const double p = OptimalPower(b, losses[u], scenario);
      times[u][k] = scenario.payload_bits / Rate(b, p, losses[u], scenario.channel);
    }
  }

  std::vector<std::size_t> best(users, 0);
  double best_t = std::numeric_limits<double>::infinity();
  if (users == 1) {
    best[0] = grid_steps;
  } else if (users == 2) {
    for (std::size_t i = 1; i < grid_steps; ++i) {
      const double t = std::max(times[0][i], times[1][grid_steps - i]);
      if (t < best_t) {
        best_t = t;
        best = {i, grid_steps - i};
      }
    }
  } else {
    for (std::size_t i = 1; i + 2 <= grid_steps; ++i) {
      for (std::size_t j = 1; i + j + 1 <= grid_steps; ++j) {
        const std::size_t k = grid_steps - i - j;
        const double t = std::max({times[0][i], times[1][j], times[2][k]});
        if (t < best_t) {
          best_t = t;
          best = {i, j, k};
        }
      }
    }
  }

  std::vector<double> power(users);
  std::vector<double> bandwidth(users);
  for (std::size_t u = 0; u < users; ++u) {
    bandwidth[u] = static_cast<double>(best[u]) * step;
    power[u] = OptimalPower(bandwidth[u], losses[u], scenario);
  }
  return Evaluate(scenario, std::move(power), std::move(bandwidth));
}

}  // namespace fslhdc::wireless
