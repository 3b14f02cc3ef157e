// Copyright 2026 The G-CADA Simulator Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// =============================================================================

#include "gcada/analysis.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/binomial.hpp>
#include <cmath>
#include <string>

#include "gcada/errors.hpp"

namespace gcada::analysis {

namespace {

constexpr double kTailCutoff = 1e-12;
constexpr double kQuadratureTol = 1e-8;

std::size_t rounded_count(double x, std::size_t cap) {
  const auto n = static_cast<std::size_t>(std::llround(std::max(0.0, x)));
  return std::min(n, cap);
}

}  // namespace

void Inputs::validate() const {
  if (workers == 0 || groups == 0 || group_size == 0 || max_delay == 0) {
    throw ConfigError("analysis inputs M, G, M_G, D must be positive");
  }
  if (workers != groups * group_size) {
    throw ConfigError("analysis inputs need M = G * M_G");
  }
  if (!(mean_time > 0.0) || !(batch > 0.0)) {
    throw ConfigError("analysis inputs need eta > 0 and batch > 0");
  }
  if (lag_constants.size() != max_delay) {
    throw ConfigError("need one lag constant per d = 1..D");
  }
}

double harmonic(std::size_t a) {
  double h = 0.0;
  for (std::size_t k = 1; k <= a; ++k) h += 1.0 / static_cast<double>(k);
  return h;
}

double expected_order_stat(std::size_t a, std::size_t b, double eta) {
  if (a == 0 || a > b) {
    throw ContractError("order statistic needs 1 <= a <= b (a=" +
                        std::to_string(a) + ", b=" + std::to_string(b) + ")");
  }
  // H_b - H_{b-a} summed directly over the tail terms.
  double s = 0.0;
  for (std::size_t k = b - a + 1; k <= b; ++k) s += 1.0 / static_cast<double>(k);
  return eta * s;
}

double group_cdf(double x, std::size_t group_size, double eta) {
  if (x < 0.0) throw ContractError("group_cdf needs x >= 0");
  if (std::isinf(x)) return 1.0;
  const double f = -std::expm1(-x / eta);  // 1 - e^{-x/eta}
  double s = 0.0;
  for (std::size_t j = 1; j <= group_size; ++j) {
    s += boost::math::binomial_coefficient<double>(
             static_cast<unsigned>(group_size), static_cast<unsigned>(j)) *
         std::pow(f, static_cast<double>(j)) *
         std::pow(1.0 - f, static_cast<double>(group_size - j));
  }
  return s;
}

double expected_group_max(std::size_t a, std::size_t groups,
                          std::size_t group_size, double eta) {
  if (a == 0 || a > groups) throw ContractError("expected_group_max needs 1 <= a <= G");
  if (group_size == 0 || !(eta > 0.0)) {
    throw ContractError("expected_group_max needs M_G >= 1 and eta > 0");
  }
  const auto integrand = [&](double x) {
    return 1.0 - std::pow(group_cdf(x, group_size, eta), static_cast<double>(a));
  };

  double upper = eta;
  while (integrand(upper) >= kTailCutoff) {
    upper *= 2.0;
    if (upper > 1e6 * eta) throw NumericalError("integrand tail does not decay");
  }

  double error = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      integrand, 0.0, upper, 15, 1e-13, &error);
  if (!(error <= kQuadratureTol) || !std::isfinite(value)) {
    throw NumericalError("quadrature error estimate " + std::to_string(error) +
                             " exceeds tolerance",
                         value);
  }
  return value;
}

std::size_t selection_bin(double smoothness, std::size_t units,
                          std::span<const double> lag_constants) {
  const double l2 = smoothness * smoothness;
  const double u2 = static_cast<double>(units) * static_cast<double>(units);
  const std::size_t dmax = lag_constants.size();
  // Bin d covers [Lbar_{d+1}^2, Lbar_d^2) with Lbar_0 = +inf, Lbar_{D+1} = 0.
  for (std::size_t d = 0; d < dmax; ++d) {
    const double lower = lag_constants[d] / (static_cast<double>(d + 1) * u2);
    if (l2 >= lower) return d;
  }
  return dmax;
}

double selection_bound(std::span<const double> smoothness,
                       std::span<const double> lag_constants) {
  // units * sum_d h(d)/(d+1) with h(d) the fraction of units in bin d is the
  // same as summing 1/(bin+1) over units.
  double total = 0.0;
  for (const double l : smoothness) {
    const std::size_t d = selection_bin(l, smoothness.size(), lag_constants);
    total += 1.0 / static_cast<double>(d + 1);
  }
  return total;
}

double selection_bound_workers(const Inputs& in) {
  if (in.worker_smoothness.size() != in.workers) {
    throw ConfigError("need one smoothness constant per worker");
  }
  return selection_bound(in.worker_smoothness, in.lag_constants);
}

double selection_bound_groups(const Inputs& in) {
  if (in.group_smoothness.size() != in.groups) {
    throw ConfigError("need one smoothness constant per group");
  }
  return selection_bound(in.group_smoothness, in.lag_constants);
}

PredictedLoads predicted_loads(const Inputs& in, double m_bar, double g_bar) {
  const double m = static_cast<double>(in.workers);
  const double mg = static_cast<double>(in.group_size);
  PredictedLoads out;
  out.comm_dadam = 2.0 * m;
  out.comm_cada = 2.0 * m_bar;
  out.comm_gcada = g_bar * (mg + 1.0);
  out.comp_dadam = in.batch * m;
  out.comp_cada = in.batch * m_bar;
  out.comp_gcada = in.batch * g_bar * mg;
  return out;
}

PredictedTimes predicted_times(const Inputs& in, double m_bar, double g_bar) {
  PredictedTimes out;
  out.dadam = expected_order_stat(in.workers, in.workers, in.mean_time);
  const std::size_t m = rounded_count(m_bar, in.workers);
  out.cada = m == 0 ? 0.0 : expected_order_stat(m, m, in.mean_time);
  const std::size_t g = rounded_count(g_bar, in.groups);
  out.gcada = g == 0 ? 0.0
                     : expected_group_max(g, in.groups, in.group_size, in.mean_time);
  return out;
}

}  // namespace gcada::analysis
