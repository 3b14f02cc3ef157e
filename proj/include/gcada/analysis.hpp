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

#ifndef GCADA_ANALYSIS_HPP
#define GCADA_ANALYSIS_HPP

// Closed-form per-iteration expectations for distributed Adam, CADA and
// G-CADA under i.i.d. exponential compute times.

#include <cstddef>
#include <span>
#include <vector>

namespace gcada::analysis {

struct Inputs {
  std::size_t workers = 12;     // M
  std::size_t groups = 3;       // G
  std::size_t group_size = 4;   // M_G
  std::size_t max_delay = 10;   // D
  double mean_time = 1e-4;      // eta, seconds
  double batch = 32;            // mini-batch size in samples
  std::vector<double> lag_constants;       // c_1..c_D
  std::vector<double> worker_smoothness;   // L_m
  std::vector<double> group_smoothness;    // L_g

  void validate() const;
};

// H_a = sum_{k=1..a} 1/k, H_0 = 0.
double harmonic(std::size_t a);

// E[T_{a:b}] = eta (H_b - H_{b-a}) for the a-th smallest of b Exp(mean eta).
double expected_order_stat(std::size_t a, std::size_t b, double eta);

// CDF of the fastest of `group_size` Exp(mean eta) variables, evaluated with
// the binomial sum sum_j C(n,j) F^j (1-F)^{n-j}.
double group_cdf(double x, std::size_t group_size, double eta);

// E[max of a i.i.d. group times] = int_0^inf (1 - F_G(x)^a) dx, by adaptive
// Gauss-Kronrod quadrature on [0, X] where the integrand at X is < 1e-12.
double expected_group_max(std::size_t a, std::size_t groups,
                          std::size_t group_size, double eta);

// Bin index d in 0..D of one smoothness constant against the thresholds
// Lbar_d^2 = c_d / (d * units^2); the d = 0 bin is unbounded above.
std::size_t selection_bin(double smoothness, std::size_t units,
                          std::span<const double> lag_constants);

// units * sum_d h(d) / (d + 1)
double selection_bound(std::span<const double> smoothness,
                       std::span<const double> lag_constants);

double selection_bound_workers(const Inputs& in);  // M-bar
double selection_bound_groups(const Inputs& in);   // G-bar

struct PredictedLoads {
  double comm_dadam = 0;   // 2M
  double comm_cada = 0;    // <= 2 M-bar
  double comm_gcada = 0;   // <= G-bar (M_G + 1)
  double comp_dadam = 0;   // batch * M
  double comp_cada = 0;    // batch * M-bar
  double comp_gcada = 0;   // <= batch * G-bar * M_G
};

PredictedLoads predicted_loads(const Inputs& in, double m_bar, double g_bar);

struct PredictedTimes {
  double dadam = 0;
  double cada = 0;
  double gcada = 0;
};

// M-bar and G-bar are rounded to the nearest integer to index the order
// statistic; zero selected units give zero time.
PredictedTimes predicted_times(const Inputs& in, double m_bar, double g_bar);

}  // namespace gcada::analysis

#endif  // GCADA_ANALYSIS_HPP
