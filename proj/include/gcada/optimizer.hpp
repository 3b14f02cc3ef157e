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

#ifndef GCADA_OPTIMIZER_HPP
#define GCADA_OPTIMIZER_HPP

#include <cstddef>
#include <map>
#include <span>
#include <vector>

namespace gcada {

using UnitGradients = std::map<std::size_t, std::vector<double>>;

struct GradientEstimate {
  std::vector<double> values;
  // Per unit: 0 if its gradient was fresh this iteration, otherwise the age
  // of the cached gradient that was used.
  std::map<std::size_t, std::size_t> age;
};

// Sums one gradient per unit 0..num_units-1, taking the fresh one when
// present and the cached one otherwise. Units are visited in ascending id so
// the floating-point result is reproducible. `stale_age` (optional) supplies
// the ages recorded in the estimate. Throws StateError if a unit has neither.
GradientEstimate aggregate(std::size_t num_units, const UnitGradients& fresh,
                           const UnitGradients& stale,
                           const std::map<std::size_t, std::size_t>& stale_age = {});

// theta - alpha * g
std::vector<double> sgd_step(std::span<const double> theta,
                             std::span<const double> estimate, double alpha);

enum class SecondMomentRule {
  // v' = beta2 * vhat + (1 - beta2) g^2, as written for the PS update rule.
  kRunningMax,
  // v' = beta2 * v + (1 - beta2) g^2, the usual AMSGrad statement.
  kClassical,
};

struct AmsGradParams {
  double alpha = 0.01;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  SecondMomentRule rule = SecondMomentRule::kRunningMax;
};

struct OptimizerState {
  std::vector<double> h;      // first moment
  std::vector<double> v;      // second moment
  std::vector<double> v_hat;  // running element-wise max of v
  std::size_t k = 0;
  AmsGradParams params;

  static OptimizerState zeros(std::size_t dim, const AmsGradParams& params);
};

struct AmsGradResult {
  std::vector<double> theta;
  OptimizerState state;
};

// One AMSGrad step without bias correction:
//   h' = b1 h + (1-b1) g;  v' per `rule`;  vhat' = max(vhat, v');
//   theta' = theta - alpha * h' / sqrt(eps + vhat')
// Throws NumericalError on non-finite gradient entries.
AmsGradResult amsgrad_step(const OptimizerState& state,
                           std::span<const double> theta,
                           std::span<const double> estimate);

}  // namespace gcada

#endif  // GCADA_OPTIMIZER_HPP
