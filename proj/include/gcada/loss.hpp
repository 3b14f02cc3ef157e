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

#ifndef GCADA_LOSS_HPP
#define GCADA_LOSS_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "gcada/dataset.hpp"

namespace gcada {

// Quadratic loss l(theta; (x, y)) = (x . theta - y)^2.

// (1/N) sum_n (x_n . theta - y_n)^2
double global_loss(std::span<const double> theta, const Dataset& data);

// Gradient of the loss SUMMED over the batch (no 1/|batch| factor):
//   sum_{n in batch} 2 x_n (x_n . theta - y_n)
// Duplicate indices count once per occurrence.
std::vector<double> minibatch_gradient(std::span<const double> theta,
                                       std::span<const std::size_t> batch,
                                       const Dataset& data);

inline constexpr std::size_t kPowerIterationCap = 10000;
inline constexpr double kPowerIterationTol = 1e-6;

// scale * 2 * lambda_max(X_S^T X_S) for the shard rows S, by power
// iteration from a fixed pseudo-random start vector. Throws NumericalError
// (carrying the partial estimate) if the cap is hit before convergence.
double smoothness_constant(std::span<const std::size_t> shard_rows,
                           const Dataset& data, double scale,
                           std::size_t max_iterations = kPowerIterationCap);

inline double smoothness_constant(const Shard& shard, const Dataset& data,
                                  double scale) {
  return smoothness_constant(shard.samples, data, scale);
}

}  // namespace gcada

#endif  // GCADA_LOSS_HPP
