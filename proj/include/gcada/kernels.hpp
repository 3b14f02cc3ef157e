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

#ifndef GCADA_KERNELS_HPP
#define GCADA_KERNELS_HPP

// Data-parallel inner loops. Each kernel has a plain serial reference in
// kernels::serial and an OpenMP version in kernels::omp. The OpenMP versions
// reduce over fixed-size blocks and then sum the block partials in order,
// so their results do not depend on the thread count.

#include <cstddef>
#include <cstdint>
#include <span>

#include "gcada/dataset.hpp"
#include "gcada/straggler.hpp"

namespace gcada::kernels {

// Rows per reduction block in the OpenMP kernels.
inline constexpr std::size_t kRowBlock = 256;
// Replications per reduction block in the Monte Carlo kernels.
inline constexpr std::size_t kReplicationBlock = 1024;

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t replications = 0;
};

namespace serial {

// sum_n (x_n . theta - y_n)^2
double squared_residual_sum(const Dataset& data, std::span<const double> theta);

// out = X_S^T X_S v over the rows S.
void gram_matvec(const Dataset& data, std::span<const std::size_t> rows,
                 std::span<const double> v, std::span<double> out);

// Wall-clock of a fully selected iteration with `groups` groups of
// `group_size` workers: max over groups of the min over members. Replication
// r uses iteration index `first_iteration + r` of the model.
MonteCarloEstimate full_selection_wall_clock(const ComputeTimeModel& model,
                                             std::size_t groups,
                                             std::size_t group_size,
                                             std::size_t replications,
                                             std::uint64_t first_iteration = 0);

}  // namespace serial

namespace omp {

double squared_residual_sum(const Dataset& data, std::span<const double> theta);

void gram_matvec(const Dataset& data, std::span<const std::size_t> rows,
                 std::span<const double> v, std::span<double> out);

MonteCarloEstimate full_selection_wall_clock(const ComputeTimeModel& model,
                                             std::size_t groups,
                                             std::size_t group_size,
                                             std::size_t replications,
                                             std::uint64_t first_iteration = 0);

}  // namespace omp

}  // namespace gcada::kernels

#endif  // GCADA_KERNELS_HPP
