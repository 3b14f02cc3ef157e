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

// Reference implementations. Deliberately naive; kept for tests and benches.

#include <algorithm>
#include <cmath>
#include <limits>

#include "gcada/errors.hpp"
#include "gcada/kernels.hpp"

namespace gcada::kernels::serial {

double squared_residual_sum(const Dataset& data, std::span<const double> theta) {
  if (theta.size() != data.dim()) throw ContractError("theta dimension mismatch");
  double total = 0.0;
  for (std::size_t n = 0; n < data.size(); ++n) {
    const auto x = data.row(n);
    double pred = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) pred += x[j] * theta[j];
    const double r = pred - data.label(n);
    total += r * r;
  }
  return total;
}

void gram_matvec(const Dataset& data, std::span<const std::size_t> rows,
                 std::span<const double> v, std::span<double> out) {
  if (v.size() != data.dim() || out.size() != data.dim()) {
    throw ContractError("gram_matvec dimension mismatch");
  }
  std::fill(out.begin(), out.end(), 0.0);
  for (const std::size_t n : rows) {
    const auto x = data.row(n);
    double dot = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) dot += x[j] * v[j];
    for (std::size_t j = 0; j < x.size(); ++j) out[j] += x[j] * dot;
  }
}

MonteCarloEstimate full_selection_wall_clock(const ComputeTimeModel& model,
                                             std::size_t groups,
                                             std::size_t group_size,
                                             std::size_t replications,
                                             std::uint64_t first_iteration) {
  if (groups == 0 || group_size == 0 || replications < 2) {
    throw ContractError("Monte Carlo needs groups, group size >= 1 and >= 2 reps");
  }
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t r = 0; r < replications; ++r) {
    const std::uint64_t k = first_iteration + r;
    double slowest = 0.0;
    for (std::size_t g = 0; g < groups; ++g) {
      double fastest = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < group_size; ++i) {
        fastest = std::min(fastest, model.time(k, g * group_size + i));
      }
      slowest = std::max(slowest, fastest);
    }
    sum += slowest;
    sum_sq += slowest * slowest;
  }
  const double n = static_cast<double>(replications);
  const double mean = sum / n;
  const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
  return {mean, std::sqrt(var / n), replications};
}

}  // namespace gcada::kernels::serial
