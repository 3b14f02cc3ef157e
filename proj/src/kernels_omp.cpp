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

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "gcada/errors.hpp"
#include "gcada/kernels.hpp"

namespace gcada::kernels::omp {

namespace {

std::size_t num_blocks(std::size_t n, std::size_t block) {
  return (n + block - 1) / block;
}

}  // namespace

double squared_residual_sum(const Dataset& data, std::span<const double> theta) {
  if (theta.size() != data.dim()) throw ContractError("theta dimension mismatch");
  const std::size_t n = data.size();
  const std::size_t d = data.dim();
  const std::size_t blocks = num_blocks(n, kRowBlock);
  std::vector<double> partial(blocks, 0.0);

  const auto nb = static_cast<std::ptrdiff_t>(blocks);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < nb; ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kRowBlock;
    const std::size_t hi = std::min(n, lo + kRowBlock);
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      const double* x = data.row(i).data();
      double pred = 0.0;
#pragma omp simd reduction(+ : pred)
      for (std::size_t j = 0; j < d; ++j) pred += x[j] * theta[j];
      const double r = pred - data.label(i);
      acc += r * r;
    }
    partial[static_cast<std::size_t>(b)] = acc;
  }

  double total = 0.0;
  for (const double p : partial) total += p;
  return total;
}

void gram_matvec(const Dataset& data, std::span<const std::size_t> rows,
                 std::span<const double> v, std::span<double> out) {
  const std::size_t d = data.dim();
  if (v.size() != d || out.size() != d) {
    throw ContractError("gram_matvec dimension mismatch");
  }
  const std::size_t blocks = num_blocks(rows.size(), kRowBlock);
  std::vector<double> partial(blocks * d, 0.0);

  const auto nb = static_cast<std::ptrdiff_t>(blocks);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < nb; ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kRowBlock;
    const std::size_t hi = std::min(rows.size(), lo + kRowBlock);
    double* acc = partial.data() + static_cast<std::size_t>(b) * d;
    for (std::size_t i = lo; i < hi; ++i) {
      const double* x = data.row(rows[i]).data();
      double dot = 0.0;
#pragma omp simd reduction(+ : dot)
      for (std::size_t j = 0; j < d; ++j) dot += x[j] * v[j];
#pragma omp simd
      for (std::size_t j = 0; j < d; ++j) acc[j] += x[j] * dot;
    }
  }

  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t b = 0; b < blocks; ++b) {
    const double* acc = partial.data() + b * d;
    for (std::size_t j = 0; j < d; ++j) out[j] += acc[j];
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
  const std::size_t blocks = num_blocks(replications, kReplicationBlock);
  std::vector<double> sums(blocks, 0.0);
  std::vector<double> sums_sq(blocks, 0.0);

  const auto nb = static_cast<std::ptrdiff_t>(blocks);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < nb; ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kReplicationBlock;
    const std::size_t hi = std::min(replications, lo + kReplicationBlock);
    double s = 0.0;
    double s2 = 0.0;
    for (std::size_t r = lo; r < hi; ++r) {
      const std::uint64_t k = first_iteration + r;
      double slowest = 0.0;
      for (std::size_t g = 0; g < groups; ++g) {
        double fastest = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < group_size; ++i) {
          fastest = std::min(fastest, model.time(k, g * group_size + i));
        }
        slowest = std::max(slowest, fastest);
      }
      s += slowest;
      s2 += slowest * slowest;
    }
    sums[static_cast<std::size_t>(b)] = s;
    sums_sq[static_cast<std::size_t>(b)] = s2;
  }

  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t b = 0; b < blocks; ++b) {
    sum += sums[b];
    sum_sq += sums_sq[b];
  }
  const double n = static_cast<double>(replications);
  const double mean = sum / n;
  const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
  return {mean, std::sqrt(var / n), replications};
}

}  // namespace gcada::kernels::omp
