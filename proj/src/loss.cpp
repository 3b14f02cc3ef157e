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

#include "gcada/loss.hpp"

#include <cmath>

#include "gcada/errors.hpp"
#include "gcada/kernels.hpp"
#include "gcada/rng.hpp"

namespace gcada {

namespace {

constexpr std::uint64_t kPowerIterationSeed = 0x9e3779b97f4a7c15ull;

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (const double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

double global_loss(std::span<const double> theta, const Dataset& data) {
  if (theta.size() != data.dim()) {
    throw ContractError("theta has dimension " + std::to_string(theta.size()) +
                        ", dataset has " + std::to_string(data.dim()));
  }
  return kernels::omp::squared_residual_sum(data, theta) /
         static_cast<double>(data.size());
}

std::vector<double> minibatch_gradient(std::span<const double> theta,
                                       std::span<const std::size_t> batch,
                                       const Dataset& data) {
  if (batch.empty()) throw ContractError("empty mini-batch");
  if (theta.size() != data.dim()) throw ContractError("theta dimension mismatch");
  const std::size_t d = data.dim();
  std::vector<double> grad(d, 0.0);
  for (const std::size_t n : batch) {
    if (n >= data.size()) throw ContractError("batch index out of range");
    const auto x = data.row(n);
    double pred = 0.0;
    for (std::size_t j = 0; j < d; ++j) pred += x[j] * theta[j];
    const double r2 = 2.0 * (pred - data.label(n));
    for (std::size_t j = 0; j < d; ++j) grad[j] += r2 * x[j];
  }
  return grad;
}

double smoothness_constant(std::span<const std::size_t> shard_rows,
                           const Dataset& data, double scale,
                           std::size_t max_iterations) {
  if (shard_rows.empty()) throw ContractError("empty shard");
  const std::size_t d = data.dim();

  const CounterRng rng(kPowerIterationSeed);
  std::vector<double> v(d);
  for (std::size_t j = 0; j < d; ++j) {
    v[j] = rng.normal(StreamTag::kPowerIteration, 0, 0,
                      static_cast<std::uint32_t>(j));
  }
  double nv = norm2(v);
  for (double& x : v) x /= nv;

  std::vector<double> w(d);
  double lambda = 0.0;
  double prev = -1.0;
  for (std::size_t it = 0; it < max_iterations; ++it) {
    kernels::omp::gram_matvec(data, shard_rows, v, w);
    lambda = 0.0;
    for (std::size_t j = 0; j < d; ++j) lambda += v[j] * w[j];
    if (lambda <= 0.0) return 0.0;  // X_S^T X_S v = 0: zero features

    // ||A v - lambda v|| bounds the distance to the nearest eigenvalue.
    double res = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      const double r = w[j] - lambda * v[j];
      res += r * r;
    }
    res = std::sqrt(res);
    const bool stalled = std::abs(lambda - prev) <= 1e-15 * lambda;
    if (res <= kPowerIterationTol * lambda || stalled) {
      return scale * 2.0 * lambda;
    }
    prev = lambda;

    nv = norm2(w);
    for (std::size_t j = 0; j < d; ++j) v[j] = w[j] / nv;
  }
  throw NumericalError("power iteration did not converge in " +
                           std::to_string(max_iterations) + " iterations",
                       scale * 2.0 * lambda);
}

}  // namespace gcada
