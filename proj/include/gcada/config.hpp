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

#ifndef GCADA_CONFIG_HPP
#define GCADA_CONFIG_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gcada/optimizer.hpp"

namespace gcada {

enum class Scheme { kDistributedSgd, kDistributedAdam, kCada, kGCada };

std::string_view scheme_name(Scheme s);          // "d-sgd", "d-adam", ...
Scheme parse_scheme(std::string_view name);      // throws ConfigError

// How smoothness constants are scaled from 2 * lambda_max(X_S^T X_S).
enum class SmoothnessScale {
  kLocal,     // 1/|S|: the shard-averaged local loss
  kBatchSum,  // b/|S|: the expected batch-summed gradient a unit uploads
};

// Whether a unit's uploaded gradient is the batch sum or the batch mean.
enum class GradientNormalization { kSum, kMean };

struct DatasetSpec {
  enum class Kind { kSynthetic, kIdx };
  Kind kind = Kind::kSynthetic;
  std::size_t samples = 2400;
  std::size_t dim = 50;
  double noise_sd = 0.0;
  std::uint64_t seed = 20240601;
  std::string image_path;
  std::string label_path;
  std::optional<std::size_t> limit;
  bool bias = false;  // append a constant feature

  bool operator==(const DatasetSpec&) const = default;
};

struct ExperimentConfig {
  Scheme scheme = Scheme::kGCada;
  std::size_t workers = 12;    // M
  std::size_t groups = 3;      // G (g-cada only)
  std::size_t max_delay = 10;  // D
  double c = 0.3;
  std::vector<double> lag_weights;  // optional per-lag weights for the skip rule
  double lr = 0.01;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  SecondMomentRule moment_rule = SecondMomentRule::kRunningMax;
  double eta = 1e-4;  // mean compute time, seconds
  std::size_t batch = 32;
  std::size_t max_iterations = 5000;
  double loss_threshold = 0.1;
  std::size_t loss_every = 1;
  std::uint64_t seed = 1;
  DatasetSpec dataset;
  SmoothnessScale smoothness_scale = SmoothnessScale::kLocal;
  GradientNormalization normalization = GradientNormalization::kSum;

  // M_G = r = M / G for g-cada; 1 otherwise.
  std::size_t group_size() const;
  std::size_t num_units() const;

  void validate() const;  // throws ConfigError

  // Per-scheme defaults of the reference experiment (M=12, G=3, M_G=4).
  static ExperimentConfig defaults_for(Scheme s);
};

}  // namespace gcada

#endif  // GCADA_CONFIG_HPP
