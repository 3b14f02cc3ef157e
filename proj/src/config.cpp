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

#include "gcada/config.hpp"

#include <cmath>

#include "gcada/errors.hpp"

namespace gcada {

std::string_view scheme_name(Scheme s) {
  switch (s) {
    case Scheme::kDistributedSgd: return "d-sgd";
    case Scheme::kDistributedAdam: return "d-adam";
    case Scheme::kCada: return "cada";
    case Scheme::kGCada: return "g-cada";
  }
  return "?";
}

Scheme parse_scheme(std::string_view name) {
  if (name == "d-sgd") return Scheme::kDistributedSgd;
  if (name == "d-adam") return Scheme::kDistributedAdam;
  if (name == "cada") return Scheme::kCada;
  if (name == "g-cada") return Scheme::kGCada;
  throw ConfigError("unknown scheme '" + std::string(name) +
                    "' (expected d-sgd, d-adam, cada or g-cada)");
}

std::size_t ExperimentConfig::group_size() const {
  if (scheme != Scheme::kGCada) return 1;
  return groups == 0 ? 0 : workers / groups;
}

std::size_t ExperimentConfig::num_units() const {
  return scheme == Scheme::kGCada ? groups : workers;
}

void ExperimentConfig::validate() const {
  if (workers == 0) throw ConfigError("workers must be >= 1");
  if (scheme == Scheme::kGCada) {
    if (groups == 0 || workers % groups != 0) {
      throw ConfigError("g-cada needs M = G * M_G (M=" + std::to_string(workers) +
                        ", G=" + std::to_string(groups) + ")");
    }
  }
  if (max_delay == 0) throw ConfigError("max delay D must be >= 1");
  if (!(c >= 0.0)) throw ConfigError("threshold constant c must be >= 0");
  if (!lag_weights.empty() && lag_weights.size() != max_delay) {
    throw ConfigError("lag weights must have exactly D entries");
  }
  if (!(lr > 0.0) || !std::isfinite(lr)) throw ConfigError("learning rate must be > 0");
  if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) {
    throw ConfigError("beta1 and beta2 must lie in [0, 1)");
  }
  if (!(epsilon >= 0.0)) throw ConfigError("epsilon must be >= 0");
  if (!(eta > 0.0)) throw ConfigError("eta must be > 0");
  if (batch == 0) throw ConfigError("batch size must be >= 1");
  if (loss_every == 0) throw ConfigError("loss-every must be >= 1");
  if (dataset.kind == DatasetSpec::Kind::kSynthetic) {
    if (dataset.samples == 0 || dataset.dim == 0) {
      throw ConfigError("synthetic dataset needs N, d >= 1");
    }
    if (!(dataset.noise_sd >= 0.0)) throw ConfigError("noise sd must be >= 0");
  } else if (dataset.image_path.empty() || dataset.label_path.empty()) {
    throw ConfigError("IDX dataset needs both image and label paths");
  }
}

ExperimentConfig ExperimentConfig::defaults_for(Scheme s) {
  ExperimentConfig cfg;
  cfg.scheme = s;
  switch (s) {
    case Scheme::kDistributedSgd:
      // Calibrated for batch-summed gradients on the default synthetic set.
      cfg.lr = 2e-4;
      break;
    case Scheme::kDistributedAdam:
      cfg.lr = 0.01;
      break;
    case Scheme::kCada:
      cfg.lr = 0.01;
      cfg.c = 2.0;
      break;
    case Scheme::kGCada:
      cfg.lr = 0.01;
      cfg.c = 0.3;
      break;
  }
  return cfg;
}

}  // namespace gcada
