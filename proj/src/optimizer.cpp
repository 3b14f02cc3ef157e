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

#include "gcada/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gcada/errors.hpp"

namespace gcada {

GradientEstimate aggregate(std::size_t num_units, const UnitGradients& fresh,
                           const UnitGradients& stale,
                           const std::map<std::size_t, std::size_t>& stale_age) {
  GradientEstimate est;
  for (std::size_t u = 0; u < num_units; ++u) {
    const std::vector<double>* g = nullptr;
    if (const auto it = fresh.find(u); it != fresh.end()) {
      g = &it->second;
      est.age[u] = 0;
    } else if (const auto st = stale.find(u); st != stale.end()) {
      g = &st->second;
      const auto a = stale_age.find(u);
      est.age[u] = a == stale_age.end() ? 1 : a->second;
    } else {
      throw StateError("unit " + std::to_string(u) +
                       " has neither a fresh nor a cached gradient");
    }
    if (est.values.empty()) {
      est.values.assign(g->size(), 0.0);
    } else if (g->size() != est.values.size()) {
      throw ContractError("gradient dimension mismatch at unit " +
                          std::to_string(u));
    }
    for (std::size_t j = 0; j < g->size(); ++j) est.values[j] += (*g)[j];
  }
  return est;
}

std::vector<double> sgd_step(std::span<const double> theta,
                             std::span<const double> estimate, double alpha) {
  if (theta.size() != estimate.size()) throw ContractError("sgd_step dimension mismatch");
  std::vector<double> out(theta.size());
  for (std::size_t j = 0; j < theta.size(); ++j) {
    out[j] = theta[j] - alpha * estimate[j];
  }
  return out;
}

OptimizerState OptimizerState::zeros(std::size_t dim, const AmsGradParams& params) {
  // beta = 0 is accepted; it reduces the step to sign-like SGD.
  if (!(params.beta1 >= 0.0 && params.beta1 < 1.0) ||
      !(params.beta2 >= 0.0 && params.beta2 < 1.0)) {
    throw ConfigError("beta1 and beta2 must lie in [0, 1)");
  }
  if (!(params.epsilon >= 0.0)) throw ConfigError("epsilon must be >= 0");
  OptimizerState s;
  s.h.assign(dim, 0.0);
  s.v.assign(dim, 0.0);
  s.v_hat.assign(dim, 0.0);
  s.params = params;
  return s;
}

AmsGradResult amsgrad_step(const OptimizerState& state,
                           std::span<const double> theta,
                           std::span<const double> estimate) {
  const std::size_t p = theta.size();
  if (estimate.size() != p || state.h.size() != p || state.v.size() != p ||
      state.v_hat.size() != p) {
    throw ContractError("amsgrad_step dimension mismatch");
  }
  for (const double g : estimate) {
    if (!std::isfinite(g)) throw NumericalError("non-finite gradient entry");
  }

  const auto& prm = state.params;
  AmsGradResult out{std::vector<double>(p), state};
  auto& s = out.state;
  for (std::size_t j = 0; j < p; ++j) {
    const double g = estimate[j];
    s.h[j] = prm.beta1 * state.h[j] + (1.0 - prm.beta1) * g;
    const double base =
        prm.rule == SecondMomentRule::kRunningMax ? state.v_hat[j] : state.v[j];
    s.v[j] = prm.beta2 * base + (1.0 - prm.beta2) * g * g;
    s.v_hat[j] = std::max(state.v_hat[j], s.v[j]);
    const double denom = std::sqrt(prm.epsilon + s.v_hat[j]);
    // 0/0 only when h' = 0 and eps = vhat' = 0; no movement in that case.
    out.theta[j] = denom > 0.0 ? theta[j] - prm.alpha * s.h[j] / denom : theta[j];
  }
  ++s.k;
  return out;
}

}  // namespace gcada
