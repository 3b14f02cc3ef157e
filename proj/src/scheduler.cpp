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

#include "gcada/scheduler.hpp"

#include <algorithm>
#include <string>

#include "gcada/errors.hpp"

namespace gcada {

namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ContractError("iterate dimension mismatch");
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double d = a[j] - b[j];
    s += d * d;
  }
  return s;
}

template <class Meta>
SelectionResult select_units(std::span<const Meta> units,
                             const IterateHistory& history,
                             const SelectionRule& rule) {
  const double rhs = rule.threshold(history);
  SelectionResult out;
  for (const auto& u : units) {
    if (u.aoi >= rule.max_delay) {
      out.selected.push_back({u.id, SelectReason::kAoiForced});
    } else if (!check_condition(u.smoothness, history.current(),
                                history.snapshot(u.aoi), rhs)) {
      out.selected.push_back({u.id, SelectReason::kConditionViolated});
    }
  }
  std::sort(out.selected.begin(), out.selected.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  return out;
}

}  // namespace

IterateHistory::IterateHistory(std::size_t max_delay, std::vector<double> theta0)
    : max_delay_(max_delay) {
  if (max_delay == 0) throw ConfigError("max delay D must be >= 1");
  snapshots_.push_front(std::move(theta0));
}

void IterateHistory::push(std::vector<double> next) {
  steps_.push_front(squared_distance(next, snapshots_.front()));
  snapshots_.push_front(std::move(next));
  if (steps_.size() > max_delay_) steps_.pop_back();
  if (snapshots_.size() > max_delay_ + 1) snapshots_.pop_back();
}

const std::vector<double>& IterateHistory::snapshot(std::size_t age) const {
  if (age >= snapshots_.size()) {
    throw StateError("iterate of age " + std::to_string(age) +
                     " is not retained (have " +
                     std::to_string(snapshots_.size()) + ")");
  }
  return snapshots_[age];
}

double SelectionRule::threshold(const IterateHistory& history) const {
  const auto& steps = history.step_norms();
  double s = 0.0;
  if (lag_weights.empty()) {
    for (const double x : steps) s += x;
    return c * s;
  }
  for (std::size_t d = 0; d < steps.size() && d < lag_weights.size(); ++d) {
    s += lag_weights[d] * steps[d];
  }
  return s;
}

bool check_condition(double smoothness, std::span<const double> theta_now,
                     std::span<const double> theta_stale, double threshold) {
  const double lhs =
      smoothness * smoothness * squared_distance(theta_now, theta_stale);
  return lhs <= threshold;
}

bool check_condition(double smoothness, std::span<const double> theta_now,
                     std::span<const double> theta_stale,
                     const IterateHistory& history, double c) {
  SelectionRule rule;
  rule.c = c;
  return check_condition(smoothness, theta_now, theta_stale,
                         rule.threshold(history));
}

bool SelectionResult::contains(std::size_t id) const {
  return std::any_of(selected.begin(), selected.end(),
                     [id](const Entry& e) { return e.id == id; });
}

std::vector<std::size_t> SelectionResult::ids() const {
  std::vector<std::size_t> out;
  out.reserve(selected.size());
  for (const auto& e : selected) out.push_back(e.id);
  return out;
}

SelectionResult select_workers(std::span<const WorkerMeta> workers,
                               const IterateHistory& history,
                               const SelectionRule& rule) {
  return select_units(workers, history, rule);
}

SelectionResult select_groups(std::span<const GroupMeta> groups,
                              const IterateHistory& history,
                              const SelectionRule& rule) {
  return select_units(groups, history, rule);
}

SelectionResult select_all(std::size_t num_units) {
  SelectionResult out;
  for (std::size_t u = 0; u < num_units; ++u) {
    out.selected.push_back({u, SelectReason::kColdStart});
  }
  return out;
}

}  // namespace gcada
