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

#ifndef GCADA_SCHEDULER_HPP
#define GCADA_SCHEDULER_HPP

// Lazy selection at the parameter server. A unit (worker for CADA, group for
// G-CADA) is skipped while
//
//   L^2 ||theta^k - theta^{k - tau}||^2 <= c * sum_{d=1..D} ||theta^{k+1-d} - theta^{k-d}||^2
//
// holds, and is selected when it is violated or when its age tau >= D.

#include <cstddef>
#include <deque>
#include <span>
#include <vector>

namespace gcada {

struct WorkerMeta {
  std::size_t id = 0;
  std::size_t aoi = 1;
  double smoothness = 0.0;
};

struct GroupMeta {
  std::size_t id = 0;
  std::vector<std::size_t> members;
  std::size_t aoi = 1;
  double smoothness = 0.0;
};

// The last D+1 iterates and the D most recent squared step norms.
class IterateHistory {
 public:
  IterateHistory(std::size_t max_delay, std::vector<double> theta0);

  // Appends theta^{k+1} and records ||theta^{k+1} - theta^k||^2.
  void push(std::vector<double> next);

  const std::vector<double>& current() const { return snapshots_.front(); }

  // theta^{k - age}; throws StateError when age is not retained.
  const std::vector<double>& snapshot(std::size_t age) const;

  // Squared step norms, most recent first; size min(k, D).
  const std::deque<double>& step_norms() const { return steps_; }

  std::size_t max_delay() const { return max_delay_; }

 private:
  std::size_t max_delay_;
  std::deque<std::vector<double>> snapshots_;
  std::deque<double> steps_;
};

// Right-hand side weighting. With `lag_weights` empty every stored step is
// weighted by `c`; otherwise step d (1-based, most recent first) is weighted
// by lag_weights[d-1].
struct SelectionRule {
  double c = 1.0;
  std::size_t max_delay = 10;
  std::vector<double> lag_weights;

  double threshold(const IterateHistory& history) const;
};

// True when the skip condition holds (unit may be skipped).
bool check_condition(double smoothness, std::span<const double> theta_now,
                     std::span<const double> theta_stale,
                     const IterateHistory& history, double c);

// Same with a precomputed right-hand side.
bool check_condition(double smoothness, std::span<const double> theta_now,
                     std::span<const double> theta_stale, double threshold);

enum class SelectReason { kConditionViolated, kAoiForced, kColdStart };

struct SelectionResult {
  struct Entry {
    std::size_t id;
    SelectReason reason;
  };
  std::vector<Entry> selected;  // ascending id

  std::size_t size() const { return selected.size(); }
  bool empty() const { return selected.empty(); }
  bool contains(std::size_t id) const;
  std::vector<std::size_t> ids() const;
};

SelectionResult select_workers(std::span<const WorkerMeta> workers,
                               const IterateHistory& history,
                               const SelectionRule& rule);

SelectionResult select_groups(std::span<const GroupMeta> groups,
                              const IterateHistory& history,
                              const SelectionRule& rule);

// Iteration 0: every unit is dispatched so each one has a cached gradient.
SelectionResult select_all(std::size_t num_units);

// Selected units -> aoi = 1; others -> aoi + 1.
template <class Meta>
void update_aoi(const SelectionResult& result, std::span<Meta> metas) {
  for (auto& m : metas) {
    m.aoi = result.contains(m.id) ? 1 : m.aoi + 1;
  }
}

}  // namespace gcada

#endif  // GCADA_SCHEDULER_HPP
