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

#include "gcada/straggler.hpp"

#include <algorithm>

#include "gcada/errors.hpp"

namespace gcada {

namespace {

double time_of(const WorkerTimes& times, std::size_t worker) {
  const auto it = times.find(worker);
  if (it == times.end()) {
    throw ContractError("no sampled time for worker " + std::to_string(worker));
  }
  return it->second;
}

}  // namespace

ComputeTimeModel::ComputeTimeModel(double mean, std::uint64_t seed)
    : mean_(mean), rng_(seed) {
  if (!(mean > 0.0)) throw ConfigError("compute-time mean must be > 0");
}

WorkerTimes ComputeTimeModel::sample_times(
    std::uint64_t iteration, std::span<const std::size_t> workers) const {
  std::vector<std::size_t> ids(workers.begin(), workers.end());
  std::sort(ids.begin(), ids.end());
  WorkerTimes out;
  for (const std::size_t m : ids) out.emplace(m, time(iteration, m));
  return out;
}

IterationTiming resolve_cada(const WorkerTimes& times,
                             std::span<const std::size_t> selected) {
  IterationTiming t;
  t.uploaders.assign(selected.begin(), selected.end());
  std::sort(t.uploaders.begin(), t.uploaders.end());
  for (const std::size_t m : t.uploaders) {
    const double tm = time_of(times, m);
    t.times.emplace(m, tm);
    t.wall_clock = std::max(t.wall_clock, tm);
  }
  return t;
}

IterationTiming resolve_gcada(const WorkerTimes& times,
                              std::span<const GroupDispatch> selected) {
  IterationTiming t;
  for (const auto& g : selected) {
    if (g.members.empty()) {
      throw ContractError("group " + std::to_string(g.group) + " has no members");
    }
    std::size_t fastest = 0;
    double best = 0.0;
    bool first = true;
    for (const std::size_t m : g.members) {
      const double tm = time_of(times, m);
      t.times.emplace(m, tm);
      if (first || tm < best || (tm == best && m < fastest)) {
        fastest = m;
        best = tm;
        first = false;
      }
    }
    t.uploaders.push_back(fastest);
    t.wall_clock = std::max(t.wall_clock, best);
  }
  std::sort(t.uploaders.begin(), t.uploaders.end());
  return t;
}

}  // namespace gcada
