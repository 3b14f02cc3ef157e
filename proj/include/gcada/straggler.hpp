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

#ifndef GCADA_STRAGGLER_HPP
#define GCADA_STRAGGLER_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "gcada/rng.hpp"

namespace gcada {

using WorkerTimes = std::map<std::size_t, double>;

// i.i.d. Exp(mean) compute times. The draw for worker m at iteration k is
// keyed by (seed, k, m) only, so it is the same whichever scheme asks and
// whatever was selected before: schemes run on coupled randomness.
class ComputeTimeModel {
 public:
  ComputeTimeModel(double mean, std::uint64_t seed);

  double mean() const { return mean_; }
  std::uint64_t seed() const { return rng_.seed(); }

  double time(std::uint64_t iteration, std::size_t worker) const {
    const double u = rng_.uniform(StreamTag::kComputeTime,
                                  static_cast<std::uint32_t>(iteration >> 32),
                                  static_cast<std::uint32_t>(iteration),
                                  static_cast<std::uint32_t>(worker));
    return exponential_from_uniform(u, mean_);
  }

  WorkerTimes sample_times(std::uint64_t iteration,
                           std::span<const std::size_t> workers) const;

 private:
  double mean_;
  CounterRng rng_;
};

struct IterationTiming {
  WorkerTimes times;                   // dispatched workers only
  std::vector<std::size_t> uploaders;  // worker ids, ascending
  double wall_clock = 0.0;
};

// PS waits for every selected worker; all of them upload.
IterationTiming resolve_cada(const WorkerTimes& times,
                             std::span<const std::size_t> selected);

struct GroupDispatch {
  std::size_t group = 0;
  std::vector<std::size_t> members;
};

// Per selected group only the fastest member uploads (ties: lowest id); the
// PS waits for the slowest of those group minima.
IterationTiming resolve_gcada(const WorkerTimes& times,
                              std::span<const GroupDispatch> selected);

}  // namespace gcada

#endif  // GCADA_STRAGGLER_HPP
