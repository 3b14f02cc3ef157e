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

#ifndef GCADA_SIMULATION_HPP
#define GCADA_SIMULATION_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gcada/config.hpp"
#include "gcada/dataset.hpp"
#include "gcada/scheduler.hpp"
#include "gcada/straggler.hpp"

namespace gcada {

struct MetricsRecord {
  std::size_t k = 0;
  double t_iter = 0.0;
  double t_cum = 0.0;
  std::size_t n_dispatch = 0;  // |M_D^k|
  std::size_t n_upload = 0;    // |M_U^k|
  std::size_t comm_iter = 0;
  std::size_t comm_cum = 0;
  std::size_t comp_iter = 0;   // gradient-sample evaluations
  std::size_t comp_cum = 0;
  double loss = 0.0;           // after the update; NaN when not evaluated
};

struct RunSummary {
  std::optional<double> time_to_threshold;
  std::optional<std::size_t> comm_to_threshold;
  std::optional<std::size_t> comp_to_threshold;
  std::optional<std::size_t> iterations_to_threshold;
  double final_loss = 0.0;
  std::size_t iterations = 0;
  bool diverged = false;
  std::string diagnostic;
  ExperimentConfig config;

  bool reached() const { return time_to_threshold.has_value(); }
};

struct RunResult {
  std::vector<MetricsRecord> records;
  RunSummary summary;
};

// What the scheduler saw and decided in one iteration. `aoi` holds each
// unit's age at selection time (before the reset/increment).
struct IterationTrace {
  std::size_t k = 0;
  std::vector<std::size_t> aoi;
  SelectionResult selection;
  const IterationTiming* timing = nullptr;
};

using IterationObserver = std::function<void(const IterationTrace&)>;

// Builds the dataset described by `spec` (bias column appended if asked).
Dataset make_dataset(const DatasetSpec& spec);

// Smoothness constant of every unit (worker or group) under `cfg`.
std::vector<double> unit_smoothness(const ExperimentConfig& cfg,
                                    const Dataset& data);

// One full training run. Deterministic in (cfg, data).
RunResult run(const ExperimentConfig& cfg, const Dataset& data,
              const IterationObserver& observer = {});
RunResult run(const ExperimentConfig& cfg);

// Runs every config on the same dataset and with seed `coupled_seed`, so all
// schemes see the same per-(iteration, worker) compute times. Results are in
// input order.
std::vector<RunResult> compare(std::vector<ExperimentConfig> configs,
                               std::uint64_t coupled_seed);

// configs x seeds; results ordered by config index, then seed.
std::vector<RunSummary> sweep(const std::vector<ExperimentConfig>& configs,
                              const std::vector<std::uint64_t>& seeds);

// Per-iteration CSV: k,t_iter,t_cum,n_dispatch,n_upload,comm_iter,comm_cum,
// comp_iter,comp_cum,loss with 9 significant digits and LF line endings.
void emit_csv(const std::vector<MetricsRecord>& records, const std::string& path);
std::string format_csv(const std::vector<MetricsRecord>& records);

// One row per run.
void emit_summary_csv(const std::vector<RunSummary>& summaries,
                      const std::string& path);
std::string format_summary_csv(const std::vector<RunSummary>& summaries);

}  // namespace gcada

#endif  // GCADA_SIMULATION_HPP
