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

#include "gcada/simulation.hpp"

#include <fmt/format.h>

#include <cmath>
#include <exception>
#include <fstream>
#include <limits>

#include "gcada/errors.hpp"
#include "gcada/loss.hpp"
#include "gcada/optimizer.hpp"
#include "gcada/rng.hpp"

namespace gcada {

namespace {

ShardMode shard_mode(Scheme s) {
  return s == Scheme::kGCada ? ShardMode::kPerGroupReplicated
                             : ShardMode::kPerWorkerDisjoint;
}

// Uniform draws with replacement from the shard, keyed by (k, worker, j).
std::vector<std::size_t> draw_batch(const CounterRng& rng, std::uint64_t k,
                                    std::size_t worker, const Shard& shard,
                                    std::size_t batch) {
  std::vector<std::size_t> out(batch);
  const auto size = static_cast<double>(shard.samples.size());
  for (std::size_t j = 0; j < batch; ++j) {
    const double u = rng.uniform(StreamTag::kMiniBatch,
                                 static_cast<std::uint32_t>(k),
                                 static_cast<std::uint32_t>(worker),
                                 static_cast<std::uint32_t>(j));
    // 1 - u lies in [0, 1), so the index is always < size.
    const auto idx = static_cast<std::size_t>((1.0 - u) * size);
    out[j] = shard.samples[idx];
  }
  return out;
}

std::string fmt_real(double x) { return fmt::format("{:.9g}", x); }

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing", path);
  out << contents;
  if (!out) throw IoError("write failed", path);
}

}  // namespace

Dataset make_dataset(const DatasetSpec& spec) {
  Dataset data = spec.kind == DatasetSpec::Kind::kSynthetic
                     ? synth_regression(spec.samples, spec.dim, spec.noise_sd,
                                        spec.seed)
                           .data
                     : load_idx(spec.image_path, spec.label_path, spec.limit);
  return spec.bias ? data.with_bias_column() : data;
}

std::vector<double> unit_smoothness(const ExperimentConfig& cfg,
                                    const Dataset& data) {
  const ShardingPlan plan =
      shard(data, cfg.workers, cfg.groups, shard_mode(cfg.scheme));
  std::vector<double> out;
  out.reserve(plan.shards.size());
  for (const auto& sh : plan.shards) {
    const double n = static_cast<double>(sh.samples.size());
    const double scale = cfg.smoothness_scale == SmoothnessScale::kLocal
                             ? 1.0 / n
                             : static_cast<double>(cfg.batch) / n;
    out.push_back(smoothness_constant(sh, data, scale));
  }
  return out;
}

RunResult run(const ExperimentConfig& cfg, const Dataset& data,
              const IterationObserver& observer) {
  cfg.validate();
  const ShardingPlan plan =
      shard(data, cfg.workers, cfg.groups, shard_mode(cfg.scheme));
  const bool grouped = cfg.scheme == Scheme::kGCada;
  const bool adaptive = cfg.scheme == Scheme::kCada || grouped;
  const std::size_t units = cfg.num_units();
  const std::size_t dim = data.dim();

  // Unit u is shard u in both sharding modes.
  std::vector<WorkerMeta> worker_meta;
  std::vector<GroupMeta> group_meta;
  if (adaptive) {
    const auto smooth = unit_smoothness(cfg, data);
    for (std::size_t u = 0; u < units; ++u) {
      if (grouped) {
        group_meta.push_back({u, plan.shards[u].owners, 1, smooth[u]});
      } else {
        worker_meta.push_back({u, 1, smooth[u]});
      }
    }
  }

  SelectionRule rule;
  rule.c = cfg.c;
  rule.max_delay = cfg.max_delay;
  rule.lag_weights = cfg.lag_weights;

  std::vector<double> theta(dim, 0.0);
  IterateHistory history(cfg.max_delay, theta);
  OptimizerState opt = OptimizerState::zeros(
      dim, {cfg.lr, cfg.beta1, cfg.beta2, cfg.epsilon, cfg.moment_rule});
  UnitGradients cache;
  std::map<std::size_t, std::size_t> cache_age;

  const ComputeTimeModel clock(cfg.eta, cfg.seed);
  const CounterRng batch_rng(cfg.seed);

  RunResult result;
  RunSummary& summary = result.summary;
  summary.config = cfg;
  summary.final_loss = std::numeric_limits<double>::quiet_NaN();
  double t_cum = 0.0;
  std::size_t comm_cum = 0;
  std::size_t comp_cum = 0;

  for (std::size_t k = 0; k < cfg.max_iterations; ++k) {
    // Selection.
    IterationTrace trace;
    trace.k = k;
    if (adaptive) {
      for (const auto& w : worker_meta) trace.aoi.push_back(w.aoi);
      for (const auto& g : group_meta) trace.aoi.push_back(g.aoi);
    }
    if (k == 0 || !adaptive) {
      trace.selection = select_all(units);
    } else if (grouped) {
      trace.selection = select_groups(group_meta, history, rule);
    } else {
      trace.selection = select_workers(worker_meta, history, rule);
    }

    // Dispatch and timing.
    IterationTiming timing;
    std::vector<std::size_t> dispatched;
    if (grouped) {
      std::vector<GroupDispatch> groups;
      for (const auto& e : trace.selection.selected) {
        groups.push_back({e.id, plan.shards[e.id].owners});
        dispatched.insert(dispatched.end(), plan.shards[e.id].owners.begin(),
                          plan.shards[e.id].owners.end());
      }
      timing = resolve_gcada(clock.sample_times(k, dispatched), groups);
    } else {
      dispatched = trace.selection.ids();
      timing = resolve_cada(clock.sample_times(k, dispatched), dispatched);
    }
    trace.timing = &timing;
    if (observer) observer(trace);

    // Fresh gradients from the uploading workers.
    UnitGradients fresh;
    for (const std::size_t w : timing.uploaders) {
      const std::size_t u = plan.shard_of_worker[w];
      const auto batch = draw_batch(batch_rng, k, w, plan.shards[u], cfg.batch);
      auto g = minibatch_gradient(theta, batch, data);
      if (cfg.normalization == GradientNormalization::kMean) {
        for (double& x : g) x /= static_cast<double>(cfg.batch);
      }
      fresh.emplace(u, std::move(g));
    }

    // Aggregation and update.
    std::map<std::size_t, std::size_t> ages;
    if (adaptive) {
      for (const auto& w : worker_meta) ages[w.id] = w.aoi;
      for (const auto& g : group_meta) ages[g.id] = g.aoi;
    }
    const GradientEstimate est = aggregate(units, fresh, cache, ages);
    try {
      if (cfg.scheme == Scheme::kDistributedSgd) {
        theta = sgd_step(theta, est.values, cfg.lr);
      } else {
        auto step = amsgrad_step(opt, theta, est.values);
        theta = std::move(step.theta);
        opt = std::move(step.state);
      }
    } catch (const NumericalError& e) {
      summary.diverged = true;
      summary.diagnostic = fmt::format("iteration {}: {}", k, e.what());
      break;
    }

    for (auto& [u, g] : fresh) cache[u] = std::move(g);
    if (grouped) {
      update_aoi<GroupMeta>(trace.selection, group_meta);
    } else if (adaptive) {
      update_aoi<WorkerMeta>(trace.selection, worker_meta);
    }
    history.push(theta);

    // Metrics.
    MetricsRecord rec;
    rec.k = k;
    rec.t_iter = timing.wall_clock;
    t_cum += timing.wall_clock;
    rec.t_cum = t_cum;
    rec.n_dispatch = dispatched.size();
    rec.n_upload = timing.uploaders.size();
    rec.comm_iter = rec.n_dispatch + rec.n_upload;
    comm_cum += rec.comm_iter;
    rec.comm_cum = comm_cum;
    rec.comp_iter = rec.n_dispatch * cfg.batch;
    comp_cum += rec.comp_iter;
    rec.comp_cum = comp_cum;
    const bool evaluate =
        k % cfg.loss_every == 0 || k + 1 == cfg.max_iterations;
    rec.loss = evaluate ? global_loss(theta, data)
                        : std::numeric_limits<double>::quiet_NaN();
    result.records.push_back(rec);
    summary.iterations = k + 1;

    if (evaluate) {
      summary.final_loss = rec.loss;
      if (!std::isfinite(rec.loss)) {
        summary.diverged = true;
        summary.diagnostic = fmt::format("iteration {}: training loss is {}", k,
                                         rec.loss);
        break;
      }
      if (rec.loss <= cfg.loss_threshold) {
        summary.time_to_threshold = rec.t_cum;
        summary.comm_to_threshold = rec.comm_cum;
        summary.comp_to_threshold = rec.comp_cum;
        summary.iterations_to_threshold = k + 1;
        break;
      }
    }
  }
  return result;
}

RunResult run(const ExperimentConfig& cfg) {
  cfg.validate();
  return run(cfg, make_dataset(cfg.dataset));
}

std::vector<RunResult> compare(std::vector<ExperimentConfig> configs,
                               std::uint64_t coupled_seed) {
  if (configs.empty()) return {};
  for (const auto& c : configs) {
    c.validate();
    if (!(c.dataset == configs.front().dataset) || c.eta != configs.front().eta) {
      throw ConfigError("compared configs must share the dataset and eta");
    }
  }
  for (auto& c : configs) c.seed = coupled_seed;
  const Dataset data = make_dataset(configs.front().dataset);

  std::vector<RunResult> results(configs.size());
  std::vector<std::exception_ptr> errors(configs.size());
  const auto n = static_cast<std::ptrdiff_t>(configs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    try {
      results[idx] = run(configs[idx], data);
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

std::vector<RunSummary> sweep(const std::vector<ExperimentConfig>& configs,
                              const std::vector<std::uint64_t>& seeds) {
  if (configs.empty() || seeds.empty()) return {};
  for (const auto& c : configs) {
    c.validate();
    if (!(c.dataset == configs.front().dataset)) {
      throw ConfigError("swept configs must share the dataset");
    }
  }
  const Dataset data = make_dataset(configs.front().dataset);

  const std::size_t total = configs.size() * seeds.size();
  std::vector<RunSummary> out(total);
  std::vector<std::exception_ptr> errors(total);
  const auto n = static_cast<std::ptrdiff_t>(total);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    ExperimentConfig cfg = configs[idx / seeds.size()];
    cfg.seed = seeds[idx % seeds.size()];
    try {
      out[idx] = run(cfg, data).summary;
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::string format_csv(const std::vector<MetricsRecord>& records) {
  std::string out =
      "k,t_iter,t_cum,n_dispatch,n_upload,comm_iter,comm_cum,comp_iter,"
      "comp_cum,loss\n";
  for (const auto& r : records) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", r.k, fmt_real(r.t_iter),
                       fmt_real(r.t_cum), r.n_dispatch, r.n_upload, r.comm_iter,
                       r.comm_cum, r.comp_iter, r.comp_cum, fmt_real(r.loss));
  }
  return out;
}

void emit_csv(const std::vector<MetricsRecord>& records, const std::string& path) {
  write_file(path, format_csv(records));
}

std::string format_summary_csv(const std::vector<RunSummary>& summaries) {
  std::string out =
      "scheme,seed,workers,groups,group_size,max_delay,c,lr,reached,"
      "time_to_threshold,comm_to_threshold,comp_to_threshold,"
      "iterations_to_threshold,iterations,final_loss,diverged\n";
  for (const auto& s : summaries) {
    const auto& c = s.config;
    out += fmt::format(
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", scheme_name(c.scheme),
        c.seed, c.workers, c.scheme == Scheme::kGCada ? c.groups : c.workers,
        c.group_size(), c.max_delay, fmt_real(c.c), fmt_real(c.lr),
        s.reached() ? 1 : 0,
        s.time_to_threshold ? fmt_real(*s.time_to_threshold) : "",
        s.comm_to_threshold ? std::to_string(*s.comm_to_threshold) : "",
        s.comp_to_threshold ? std::to_string(*s.comp_to_threshold) : "",
        s.iterations_to_threshold ? std::to_string(*s.iterations_to_threshold) : "",
        s.iterations, fmt_real(s.final_loss), s.diverged ? 1 : 0);
  }
  return out;
}

void emit_summary_csv(const std::vector<RunSummary>& summaries,
                      const std::string& path) {
  write_file(path, format_summary_csv(summaries));
}

}  // namespace gcada
