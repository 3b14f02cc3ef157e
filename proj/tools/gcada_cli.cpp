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

// gcada: run, compare, sweep and analyze parameter-server SGD schemes.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical divergence,
// 4 IO error.

#include <fmt/format.h>

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "gcada/analysis.hpp"
#include "gcada/errors.hpp"
#include "gcada/kernels.hpp"
#include "gcada/simulation.hpp"

namespace {

using namespace gcada;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitDiverged = 3;
constexpr int kExitIo = 4;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("cannot parse " + what + " value '" + s + "'");
  }
}

std::vector<double> parse_reals(const std::string& s, const std::string& what) {
  std::vector<double> out;
  for (const auto& tok : split(s, ',')) out.push_back(to_double(tok, what));
  return out;
}

std::vector<Scheme> parse_schemes(const std::string& s) {
  std::vector<Scheme> out;
  for (const auto& tok : split(s, ',')) out.push_back(parse_scheme(tok));
  if (out.empty()) throw ConfigError("empty scheme list");
  return out;
}

// "a-b" (inclusive range) or "a,b,c".
std::vector<std::uint64_t> parse_seeds(const std::string& s) {
  std::vector<std::uint64_t> out;
  if (const auto dash = s.find('-'); dash != std::string::npos) {
    const auto lo = std::stoull(s.substr(0, dash));
    const auto hi = std::stoull(s.substr(dash + 1));
    if (hi < lo) throw ConfigError("empty seed range " + s);
    for (auto v = lo; v <= hi; ++v) out.push_back(v);
  } else {
    for (const auto& tok : split(s, ',')) out.push_back(std::stoull(tok));
  }
  if (out.empty()) throw ConfigError("empty seed list");
  return out;
}

// Experiment flags shared by every subcommand. Each flag given on the
// command line (or in a --config file) overrides the per-scheme defaults.
class ExperimentFlags {
 public:
  void attach(CLI::App* app) {
    add<std::string>(app, "--scheme", "d-sgd | d-adam | cada | g-cada",
                     [](ExperimentConfig& c, const std::string& v) {
                       c.scheme = parse_scheme(v);
                     });
    add<std::size_t>(app, "--workers", "number of workers M",
                     [](ExperimentConfig& c, std::size_t v) { c.workers = v; });
    add<std::size_t>(app, "--groups", "number of groups G (g-cada)",
                     [](ExperimentConfig& c, std::size_t v) { c.groups = v; });
    group_size_ = add<std::size_t>(app, "--group-size",
                                   "workers per group M_G (checked against M/G)",
                                   [](ExperimentConfig&, std::size_t) {});
    add<std::size_t>(app, "--max-delay", "maximum age D before forced selection",
                     [](ExperimentConfig& c, std::size_t v) { c.max_delay = v; });
    add<double>(app, "--threshold-c", "skip-condition constant c",
                [](ExperimentConfig& c, double v) { c.c = v; });
    add<std::string>(app, "--lag-weights", "comma-separated c_1..c_D (replaces c)",
                     [](ExperimentConfig& c, const std::string& v) {
                       c.lag_weights = parse_reals(v, "--lag-weights");
                     });
    add<double>(app, "--lr", "stepsize alpha",
                [](ExperimentConfig& c, double v) { c.lr = v; });
    add<double>(app, "--beta1", "first-moment weight",
                [](ExperimentConfig& c, double v) { c.beta1 = v; });
    add<double>(app, "--beta2", "second-moment weight",
                [](ExperimentConfig& c, double v) { c.beta2 = v; });
    add<double>(app, "--epsilon", "AMSGrad epsilon",
                [](ExperimentConfig& c, double v) { c.epsilon = v; });
    add<std::string>(app, "--moment-rule", "running-max | classical",
                     [](ExperimentConfig& c, const std::string& v) {
                       if (v == "running-max") {
                         c.moment_rule = SecondMomentRule::kRunningMax;
                       } else if (v == "classical") {
                         c.moment_rule = SecondMomentRule::kClassical;
                       } else {
                         throw ConfigError("unknown moment rule " + v);
                       }
                     });
    add<double>(app, "--eta", "mean compute time per mini-batch, seconds",
                [](ExperimentConfig& c, double v) { c.eta = v; });
    add<std::size_t>(app, "--batch", "mini-batch size in samples",
                     [](ExperimentConfig& c, std::size_t v) { c.batch = v; });
    add<std::size_t>(app, "--iters", "iteration cap",
                     [](ExperimentConfig& c, std::size_t v) { c.max_iterations = v; });
    add<double>(app, "--loss-threshold", "stop once training loss <= this",
                [](ExperimentConfig& c, double v) { c.loss_threshold = v; });
    add<std::size_t>(app, "--loss-every", "evaluate the loss every n iterations",
                     [](ExperimentConfig& c, std::size_t v) { c.loss_every = v; });
    add<std::uint64_t>(app, "--seed", "seed for compute times and mini-batches",
                       [](ExperimentConfig& c, std::uint64_t v) { c.seed = v; });
    add<std::string>(app, "--smoothness-scale", "local | batch-sum",
                     [](ExperimentConfig& c, const std::string& v) {
                       if (v == "local") {
                         c.smoothness_scale = SmoothnessScale::kLocal;
                       } else if (v == "batch-sum") {
                         c.smoothness_scale = SmoothnessScale::kBatchSum;
                       } else {
                         throw ConfigError("unknown smoothness scale " + v);
                       }
                     });
    add<std::string>(app, "--normalize", "sum | mean (per-unit gradient)",
                     [](ExperimentConfig& c, const std::string& v) {
                       if (v == "sum") {
                         c.normalization = GradientNormalization::kSum;
                       } else if (v == "mean") {
                         c.normalization = GradientNormalization::kMean;
                       } else {
                         throw ConfigError("unknown normalization " + v);
                       }
                     });
    // Dataset.
    add<std::string>(app, "--mnist-images", "IDX image file",
                     [](ExperimentConfig& c, const std::string& v) {
                       c.dataset.kind = DatasetSpec::Kind::kIdx;
                       c.dataset.bias = true;
                       c.dataset.image_path = v;
                     });
    add<std::string>(app, "--mnist-labels", "IDX label file",
                     [](ExperimentConfig& c, const std::string& v) {
                       c.dataset.label_path = v;
                     });
    add<std::size_t>(app, "--limit", "use at most this many IDX items",
                     [](ExperimentConfig& c, std::size_t v) { c.dataset.limit = v; });
    add<std::string>(app, "--synth", "synthetic regression N,d,sd",
                     [](ExperimentConfig& c, const std::string& v) {
                       const auto parts = split(v, ',');
                       if (parts.size() != 3) throw ConfigError("--synth expects N,d,sd");
                       c.dataset.kind = DatasetSpec::Kind::kSynthetic;
                       c.dataset.samples = std::stoull(parts[0]);
                       c.dataset.dim = std::stoull(parts[1]);
                       c.dataset.noise_sd = to_double(parts[2], "--synth sd");
                     });
    add<std::uint64_t>(app, "--data-seed", "seed of the synthetic dataset",
                       [](ExperimentConfig& c, std::uint64_t v) { c.dataset.seed = v; });
    add<bool>(app, "--bias", "append a constant feature (true|false)",
              [](ExperimentConfig& c, bool v) { c.dataset.bias = v; });
  }

  // Defaults for `scheme`, then every flag that was given, in declaration order.
  ExperimentConfig build(Scheme scheme) const {
    ExperimentConfig cfg = ExperimentConfig::defaults_for(scheme);
    for (const auto& apply : appliers_) apply(cfg);
    cfg.scheme = scheme;
    if (group_size_->count() > 0 && cfg.groups * *group_size_value_ != cfg.workers) {
      throw ConfigError(fmt::format("--group-size {} does not match M/G = {}/{}",
                                    *group_size_value_, cfg.workers, cfg.groups));
    }
    cfg.validate();
    return cfg;
  }

  // Scheme from --scheme, else `fallback`.
  Scheme scheme_or(Scheme fallback) const {
    ExperimentConfig probe;
    probe.scheme = fallback;
    for (const auto& apply : appliers_) apply(probe);
    return probe.scheme;
  }

 private:
  template <class T, class F>
  CLI::Option* add(CLI::App* app, const std::string& flag, const std::string& help,
                   F apply) {
    auto value = std::make_shared<T>();
    CLI::Option* opt = app->add_option(flag, *value, help);
    if constexpr (std::is_same_v<T, std::size_t>) {
      if (flag == "--group-size") group_size_value_ = value;
    }
    appliers_.push_back([opt, value, apply](ExperimentConfig& cfg) {
      if (opt->count() > 0) apply(cfg, *value);
    });
    return opt;
  }

  std::vector<std::function<void(ExperimentConfig&)>> appliers_;
  CLI::Option* group_size_ = nullptr;
  std::shared_ptr<std::size_t> group_size_value_;
};

// Flat key=value file -> "--key=value" tokens. Blank lines and '#' comments
// are skipped.
std::vector<std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file", path);
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    line = line.substr(first, line.find_last_not_of(" \t\r") - first + 1);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line without '=': " + line);
    }
    std::string key = line.substr(0, eq);
    std::string val = line.substr(eq + 1);
    key.erase(key.find_last_not_of(" \t") + 1);
    val.erase(0, val.find_first_not_of(" \t"));
    if (key.rfind("--", 0) != 0) key = "--" + key;
    tokens.push_back(key + "=" + val);
  }
  return tokens;
}

// Splices config-file tokens right after the subcommand name so that
// explicit flags, parsed later, win (options use TakeLast).
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty() || args.empty()) return args;
  const auto file_tokens = read_config_file(path);
  args.insert(args.begin() + 1, file_tokens.begin(), file_tokens.end());
  return args;
}

void print_summary(const RunSummary& s, std::ostream& os) {
  const auto& c = s.config;
  os << fmt::format("scheme={} seed={} M={} G={} M_G={} D={} c={} lr={}\n",
                    scheme_name(c.scheme), c.seed, c.workers,
                    c.scheme == Scheme::kGCada ? c.groups : c.workers,
                    c.group_size(), c.max_delay, c.c, c.lr);
  if (s.reached()) {
    os << fmt::format(
        "reached loss {} after {} iterations: time={:.6g}s comm={} comp={}\n",
        c.loss_threshold, *s.iterations_to_threshold, *s.time_to_threshold,
        *s.comm_to_threshold, *s.comp_to_threshold);
  } else {
    os << fmt::format("threshold {} not reached in {} iterations\n",
                      c.loss_threshold, s.iterations);
  }
  os << fmt::format("final loss {:.9g}\n", s.final_loss);
  if (s.diverged) os << "DIVERGED: " << s.diagnostic << "\n";
}

std::string fmt_opt_time(const std::optional<double>& v) {
  return v ? fmt::format("{:.6g}", *v) : "-";
}
std::string fmt_opt_count(const std::optional<std::size_t>& v) {
  return v ? std::to_string(*v) : "-";
}

void print_table(const std::vector<RunSummary>& rows, std::ostream& os) {
  os << fmt::format("{:<8} {:>8} {:>12} {:>10} {:>10} {:>8} {:>12}\n", "scheme",
                    "seed", "time", "comm", "comp", "iters", "final_loss");
  for (const auto& s : rows) {
    os << fmt::format("{:<8} {:>8} {:>12} {:>10} {:>10} {:>8} {:>12.6g}\n",
                      scheme_name(s.config.scheme), s.config.seed,
                      fmt_opt_time(s.time_to_threshold),
                      fmt_opt_count(s.comm_to_threshold),
                      fmt_opt_count(s.comp_to_threshold),
                      fmt_opt_count(s.iterations_to_threshold), s.final_loss);
  }
}

int cmd_run(const ExperimentFlags& flags, const std::string& out) {
  const ExperimentConfig cfg = flags.build(flags.scheme_or(Scheme::kGCada));
  const RunResult r = run(cfg);
  if (!out.empty()) emit_csv(r.records, out);
  print_summary(r.summary, std::cout);
  return r.summary.diverged ? kExitDiverged : kExitOk;
}

int cmd_compare(const ExperimentFlags& flags, const std::string& schemes,
                std::uint64_t seed, const std::string& out_dir,
                const std::string& summary_path) {
  std::vector<ExperimentConfig> configs;
  for (const Scheme s : parse_schemes(schemes)) configs.push_back(flags.build(s));
  const auto results = compare(configs, seed);

  std::vector<RunSummary> summaries;
  bool diverged = false;
  if (!out_dir.empty()) std::filesystem::create_directories(out_dir);
  for (const auto& r : results) {
    summaries.push_back(r.summary);
    diverged = diverged || r.summary.diverged;
    if (!out_dir.empty()) {
      const auto path = std::filesystem::path(out_dir) /
                        (std::string(scheme_name(r.summary.config.scheme)) + ".csv");
      emit_csv(r.records, path.string());
    }
  }
  if (!summary_path.empty()) emit_summary_csv(summaries, summary_path);
  print_table(summaries, std::cout);
  return diverged ? kExitDiverged : kExitOk;
}

int cmd_sweep(const ExperimentFlags& flags, const std::string& schemes,
              const std::string& seeds, const std::string& out) {
  std::vector<ExperimentConfig> configs;
  for (const Scheme s : parse_schemes(schemes)) configs.push_back(flags.build(s));
  const auto summaries = sweep(configs, parse_seeds(seeds));
  if (!out.empty()) emit_summary_csv(summaries, out);
  print_table(summaries, std::cout);
  const bool diverged = std::any_of(summaries.begin(), summaries.end(),
                                    [](const auto& s) { return s.diverged; });
  return diverged ? kExitDiverged : kExitOk;
}

struct AnalyzeRow {
  std::string scheme;
  std::string metric;
  double predicted;
  std::optional<double> monte_carlo;
  std::optional<double> observed;
};

int cmd_analyze(const ExperimentFlags& flags, std::size_t reps,
                const std::string& lag_constants, const std::string& csv_path) {
  ExperimentConfig cada = flags.build(Scheme::kCada);
  ExperimentConfig gcada = flags.build(Scheme::kGCada);
  const Dataset data = make_dataset(gcada.dataset);

  analysis::Inputs in;
  in.workers = gcada.workers;
  in.groups = gcada.groups;
  in.group_size = gcada.group_size();
  in.max_delay = gcada.max_delay;
  in.mean_time = gcada.eta;
  in.batch = static_cast<double>(gcada.batch);
  in.lag_constants = lag_constants.empty()
                         ? std::vector<double>(in.max_delay, gcada.c)
                         : parse_reals(lag_constants, "--lag-constants");
  in.worker_smoothness = unit_smoothness(cada, data);
  in.group_smoothness = unit_smoothness(gcada, data);
  in.validate();

  const double m_bar = analysis::selection_bound_workers(in);
  const double g_bar = analysis::selection_bound_groups(in);
  const auto loads = analysis::predicted_loads(in, m_bar, g_bar);
  const auto times = analysis::predicted_times(in, m_bar, g_bar);

  const ComputeTimeModel clock(gcada.eta, gcada.seed);
  const auto mc = [&](std::size_t g, std::size_t size) -> std::optional<double> {
    if (g == 0) return 0.0;
    return kernels::omp::full_selection_wall_clock(clock, g, size, reps).mean;
  };
  const auto m_round = static_cast<std::size_t>(std::llround(m_bar));
  const auto g_round = static_cast<std::size_t>(std::llround(g_bar));

  struct Observed {
    double units = 0, time = 0, comm = 0, comp = 0;
  };
  const auto observe = [&](const ExperimentConfig& cfg) {
    const RunResult r = run(cfg, data);
    Observed o;
    const double n = static_cast<double>(std::max<std::size_t>(1, r.records.size()));
    for (const auto& rec : r.records) {
      o.units += static_cast<double>(rec.n_upload);
      o.time += rec.t_iter;
      o.comm += static_cast<double>(rec.comm_iter);
      o.comp += static_cast<double>(rec.comp_iter);
    }
    o.units /= n;
    o.time /= n;
    o.comm /= n;
    o.comp /= n;
    return o;
  };
  const Observed obs_adam = observe(flags.build(Scheme::kDistributedAdam));
  const Observed obs_cada = observe(cada);
  const Observed obs_gcada = observe(gcada);
  const double m = static_cast<double>(in.workers);

  const std::vector<AnalyzeRow> rows = {
      {"d-adam", "selected_units", m, std::nullopt, obs_adam.units},
      {"d-adam", "time_per_iter", times.dadam, mc(in.workers, 1), obs_adam.time},
      {"d-adam", "comm_per_iter", loads.comm_dadam, std::nullopt, obs_adam.comm},
      {"d-adam", "comp_per_iter", loads.comp_dadam, std::nullopt, obs_adam.comp},
      {"cada", "selected_units", m_bar, std::nullopt, obs_cada.units},
      {"cada", "time_per_iter", times.cada, mc(m_round, 1), obs_cada.time},
      {"cada", "comm_per_iter", loads.comm_cada, std::nullopt, obs_cada.comm},
      {"cada", "comp_per_iter", loads.comp_cada, std::nullopt, obs_cada.comp},
      {"g-cada", "selected_units", g_bar, std::nullopt, obs_gcada.units},
      {"g-cada", "time_per_iter", times.gcada, mc(g_round, in.group_size),
       obs_gcada.time},
      {"g-cada", "comm_per_iter", loads.comm_gcada, std::nullopt, obs_gcada.comm},
      {"g-cada", "comp_per_iter", loads.comp_gcada, std::nullopt, obs_gcada.comp},
  };

  const auto cell = [](const std::optional<double>& v) {
    return v ? fmt::format("{:.6g}", *v) : std::string("-");
  };
  std::cout << fmt::format("M={} G={} M_G={} D={} eta={} batch={}  M-bar={:.4g} G-bar={:.4g}\n",
                           in.workers, in.groups, in.group_size, in.max_delay,
                           in.mean_time, gcada.batch, m_bar, g_bar);
  std::cout << fmt::format("{:<8} {:<16} {:>12} {:>12} {:>12}\n", "scheme", "metric",
                           "predicted", "monte_carlo", "observed");
  for (const auto& r : rows) {
    std::cout << fmt::format("{:<8} {:<16} {:>12.6g} {:>12} {:>12}\n", r.scheme,
                             r.metric, r.predicted, cell(r.monte_carlo),
                             cell(r.observed));
  }

  if (!csv_path.empty()) {
    std::ofstream out(csv_path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing", csv_path);
    out << "scheme,metric,predicted,monte_carlo,observed\n";
    for (const auto& r : rows) {
      out << fmt::format("{},{},{:.9g},{},{}\n", r.scheme, r.metric, r.predicted,
                         r.monte_carlo ? fmt::format("{:.9g}", *r.monte_carlo) : "",
                         r.observed ? fmt::format("{:.9g}", *r.observed) : "");
    }
    if (!out) throw IoError("write failed", csv_path);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parameter-server SGD simulator: d-sgd, d-adam, cada, g-cada", "gcada"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  std::string config_path;
  const auto add_config = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "flat key=value file; flags override it");
  };

  auto* run_cmd = app.add_subcommand("run", "train one scheme and emit per-iteration CSV");
  ExperimentFlags run_flags;
  run_flags.attach(run_cmd);
  add_config(run_cmd);
  std::string run_out;
  run_cmd->add_option("--out", run_out, "per-iteration CSV path");

  auto* cmp_cmd = app.add_subcommand("compare", "run schemes on coupled compute times");
  ExperimentFlags cmp_flags;
  cmp_flags.attach(cmp_cmd);
  add_config(cmp_cmd);
  std::string cmp_schemes = "d-sgd,d-adam,cada,g-cada";
  std::string cmp_out;
  std::string cmp_summary;
  cmp_cmd->add_option("--schemes", cmp_schemes, "comma-separated schemes");
  cmp_cmd->add_option("--out", cmp_out, "directory for <scheme>.csv series");
  cmp_cmd->add_option("--summary", cmp_summary, "summary CSV path");

  auto* sweep_cmd = app.add_subcommand("sweep", "schemes x seeds, one summary row per run");
  ExperimentFlags sweep_flags;
  sweep_flags.attach(sweep_cmd);
  add_config(sweep_cmd);
  std::string sweep_schemes = "d-adam,cada,g-cada";
  std::string sweep_seeds = "1-20";
  std::string sweep_out;
  sweep_cmd->add_option("--schemes", sweep_schemes, "comma-separated schemes");
  sweep_cmd->add_option("--seeds", sweep_seeds, "range a-b or list a,b,c");
  sweep_cmd->add_option("--out", sweep_out, "summary CSV path");

  auto* an_cmd = app.add_subcommand("analyze", "closed-form predictions vs Monte Carlo");
  ExperimentFlags an_flags;
  an_flags.attach(an_cmd);
  add_config(an_cmd);
  std::size_t an_reps = 100000;
  std::string an_lag;
  std::string an_csv;
  an_cmd->add_option("--mc-reps", an_reps, "Monte Carlo replications");
  an_cmd->add_option("--lag-constants", an_lag, "comma-separated c_1..c_D (default c)");
  an_cmd->add_option("--csv", an_csv, "CSV output path");

  try {
    auto args = expand_config(argc, argv);
    std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  }

  try {
    if (*run_cmd) return cmd_run(run_flags, run_out);
    if (*cmp_cmd) return cmd_compare(cmp_flags, cmp_schemes, cmp_flags.build(Scheme::kGCada).seed,
                                     cmp_out, cmp_summary);
    if (*sweep_cmd) return cmd_sweep(sweep_flags, sweep_schemes, sweep_seeds, sweep_out);
    if (*an_cmd) return cmd_analyze(an_flags, an_reps, an_lag, an_csv);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitDiverged;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const FormatError& e) {
    std::cerr << "format error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ConsistencyError& e) {
    std::cerr << "consistency error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitOk;
}
