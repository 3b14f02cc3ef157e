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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gcada/errors.hpp"
#include "gcada/simulation.hpp"
#include "gcada/straggler.hpp"

using namespace gcada;

namespace {

ExperimentConfig cfg_for(Scheme s) {
  auto cfg = ExperimentConfig::defaults_for(s);
  cfg.max_iterations = 300;
  return cfg;
}

const Dataset& default_data() {
  static const Dataset data = make_dataset(DatasetSpec{});
  return data;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("gcada_test_" + name);
}

}  // namespace

TEST_CASE("single-worker d-adam iteration") {
  auto cfg = cfg_for(Scheme::kDistributedAdam);
  cfg.workers = 1;
  cfg.max_iterations = 1;
  const auto r = run(cfg, default_data());
  REQUIRE(r.records.size() == 1);
  CHECK(r.records[0].comm_iter == 2);
  CHECK(r.records[0].comp_iter == cfg.batch);
  CHECK(r.records[0].t_iter == ComputeTimeModel(cfg.eta, cfg.seed).time(0, 0));
  CHECK(r.summary.iterations == 1);
}

TEST_CASE("G-CADA with singleton groups reproduces CADA") {
  auto cada = cfg_for(Scheme::kCada);
  auto g = cfg_for(Scheme::kGCada);
  g.groups = g.workers;
  g.c = cada.c;
  const auto a = run(cada, default_data());
  const auto b = run(g, default_data());
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t k = 0; k < a.records.size(); ++k) {
    REQUIRE(a.records[k].t_iter == b.records[k].t_iter);
    REQUIRE(a.records[k].n_dispatch == b.records[k].n_dispatch);
    REQUIRE(a.records[k].loss == b.records[k].loss);
  }
}

TEST_CASE("metrics match independently counted dispatch and upload sets") {
  for (const Scheme s : {Scheme::kDistributedSgd, Scheme::kDistributedAdam, Scheme::kCada,
                         Scheme::kGCada}) {
    const auto cfg = cfg_for(s);
    std::vector<std::size_t> dispatched, uploaded, selected;
    std::vector<double> wall;
    const auto r = run(cfg, default_data(), [&](const IterationTrace& t) {
      dispatched.push_back(t.timing->times.size());
      uploaded.push_back(t.timing->uploaders.size());
      selected.push_back(t.selection.size());
      wall.push_back(t.timing->wall_clock);
    });
    REQUIRE(r.records.size() == dispatched.size());
    std::size_t comm = 0, comp = 0;
    double t = 0.0;
    for (std::size_t k = 0; k < r.records.size(); ++k) {
      const auto& rec = r.records[k];
      CAPTURE(k);
      REQUIRE(rec.k == k);
      REQUIRE(rec.n_dispatch == dispatched[k]);
      REQUIRE(rec.n_upload == uploaded[k]);
      REQUIRE(rec.comm_iter == dispatched[k] + uploaded[k]);
      REQUIRE(rec.comp_iter == dispatched[k] * cfg.batch);
      comm += rec.comm_iter;
      comp += rec.comp_iter;
      t += wall[k];
      REQUIRE(rec.comm_cum == comm);
      REQUIRE(rec.comp_cum == comp);
      REQUIRE(rec.t_cum == t);
      if (k > 0) REQUIRE(rec.t_cum >= r.records[k - 1].t_cum);

      switch (s) {
        case Scheme::kCada:
          REQUIRE(rec.n_upload == rec.n_dispatch);
          REQUIRE(rec.n_dispatch == selected[k]);
          break;
        case Scheme::kGCada:
          REQUIRE(rec.n_upload == selected[k]);
          REQUIRE(rec.n_dispatch == cfg.group_size() * selected[k]);
          break;
        default:
          REQUIRE(rec.n_dispatch == cfg.workers);
          REQUIRE(rec.n_upload == cfg.workers);
      }
    }
    CHECK(r.summary.reached());
    CHECK(r.summary.comm_to_threshold == r.records.back().comm_cum);
    CHECK(r.summary.time_to_threshold == r.records.back().t_cum);
    CHECK(r.records.back().loss <= cfg.loss_threshold);
  }
}

TEST_CASE("the first iteration dispatches every unit") {
  for (const Scheme s : {Scheme::kCada, Scheme::kGCada}) {
    const auto cfg = cfg_for(s);
    bool checked = false;
    run(cfg, default_data(), [&](const IterationTrace& t) {
      if (t.k != 0) return;
      CHECK(t.selection.size() == cfg.num_units());
      checked = true;
    });
    CHECK(checked);
  }
}

TEST_CASE("no unit waits longer than D iterations") {
  auto cfg = cfg_for(Scheme::kGCada);
  cfg.c = 1e6;  // skip whenever allowed
  cfg.max_delay = 4;
  cfg.max_iterations = 40;
  cfg.loss_threshold = 0.0;
  run(cfg, default_data(), [&](const IterationTrace& t) {
    for (std::size_t u = 0; u < t.aoi.size(); ++u) {
      REQUIRE(t.aoi[u] <= cfg.max_delay);
      if (t.k > 0) REQUIRE(t.selection.contains(u) == (t.aoi[u] == cfg.max_delay));
    }
  });
}

TEST_CASE("50-iteration moving average of the loss decreases") {
  for (const Scheme s : {Scheme::kDistributedSgd, Scheme::kDistributedAdam, Scheme::kCada,
                         Scheme::kGCada}) {
    auto cfg = cfg_for(s);
    cfg.loss_threshold = 1e-4;
    cfg.max_iterations = 2000;
    if (s == Scheme::kDistributedSgd) cfg.lr = 2e-5;  // long enough to average
    const auto r = run(cfg, default_data());
    REQUIRE(r.summary.reached());
    REQUIRE(r.records.size() > 60);
    double prev = INFINITY;
    for (std::size_t i = 0; i + 50 <= r.records.size(); ++i) {
      double avg = 0.0;
      for (std::size_t j = i; j < i + 50; ++j) avg += r.records[j].loss;
      avg /= 50.0;
      REQUIRE(avg < prev);
      prev = avg;
    }
  }
}

TEST_CASE("CSV layout") {
  const std::string header =
      "k,t_iter,t_cum,n_dispatch,n_upload,comm_iter,comm_cum,comp_iter,comp_cum,loss\n";
  CHECK(format_csv({}) == header);

  auto cfg = cfg_for(Scheme::kGCada);
  cfg.max_iterations = 3;
  cfg.loss_threshold = 0.0;
  const auto csv = format_csv(run(cfg, default_data()).records);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  CHECK(csv.find('\r') == std::string::npos);
  CHECK(csv.rfind(header, 0) == 0);

  MetricsRecord rec;
  rec.t_iter = 1.0 / 3.0;
  rec.t_cum = 2.0 / 3.0;
  rec.loss = 123456.789012345;
  const auto line = format_csv({rec}).substr(header.size());
  CHECK(line == "0,0.333333333,0.666666667,0,0,0,0,0,0,123456.789\n");

  rec.loss = NAN;
  CHECK(format_csv({rec}).substr(header.size()).find("nan") != std::string::npos);
}

TEST_CASE("same config twice gives byte-identical CSV files") {
  const auto cfg = cfg_for(Scheme::kCada);
  const auto a = temp_path("a.csv"), b = temp_path("b.csv");
  emit_csv(run(cfg).records, a.string());
  emit_csv(run(cfg).records, b.string());
  const auto sa = read_file(a);
  CHECK(!sa.empty());
  CHECK(sa == read_file(b));
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST_CASE("CSV to an unwritable path raises IoError with the path") {
  const std::string bad = "/nonexistent-dir/out.csv";
  try {
    emit_csv({}, bad);
    FAIL("expected IoError");
  } catch (const IoError& e) {
    CHECK(e.path() == bad);
  }
  CHECK_THROWS_AS(emit_summary_csv({}, bad), IoError);
}

TEST_CASE("divergence is reported, not thrown") {
  auto cfg = cfg_for(Scheme::kDistributedSgd);
  cfg.lr = 2.6;
  const auto r = run(cfg, default_data());
  CHECK(r.summary.diverged);
  CHECK_FALSE(r.summary.reached());
  CHECK_FALSE(r.summary.diagnostic.empty());
  CHECK(r.summary.iterations < cfg.max_iterations);
}

TEST_CASE("threshold fields stay empty when the threshold is not reached") {
  auto cfg = cfg_for(Scheme::kDistributedAdam);
  cfg.max_iterations = 5;
  const auto r = run(cfg, default_data());
  CHECK_FALSE(r.summary.reached());
  CHECK_FALSE(r.summary.comm_to_threshold.has_value());
  CHECK_FALSE(r.summary.iterations_to_threshold.has_value());
  CHECK(r.summary.iterations == 5);
  CHECK(std::isfinite(r.summary.final_loss));
}

TEST_CASE("compare: reference configs respect per-iteration communication bounds") {
  std::vector<ExperimentConfig> cfgs;
  for (const Scheme s : {Scheme::kDistributedSgd, Scheme::kDistributedAdam, Scheme::kCada,
                         Scheme::kGCada}) {
    cfgs.push_back(cfg_for(s));
  }
  const auto results = compare(cfgs, 5);
  REQUIRE(results.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(results[i].summary.config.scheme == cfgs[i].scheme);
    CHECK(results[i].summary.config.seed == 5);
  }
  for (const auto& rec : results[1].records) REQUIRE(rec.comm_iter == 24);
  for (const auto& rec : results[2].records) REQUIRE(rec.comm_iter <= 24);
  for (const auto& rec : results[3].records) REQUIRE(rec.comm_iter <= 15);

  // Coupled randomness: the full-dispatch schemes see the same times.
  for (std::size_t k = 0; k < std::min(results[0].records.size(), results[1].records.size());
       ++k) {
    REQUIRE(results[0].records[k].t_iter == results[1].records[k].t_iter);
  }

  cfgs[1].eta = 2e-4;
  CHECK_THROWS_AS(compare(cfgs, 5), ConfigError);
}

TEST_CASE("sweep orders results by config then seed") {
  auto a = cfg_for(Scheme::kDistributedAdam);
  auto b = cfg_for(Scheme::kGCada);
  const auto s = sweep({a, b}, {3, 4, 5});
  REQUIRE(s.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(s[i].config.scheme == (i < 3 ? Scheme::kDistributedAdam : Scheme::kGCada));
    CHECK(s[i].config.seed == 3 + i % 3);
  }
  const auto csv = format_summary_csv(s);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
}

TEST_CASE("invalid configurations are rejected") {
  auto cfg = cfg_for(Scheme::kGCada);
  cfg.groups = 5;
  CHECK_THROWS_AS(run(cfg), ConfigError);
  cfg = cfg_for(Scheme::kCada);
  cfg.lr = 0.0;
  CHECK_THROWS_AS(run(cfg), ConfigError);
  cfg = cfg_for(Scheme::kCada);
  cfg.eta = -1.0;
  CHECK_THROWS_AS(run(cfg), ConfigError);
  cfg = cfg_for(Scheme::kCada);
  cfg.workers = 7;  // 2400 samples do not split into 7 shards
  CHECK_THROWS_AS(run(cfg), ConfigError);
}
