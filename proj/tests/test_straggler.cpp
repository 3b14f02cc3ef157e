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
#include <numeric>
#include <vector>

#include "gcada/errors.hpp"
#include "gcada/kernels.hpp"
#include "gcada/straggler.hpp"

using namespace gcada;

namespace {

std::vector<std::size_t> iota_ids(std::size_t n) {
  std::vector<std::size_t> ids(n);
  std::iota(ids.begin(), ids.end(), 0);
  return ids;
}

std::vector<GroupDispatch> contiguous_groups(std::size_t groups, std::size_t size) {
  std::vector<GroupDispatch> out;
  for (std::size_t g = 0; g < groups; ++g) {
    GroupDispatch d{g, {}};
    for (std::size_t i = 0; i < size; ++i) d.members.push_back(g * size + i);
    out.push_back(d);
  }
  return out;
}

double harmonic(int n) {
  double h = 0.0;
  for (int i = 1; i <= n; ++i) h += 1.0 / i;
  return h;
}

}  // namespace

TEST_CASE("resolve_cada waits for every selected worker") {
  const WorkerTimes t{{0, 1.0}, {1, 3.0}, {2, 2.0}};
  const std::vector<std::size_t> sel{2, 0};
  const auto r = resolve_cada(t, sel);
  CHECK(r.wall_clock == 2.0);
  CHECK(r.uploaders == std::vector<std::size_t>{0, 2});
  CHECK(r.times.size() == 2);

  CHECK(resolve_cada(t, std::vector<std::size_t>{}).wall_clock == 0.0);
  CHECK_THROWS_AS(resolve_cada(t, std::vector<std::size_t>{7}), ContractError);
}

TEST_CASE("resolve_gcada takes the fastest member per group") {
  const WorkerTimes t{{0, 5.0}, {1, 1.0}, {2, 2.0}, {3, 2.0}};
  const auto groups = contiguous_groups(2, 2);
  const auto r = resolve_gcada(t, groups);
  CHECK(r.uploaders == std::vector<std::size_t>{1, 2});  // tie 2 vs 3 -> 2
  CHECK(r.wall_clock == 2.0);
  CHECK(r.times.size() == 4);  // every member was dispatched

  const std::vector<GroupDispatch> one{groups[0]};
  CHECK(resolve_gcada(t, one).wall_clock == 1.0);
  const std::vector<GroupDispatch> empty_group{{0, {}}};
  CHECK_THROWS_AS(resolve_gcada(t, empty_group), ContractError);
}

TEST_CASE("compute times are a deterministic function of (seed, k, m)") {
  const ComputeTimeModel a(1e-4, 42), b(1e-4, 42), c(1e-4, 43);
  const auto all = iota_ids(12);
  const std::vector<std::size_t> some{9, 3};
  for (std::uint64_t k = 0; k < 50; ++k) {
    const auto ta = a.sample_times(k, all);
    REQUIRE(ta == b.sample_times(k, all));
    REQUIRE(ta != c.sample_times(k, all));
    const auto ts = a.sample_times(k, some);
    REQUIRE(ts.at(3) == ta.at(3));
    REQUIRE(ts.at(9) == ta.at(9));
    for (const auto& [m, x] : ta) REQUIRE(x >= 0.0);
  }
  CHECK_THROWS_AS(ComputeTimeModel(0.0, 1), ConfigError);
  CHECK_THROWS_AS(ComputeTimeModel(-1.0, 1), ConfigError);
}

TEST_CASE("singleton groups reduce to the CADA resolution") {
  const ComputeTimeModel model(2.0, 7);
  const auto ids = iota_ids(8);
  const auto groups = contiguous_groups(8, 1);
  for (std::uint64_t k = 0; k < 100; ++k) {
    const auto t = model.sample_times(k, ids);
    const auto c = resolve_cada(t, ids);
    const auto g = resolve_gcada(t, groups);
    REQUIRE(c.wall_clock == g.wall_clock);
    REQUIRE(c.uploaders == g.uploaders);
  }
}

TEST_CASE("full G-CADA dispatch is never slower than full CADA dispatch") {
  const ComputeTimeModel model(1.0, 11);
  const auto ids = iota_ids(12);
  const auto groups = contiguous_groups(3, 4);
  for (std::uint64_t k = 0; k < 2000; ++k) {
    const auto t = model.sample_times(k, ids);
    REQUIRE(resolve_gcada(t, groups).wall_clock <= resolve_cada(t, ids).wall_clock);
  }
}

TEST_CASE("Monte Carlo wall-clock matches order-statistic expectations") {
  const double eta = 1e-4;
  const ComputeTimeModel model(eta, 2024);

  // 12 singleton groups: E[max of 12 Exp] = eta * H_12.
  const auto cada = kernels::omp::full_selection_wall_clock(model, 12, 1, 100000);
  CHECK(std::abs(cada.mean / (eta * harmonic(12)) - 1.0) < 0.02);

  // 3 groups of 4: E[max of 3 Exp(mean eta/4)] = eta/4 * H_3 = 11 eta / 24.
  const auto gcada = kernels::omp::full_selection_wall_clock(model, 3, 4, 100000);
  CHECK(std::abs(gcada.mean / (11.0 * eta / 24.0) - 1.0) < 0.02);
  CHECK(gcada.std_error > 0.0);
  CHECK(gcada.replications == 100000);
}
