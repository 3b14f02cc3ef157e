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
#include <numeric>
#include <set>
#include <fstream>
#include <unistd.h>

#include "gcada/dataset.hpp"
#include "gcada/errors.hpp"
#include "gcada/loss.hpp"

using namespace gcada;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("gcada_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_raw(const std::string& path, const std::vector<unsigned char>& bytes) {
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

std::vector<unsigned char> be32(std::uint32_t v) {
  return {static_cast<unsigned char>(v >> 24), static_cast<unsigned char>(v >> 16),
          static_cast<unsigned char>(v >> 8), static_cast<unsigned char>(v)};
}

}  // namespace

TEST_CASE("IDX round trip reproduces pixels and labels") {
  TempDir tmp;
  const std::uint32_t count = 100, rows = 28, cols = 28;
  std::vector<std::uint8_t> pixels(count * rows * cols);
  std::vector<std::uint8_t> labels(count);
  for (std::size_t i = 0; i < pixels.size(); ++i) pixels[i] = static_cast<std::uint8_t>((i * 37) % 256);
  for (std::size_t i = 0; i < count; ++i) labels[i] = static_cast<std::uint8_t>(i % 10);
  write_idx(tmp.file("img"), tmp.file("lab"), pixels, labels, rows, cols);

  const Dataset d = load_idx(tmp.file("img"), tmp.file("lab"));
  CHECK(d.size() == 100);
  CHECK(d.dim() == 784);
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    REQUIRE(d.features()[i] == pixels[i] / 255.0);
  }
  for (std::size_t i = 0; i < count; ++i) REQUIRE(d.label(i) == labels[i]);
  const auto [lo, hi] = std::minmax_element(d.features().begin(), d.features().end());
  CHECK(*lo >= 0.0);
  CHECK(*hi <= 1.0);

  SUBCASE("limit truncates") {
    const Dataset small = load_idx(tmp.file("img"), tmp.file("lab"), 10);
    CHECK(small.size() == 10);
    CHECK(small.dim() == 784);
    CHECK(small.label(9) == 9.0);
  }
  SUBCASE("limit above the file count is ignored") {
    CHECK(load_idx(tmp.file("img"), tmp.file("lab"), 1000).size() == 100);
  }
}

TEST_CASE("IDX error paths") {
  TempDir tmp;
  std::vector<std::uint8_t> pixels(100 * 4, 7);
  std::vector<std::uint8_t> labels(100, 1);
  write_idx(tmp.file("img"), tmp.file("lab"), pixels, labels, 2, 2);

  SUBCASE("count mismatch") {
    std::vector<unsigned char> lab = be32(0x00000801);
    const auto n = be32(99);
    lab.insert(lab.end(), n.begin(), n.end());
    lab.resize(lab.size() + 99, 1);
    write_raw(tmp.file("lab99"), lab);
    CHECK_THROWS_AS(load_idx(tmp.file("img"), tmp.file("lab99")), ConsistencyError);
  }
  SUBCASE("bad magic") {
    CHECK_THROWS_AS(load_idx(tmp.file("lab"), tmp.file("lab")), FormatError);
    CHECK_THROWS_AS(load_idx(tmp.file("img"), tmp.file("img")), FormatError);
  }
  SUBCASE("truncated payload") {
    std::vector<unsigned char> img = be32(0x00000803);
    for (auto v : {100u, 2u, 2u}) {
      const auto b = be32(v);
      img.insert(img.end(), b.begin(), b.end());
    }
    img.resize(img.size() + 50, 0);
    write_raw(tmp.file("short"), img);
    CHECK_THROWS_AS(load_idx(tmp.file("short"), tmp.file("lab")), FormatError);
  }
  SUBCASE("truncated header") {
    write_raw(tmp.file("tiny"), {0, 0});
    CHECK_THROWS_AS(load_idx(tmp.file("tiny"), tmp.file("lab")), FormatError);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_idx(tmp.file("nope"), tmp.file("lab")), IoError);
  }
}

TEST_CASE("synthetic regression is deterministic and noiseless at the truth") {
  const auto a = synth_regression(4, 2, 0.0, 7);
  const auto b = synth_regression(4, 2, 0.0, 7);
  CHECK(std::equal(a.data.features().begin(), a.data.features().end(),
                   b.data.features().begin()));
  CHECK(std::equal(a.data.labels().begin(), a.data.labels().end(),
                   b.data.labels().begin()));
  CHECK(a.truth == b.truth);
  CHECK(global_loss(a.truth, a.data) == 0.0);

  const auto c = synth_regression(4, 2, 0.0, 8);
  CHECK_FALSE(std::equal(a.data.labels().begin(), a.data.labels().end(),
                         c.data.labels().begin()));
}

TEST_CASE("synthetic labels are centred") {
  const auto s = synth_regression(2000, 50, 0.1, 1);
  const auto y = s.data.labels();
  const double n = static_cast<double>(y.size());
  const double mean = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double var = 0.0;
  for (const double v : y) var += (v - mean) * (v - mean);
  const double sd = std::sqrt(var / (n - 1.0));
  CHECK(std::abs(mean) <= 3.0 * sd / std::sqrt(n));
}

TEST_CASE("synthetic preconditions") {
  CHECK_THROWS_AS(synth_regression(0, 2, 0.0, 1), ContractError);
  CHECK_THROWS_AS(synth_regression(2, 0, 0.0, 1), ContractError);
  CHECK_THROWS_AS(synth_regression(2, 2, -1.0, 1), ContractError);
}

TEST_CASE("dataset invariants") {
  CHECK_THROWS_AS(Dataset({}, {}, 2), ContractError);
  CHECK_THROWS_AS(Dataset({1.0, 2.0, 3.0}, {1.0, 2.0}, 2), ContractError);
  const Dataset d({1.0, 2.0, 3.0, 4.0}, {5.0, 6.0}, 2);
  const Dataset b = d.with_bias_column();
  CHECK(b.dim() == 3);
  CHECK(b.row(1)[0] == 3.0);
  CHECK(b.row(1)[2] == 1.0);
  CHECK(b.label(1) == 6.0);
}

TEST_CASE("per-worker-disjoint sharding") {
  const auto s = synth_regression(12, 3, 0.0, 1);
  const ShardingPlan p = shard(s.data, 12, 0, ShardMode::kPerWorkerDisjoint);
  CHECK(p.shards.size() == 12);
  CHECK(p.redundancy == 1);
  for (std::size_t m = 0; m < 12; ++m) {
    CHECK(p.shards[m].samples == std::vector<std::size_t>{m});
    CHECK(p.shards[m].owners == std::vector<std::size_t>{m});
    CHECK(p.shard_of_worker[m] == m);
  }
  CHECK_THROWS_AS(shard(synth_regression(10, 2, 0.0, 1).data, 3, 0,
                        ShardMode::kPerWorkerDisjoint),
                  ConfigError);
}

TEST_CASE("per-group-replicated sharding, M=12 G=3") {
  const auto s = synth_regression(12, 3, 0.0, 1);
  const ShardingPlan p = shard(s.data, 12, 3, ShardMode::kPerGroupReplicated);
  CHECK(p.shards.size() == 3);
  CHECK(p.redundancy == 4);
  for (const auto& sh : p.shards) {
    CHECK(sh.samples.size() == 4);
    CHECK(sh.owners.size() == 4);
  }
  CHECK_THROWS_AS(shard(s.data, 12, 5, ShardMode::kPerGroupReplicated), ConfigError);
  CHECK_THROWS_AS(shard(synth_regression(10, 2, 0.0, 1).data, 12, 3,
                        ShardMode::kPerGroupReplicated),
                  ConfigError);
}

TEST_CASE("sharding invariants over random sizes") {
  // Hand-rolled generator over (G, M_G, samples per shard).
  for (std::size_t g = 1; g <= 6; ++g) {
    for (std::size_t mg = 1; mg <= 5; ++mg) {
      for (std::size_t per = 1; per <= 4; ++per) {
        const std::size_t m = g * mg, n = g * per * mg;
        const auto data = synth_regression(n, 2, 0.0, g * 100 + mg).data;
        for (const auto mode : {ShardMode::kPerWorkerDisjoint, ShardMode::kPerGroupReplicated}) {
          const ShardingPlan p = shard(data, m, g, mode);
          std::vector<std::size_t> owners_per_sample(n, 0);
          std::vector<std::size_t> shards_per_worker(m, 0);
          std::set<std::size_t> seen;
          for (const auto& sh : p.shards) {
            REQUIRE_FALSE(sh.samples.empty());
            for (const auto i : sh.samples) {
              REQUIRE(seen.insert(i).second);  // pairwise disjoint
              owners_per_sample[i] += sh.owners.size();
            }
            for (const auto w : sh.owners) ++shards_per_worker[w];
          }
          REQUIRE(seen.size() == n);  // union is everything
          const std::size_t r = mode == ShardMode::kPerWorkerDisjoint ? 1 : mg;
          REQUIRE(p.redundancy == r);
          for (const auto c : owners_per_sample) REQUIRE(c == r);
          for (const auto c : shards_per_worker) REQUIRE(c == 1);
        }
      }
    }
  }
}
