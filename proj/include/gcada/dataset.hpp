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

#ifndef GCADA_DATASET_HPP
#define GCADA_DATASET_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gcada {

// Dense regression dataset. Features are stored row-major (N x d).
// Immutable after construction.
class Dataset {
 public:
  Dataset(std::vector<double> features, std::vector<double> labels,
          std::size_t dim);

  std::size_t size() const { return labels_.size(); }
  std::size_t dim() const { return dim_; }

  std::span<const double> row(std::size_t n) const {
    return {features_.data() + n * dim_, dim_};
  }
  double label(std::size_t n) const { return labels_[n]; }

  std::span<const double> features() const { return features_; }
  std::span<const double> labels() const { return labels_; }

  // Copy with a constant 1.0 feature appended to every row (bias term).
  Dataset with_bias_column() const;

 private:
  std::vector<double> features_;
  std::vector<double> labels_;
  std::size_t dim_;
};

// Images are scaled to [0,1] by /255; the label is the digit value as a real.
Dataset load_idx(const std::string& image_path, const std::string& label_path,
                 std::optional<std::size_t> limit = std::nullopt);

// Writes an (images, labels) IDX pair. Features must already be integral
// values in [0,255]; they are stored as bytes. Used for round-trip tests and
// fixtures.
void write_idx(const std::string& image_path, const std::string& label_path,
               std::span<const std::uint8_t> pixels,
               std::span<const std::uint8_t> labels, std::uint32_t rows,
               std::uint32_t cols);

struct SyntheticRegression {
  Dataset data;
  std::vector<double> truth;  // ground-truth weights
};

// Standard normal features, labels = x . truth + N(0, noise_sd^2), all from
// the counter-based stream of `seed`.
SyntheticRegression synth_regression(std::size_t n, std::size_t dim,
                                     double noise_sd, std::uint64_t seed);

enum class ShardMode { kPerWorkerDisjoint, kPerGroupReplicated };

struct Shard {
  std::vector<std::size_t> owners;   // worker ids, ascending
  std::vector<std::size_t> samples;  // dataset row indices (0-based)
};

struct ShardingPlan {
  std::vector<Shard> shards;
  std::size_t redundancy = 1;
  ShardMode mode = ShardMode::kPerWorkerDisjoint;
  std::vector<std::size_t> shard_of_worker;

  std::size_t num_workers() const { return shard_of_worker.size(); }
};

// Contiguous block sharding. Per-worker-disjoint ignores `groups` and needs
// M | N; per-group-replicated needs G | M and G | N and gives r = M / G.
ShardingPlan shard(const Dataset& dataset, std::size_t workers,
                   std::size_t groups, ShardMode mode);

}  // namespace gcada

#endif  // GCADA_DATASET_HPP
