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

#include "gcada/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>

#include "gcada/errors.hpp"
#include "gcada/rng.hpp"

namespace gcada {

namespace {

constexpr std::uint32_t kIdxImageMagic = 0x00000803;
constexpr std::uint32_t kIdxLabelMagic = 0x00000801;

std::uint32_t read_be32(std::istream& in, const std::string& path) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4)) {
    throw FormatError("truncated IDX header in " + path);
  }
  return (std::uint32_t{b[0]} << 24) | (std::uint32_t{b[1]} << 16) |
         (std::uint32_t{b[2]} << 8) | std::uint32_t{b[3]};
}

void write_be32(std::ostream& out, std::uint32_t v) {
  const char b[4] = {static_cast<char>(v >> 24), static_cast<char>(v >> 16),
                     static_cast<char>(v >> 8), static_cast<char>(v)};
  out.write(b, 4);
}

std::ifstream open_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open", path);
  return in;
}

}  // namespace

Dataset::Dataset(std::vector<double> features, std::vector<double> labels,
                 std::size_t dim)
    : features_(std::move(features)), labels_(std::move(labels)), dim_(dim) {
  if (labels_.empty()) throw ContractError("dataset must have N >= 1");
  if (dim_ == 0) throw ContractError("dataset must have d >= 1");
  if (features_.size() != labels_.size() * dim_) {
    throw ContractError("feature matrix is not N x d");
  }
}

Dataset Dataset::with_bias_column() const {
  const std::size_t n = size();
  std::vector<double> out;
  out.reserve(n * (dim_ + 1));
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = row(i);
    out.insert(out.end(), r.begin(), r.end());
    out.push_back(1.0);
  }
  return Dataset(std::move(out), labels_, dim_ + 1);
}

Dataset load_idx(const std::string& image_path, const std::string& label_path,
                 std::optional<std::size_t> limit) {
  auto images = open_binary(image_path);
  auto labels = open_binary(label_path);

  if (read_be32(images, image_path) != kIdxImageMagic) {
    throw FormatError("bad IDX image magic in " + image_path);
  }
  const std::uint32_t n_images = read_be32(images, image_path);
  const std::uint32_t rows = read_be32(images, image_path);
  const std::uint32_t cols = read_be32(images, image_path);
  if (rows == 0 || cols == 0) {
    throw FormatError("zero image dimension in " + image_path);
  }

  if (read_be32(labels, label_path) != kIdxLabelMagic) {
    throw FormatError("bad IDX label magic in " + label_path);
  }
  const std::uint32_t n_labels = read_be32(labels, label_path);
  if (n_images != n_labels) {
    throw ConsistencyError("image count " + std::to_string(n_images) +
                           " != label count " + std::to_string(n_labels));
  }

  std::size_t n = n_images;
  if (limit) n = std::min(n, *limit);
  if (n == 0) throw FormatError("IDX files contain no items");

  const std::size_t dim = std::size_t{rows} * cols;
  std::vector<unsigned char> pix(n * dim);
  if (!images.read(reinterpret_cast<char*>(pix.data()),
                   static_cast<std::streamsize>(pix.size()))) {
    throw FormatError("truncated IDX image payload in " + image_path);
  }
  std::vector<unsigned char> lab(n);
  if (!labels.read(reinterpret_cast<char*>(lab.data()),
                   static_cast<std::streamsize>(lab.size()))) {
    throw FormatError("truncated IDX label payload in " + label_path);
  }

  std::vector<double> features(pix.size());
  std::transform(pix.begin(), pix.end(), features.begin(),
                 [](unsigned char p) { return p / 255.0; });
  std::vector<double> targets(lab.begin(), lab.end());
  return Dataset(std::move(features), std::move(targets), dim);
}

void write_idx(const std::string& image_path, const std::string& label_path,
               std::span<const std::uint8_t> pixels,
               std::span<const std::uint8_t> labels, std::uint32_t rows,
               std::uint32_t cols) {
  if (pixels.size() != labels.size() * rows * cols) {
    throw ContractError("pixel buffer is not count x rows x cols");
  }
  std::ofstream img(image_path, std::ios::binary);
  if (!img) throw IoError("cannot write", image_path);
  write_be32(img, kIdxImageMagic);
  write_be32(img, static_cast<std::uint32_t>(labels.size()));
  write_be32(img, rows);
  write_be32(img, cols);
  img.write(reinterpret_cast<const char*>(pixels.data()),
            static_cast<std::streamsize>(pixels.size()));
  if (!img) throw IoError("write failed", image_path);

  std::ofstream lab(label_path, std::ios::binary);
  if (!lab) throw IoError("cannot write", label_path);
  write_be32(lab, kIdxLabelMagic);
  write_be32(lab, static_cast<std::uint32_t>(labels.size()));
  lab.write(reinterpret_cast<const char*>(labels.data()),
            static_cast<std::streamsize>(labels.size()));
  if (!lab) throw IoError("write failed", label_path);
}

SyntheticRegression synth_regression(std::size_t n, std::size_t dim,
                                     double noise_sd, std::uint64_t seed) {
  if (n == 0 || dim == 0) throw ContractError("synth_regression needs N, d >= 1");
  if (!(noise_sd >= 0.0)) throw ContractError("noise sd must be >= 0");

  const CounterRng rng(seed);
  std::vector<double> truth(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    truth[j] = rng.normal(StreamTag::kSynthTruth, 0, 0,
                          static_cast<std::uint32_t>(j));
  }

  std::vector<double> features(n * dim);
  std::vector<double> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    double dot = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      const double x =
          rng.normal(StreamTag::kSynthFeatures, static_cast<std::uint32_t>(i >> 32),
                     static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
      features[i * dim + j] = x;
      dot += x * truth[j];
    }
    double noise = 0.0;
    if (noise_sd > 0.0) {
      noise = noise_sd * rng.normal(StreamTag::kSynthNoise,
                                    static_cast<std::uint32_t>(i >> 32),
                                    static_cast<std::uint32_t>(i), 0);
    }
    labels[i] = dot + noise;
  }
  return {Dataset(std::move(features), std::move(labels), dim),
          std::move(truth)};
}

ShardingPlan shard(const Dataset& dataset, std::size_t workers,
                   std::size_t groups, ShardMode mode) {
  const std::size_t n = dataset.size();
  if (workers == 0) throw ConfigError("number of workers must be >= 1");

  ShardingPlan plan;
  plan.mode = mode;
  plan.shard_of_worker.assign(workers, 0);

  std::size_t num_shards = 0;
  std::size_t owners_per_shard = 0;
  if (mode == ShardMode::kPerWorkerDisjoint) {
    if (n % workers != 0) {
      throw ConfigError("N=" + std::to_string(n) + " is not divisible by M=" +
                        std::to_string(workers));
    }
    num_shards = workers;
    owners_per_shard = 1;
  } else {
    if (groups == 0 || workers % groups != 0) {
      throw ConfigError("M=" + std::to_string(workers) +
                        " is not divisible by G=" + std::to_string(groups));
    }
    if (n % groups != 0) {
      throw ConfigError("N=" + std::to_string(n) + " is not divisible by G=" +
                        std::to_string(groups));
    }
    num_shards = groups;
    owners_per_shard = workers / groups;
  }
  plan.redundancy = owners_per_shard;

  const std::size_t block = n / num_shards;
  plan.shards.resize(num_shards);
  for (std::size_t s = 0; s < num_shards; ++s) {
    auto& sh = plan.shards[s];
    sh.samples.resize(block);
    std::iota(sh.samples.begin(), sh.samples.end(), s * block);
    for (std::size_t o = 0; o < owners_per_shard; ++o) {
      const std::size_t w = s * owners_per_shard + o;
      sh.owners.push_back(w);
      plan.shard_of_worker[w] = s;
    }
  }
  return plan;
}

}  // namespace gcada
