// Copyright 2026 The arsrou Authors
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

#ifndef ARSROU_EXPERIMENTS_HPP
#define ARSROU_EXPERIMENTS_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "arsrou/bounds.hpp"
#include "arsrou/model.hpp"

namespace arsrou {

enum class Scheme { ars1, rou };

struct SamplerConfig {
  Scheme scheme = Scheme::rou;
  std::shared_ptr<const PotentialModel> model;
  std::size_t term = 0;  // Scheme 1: zero-based index of the proposal term
  double rho = 1.0;      // RoU only
  std::vector<double> supports;
  BoundOptions bounds;
};

struct SampleRun {
  std::vector<double> samples;
  std::vector<std::uint64_t> trials;
  std::size_t final_supports = 0;
};

/// One adaptive run of `n` samples from a fresh sampler seeded with `seed`.
SampleRun sample_run(const SamplerConfig& config, std::size_t n, std::uint64_t seed);

/// R_i = mean over runs of 1 / trials_i, i = 1..samples. Run r uses the
/// seed split_seed(seed, r); runs are spread over `threads` workers
/// (0 = hardware concurrency) and the result does not depend on it.
std::vector<double> acceptance_curve(const SamplerConfig& config, std::size_t runs,
                                     std::size_t samples, std::uint64_t seed,
                                     unsigned threads = 0);

}  // namespace arsrou

#endif  // ARSROU_EXPERIMENTS_HPP
