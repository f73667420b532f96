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

#include "arsrou/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "arsrou/ars_mixture.hpp"
#include "arsrou/error.hpp"
#include "arsrou/random.hpp"
#include "arsrou/rou.hpp"

namespace arsrou {

namespace {

std::vector<double> initial_supports(const SamplerConfig& c) {
  if (!c.supports.empty()) return c.supports;
  const auto s = c.model->suggested_supports();
  return {s.begin(), s.end()};
}

}  // namespace

SampleRun sample_run(const SamplerConfig& config, std::size_t n, std::uint64_t seed) {
  if (!config.model) throw Error(ErrorCode::precondition, "sampler config has no model");
  Rng rng(seed);
  SampleRun out;
  out.samples.reserve(n);
  if (config.scheme == Scheme::ars1) {
    if (config.term >= config.model->size()) {
      throw Error(ErrorCode::index, "proposal term index out of range");
    }
    auto q = std::make_shared<const ExponentialDensity>(ExponentialDensity::from_term(
        config.model->terms()[config.term], config.model->support()));
    MixtureSampler sampler(config.model, config.term, q, initial_supports(config), config.bounds);
    for (std::size_t i = 0; i < n; ++i) out.samples.push_back(sampler.draw(rng));
    out.trials = sampler.stats().trials_per_accept;
    out.final_supports = sampler.supports().size();
  } else {
    RouOptions opts;
    opts.rho = config.rho;
    opts.bounds = config.bounds;
    RouSampler sampler(config.model, initial_supports(config), opts);
    for (std::size_t i = 0; i < n; ++i) out.samples.push_back(sampler.draw(rng));
    out.trials = sampler.stats().trials_per_accept;
    out.final_supports = sampler.supports().size();
  }
  return out;
}

std::vector<double> acceptance_curve(const SamplerConfig& config, std::size_t runs,
                                     std::size_t samples, std::uint64_t seed, unsigned threads) {
  if (runs == 0 || samples == 0) {
    throw Error(ErrorCode::precondition, "runs and samples must be >= 1");
  }
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, runs));

  // Per-run reciprocals are kept so the final sum has a fixed order.
  std::vector<std::vector<double>> inverse(runs);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t r = next.fetch_add(1);
      if (r >= runs) return;
      try {
        const SampleRun run = sample_run(config, samples, split_seed(seed, r));
        auto& inv = inverse[r];
        inv.reserve(samples);
        for (auto t : run.trials) inv.push_back(1.0 / static_cast<double>(t));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = runs;
        return;
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<double> curve(samples, 0.0);
  for (const auto& inv : inverse) {
    for (std::size_t i = 0; i < samples; ++i) curve[i] += inv[i];
  }
  for (auto& c : curve) c /= static_cast<double>(runs);
  return curve;
}

}  // namespace arsrou
