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

#include "arsrou/pf.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "arsrou/error.hpp"
#include "arsrou/model.hpp"
#include "arsrou/rou.hpp"

namespace arsrou {

namespace {

void check_params(const SVParams& p) {
  if (!(p.sigma > 0.0) || !std::isfinite(p.sigma) || !std::isfinite(p.beta)) {
    throw Error(ErrorCode::precondition, "stochastic volatility needs finite beta and sigma > 0");
  }
}

double stationary_sd(const SVParams& p) {
  return std::abs(p.beta) < 1.0 ? p.sigma / std::sqrt(1.0 - p.beta * p.beta) : p.sigma;
}

}  // namespace

SVTrajectory simulate_sv(const SVParams& params, std::size_t steps, double x0, Rng& rng) {
  if (!(x0 > 0.0) || !std::isfinite(x0)) {
    throw Error(ErrorCode::precondition, "initial volatility must be positive");
  }
  if (!(params.sigma >= 0.0) || !std::isfinite(params.beta)) {
    throw Error(ErrorCode::precondition, "simulation needs finite beta and sigma >= 0");
  }
  SVTrajectory out;
  out.states.reserve(steps);
  out.observations.reserve(steps);
  double h = std::log(x0 * x0);
  for (std::size_t k = 0; k < steps; ++k) {
    h = params.beta * h + params.sigma * rng.normal();
    const double noise = rng.normal();
    out.states.push_back(std::exp(0.5 * h));
    out.observations.push_back(h + std::log(noise * noise));
  }
  return out;
}

double StepStats::acceptance_rate() const {
  return trials == 0 ? 1.0 : static_cast<double>(accepted) / static_cast<double>(trials);
}

std::vector<std::pair<std::size_t, std::size_t>> draw_ancestors(std::size_t population,
                                                                std::size_t n, Rng& rng) {
  if (population == 0) throw Error(ErrorCode::precondition, "empty particle population");
  std::vector<std::size_t> idx(n);
  for (auto& i : idx) i = rng.index(population);
  std::sort(idx.begin(), idx.end());
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  for (std::size_t i : idx) {
    if (!runs.empty() && runs.back().first == i) {
      ++runs.back().second;
    } else {
      runs.emplace_back(i, 1);
    }
  }
  return runs;
}

StepStats filter_step(ParticleSet& particles, double y, const SVParams& params, std::size_t n,
                      Rng& rng) {
  check_params(params);
  if (particles.particles.empty()) throw Error(ErrorCode::precondition, "empty particle set");
  if (!std::isfinite(y)) throw Error(ErrorCode::precondition, "observation must be finite");
  for (double x : particles.particles) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw Error(ErrorCode::precondition, "particles must be positive and finite");
    }
  }

  StepStats stats;
  std::vector<double> next;
  next.reserve(n);
  const auto ancestors = draw_ancestors(particles.particles.size(), n, rng);
  stats.ancestors = ancestors.size();
  for (const auto& [r, count] : ancestors) {
    const double prev = particles.particles[r];
    double alpha = params.beta * std::log(prev * prev);
    // (h - a)^2 / (2 s^2) + h / 2 equals a Gaussian in h centred at a - s^2 / 2.
    if (params.jacobian) alpha -= 0.5 * params.sigma * params.sigma;
    auto model = std::make_shared<const PotentialModel>(
        builtin_model("sv_step", {{"y", y}, {"alpha", alpha}, {"sigma", params.sigma}}));
    RouSampler sampler(model, sv_initial_supports(y, alpha));
    for (std::size_t i = 0; i < count; ++i) next.push_back(sampler.draw(rng));
    stats.accepted += count;
    stats.trials += sampler.stats().total_trials();
  }
  particles.particles = std::move(next);
  ++particles.time;
  return stats;
}

ParticleSet initial_particles(const SVParams& params, std::size_t n, Rng& rng) {
  check_params(params);
  ParticleSet set;
  set.particles.reserve(n);
  const double sd = stationary_sd(params);
  for (std::size_t i = 0; i < n; ++i) set.particles.push_back(std::exp(0.5 * sd * rng.normal()));
  return set;
}

FilterTrace run_filter(const SVParams& params, std::span<const double> observations,
                       std::size_t n, Rng& rng, std::span<const double> truth) {
  if (n == 0) throw Error(ErrorCode::precondition, "particle count must be >= 1");
  if (!truth.empty() && truth.size() != observations.size()) {
    throw Error(ErrorCode::precondition, "truth and observations differ in length");
  }
  FilterTrace trace;
  if (observations.empty()) return trace;
  ParticleSet set = initial_particles(params, n, rng);
  for (std::size_t k = 0; k < observations.size(); ++k) {
    const StepStats stats = filter_step(set, observations[k], params, n, rng);
    double mean = 0.0;
    for (double x : set.particles) mean += x;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double x : set.particles) var += (x - mean) * (x - mean);
    var /= static_cast<double>(n);
    trace.rows.push_back({k + 1, truth.empty() ? std::nan("") : truth[k], mean, std::sqrt(var),
                          stats.acceptance_rate()});
  }
  return trace;
}

std::vector<double> prior_propagation(const SVParams& params, std::size_t steps, std::size_t n,
                                      Rng& rng) {
  if (n == 0) throw Error(ErrorCode::precondition, "particle count must be >= 1");
  const double sd = stationary_sd(params);
  std::vector<double> h(n);
  for (auto& v : h) v = sd * rng.normal();
  std::vector<double> out;
  out.reserve(steps);
  for (std::size_t k = 0; k < steps; ++k) {
    double mean = 0.0;
    for (auto& v : h) {
      v = params.beta * v + params.sigma * rng.normal();
      mean += std::exp(0.5 * v);
    }
    out.push_back(mean / static_cast<double>(n));
  }
  return out;
}

double mean_squared_error(std::span<const double> estimate, std::span<const double> truth) {
  if (estimate.size() != truth.size() || estimate.empty()) {
    throw Error(ErrorCode::precondition, "MSE needs equal, nonempty sequences");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < estimate.size(); ++i) {
    s += (estimate[i] - truth[i]) * (estimate[i] - truth[i]);
  }
  return s / static_cast<double>(estimate.size());
}

}  // namespace arsrou
