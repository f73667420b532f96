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

#include "arsrou/ars_mixture.hpp"

#include <algorithm>
#include <cmath>

#include "arsrou/error.hpp"

namespace arsrou {

namespace {

constexpr double kRatioSlack = 1e-6;

double log_sum_exp(const std::vector<double>& xs) {
  double m = -kInf;
  for (double x : xs) m = std::max(m, x);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double x : xs) s += std::exp(x - m);
  return m + std::log(s);
}

// Probe abscissae spread over the support, for shape checks on q.
std::vector<double> probe_points(const Interval& support) {
  double base = 0.0;
  if (std::isfinite(support.lo)) {
    base = support.lo;
  } else if (std::isfinite(support.hi)) {
    base = support.hi - 3.0;
  }
  std::vector<double> out;
  for (double off : {0.0, 0.5, 1.0, 2.0, 3.0}) {
    const double x = base + off;
    if (support.contains(x)) out.push_back(x);
  }
  return out;
}

bool same_up_to_constant(const std::function<double(double)>& f,
                         const std::function<double(double)>& g, const Interval& support) {
  const auto xs = probe_points(support);
  if (xs.size() < 2) return true;
  const double c0 = f(xs[0]) - g(xs[0]);
  for (double x : xs) {
    const double fx = f(x), gx = g(x);
    const double c = fx - gx;
    if (!std::isfinite(c) || std::abs(c - c0) > 1e-8 * (1.0 + std::abs(fx) + std::abs(gx))) {
      return false;
    }
  }
  return true;
}

std::vector<Term> without(std::span<const Term> terms, std::size_t j) {
  std::vector<Term> out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i != j) out.push_back(terms[i]);
  }
  return out;
}

MixturePiece make_piece(LinearizedPotential bound, const TruncatableDensity& q) {
  if (!bound.finite()) {
    throw Error(ErrorCode::infinite_envelope,
                "reduced potential has no finite lower bound on [" +
                    std::to_string(bound.interval.lo) + ", " + std::to_string(bound.interval.hi) +
                    "]; choose another proposal term");
  }
  const double log_mass = q.log_mass(bound.interval);
  if (!(log_mass < kInf)) {
    throw Error(ErrorCode::infinite_envelope, "proposal density has infinite mass on a piece");
  }
  return {std::move(bound), log_mass, 0.0};
}

}  // namespace

double TruncatableDensity::mass(const Interval& interval) const {
  return std::exp(log_mass(interval));
}

ExponentialDensity::ExponentialDensity(double rate) : rate_(rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw Error(ErrorCode::precondition, "exponential density needs a finite rate > 0");
  }
}

ExponentialDensity ExponentialDensity::from_term(const Term& term, const Interval& support) {
  if (!std::isfinite(support.lo)) {
    throw Error(ErrorCode::precondition, "exponential proposal needs a finite lower support end");
  }
  const double x0 = support.lo;
  const double rate = term(x0 + 1.0) - term(x0);
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw Error(ErrorCode::precondition, "term is not an increasing linear potential");
  }
  const ExponentialDensity q(rate);
  if (!same_up_to_constant([&](double x) { return term(x); },
                           [&](double x) { return q.potential(x); }, support)) {
    throw Error(ErrorCode::precondition, "term is not linear in x on the support");
  }
  return q;
}

double ExponentialDensity::log_mass(const Interval& interval) const {
  if (!std::isfinite(interval.lo)) return kInf;
  const double width = interval.hi - interval.lo;
  return -rate_ * interval.lo + std::log(-std::expm1(-rate_ * width)) - std::log(rate_);
}

double ExponentialDensity::sample(const Interval& interval, Rng& rng) const {
  const double w = -std::expm1(-rate_ * (interval.hi - interval.lo));
  const double x = interval.lo - std::log1p(-rng.uniform() * w) / rate_;
  return std::clamp(x, interval.lo, interval.hi);
}

double MixturePiece::scale() const { return std::exp(-bound.gamma); }
double MixturePiece::weight() const { return std::exp(log_weight()); }

double MixtureProposal::total_mass() const { return std::exp(log_total_mass); }

std::size_t MixtureProposal::piece_of(double x) const {
  auto it = std::upper_bound(pieces.begin(), pieces.end(), x,
                             [](double v, const MixturePiece& p) { return v < p.interval().hi; });
  if (it == pieces.end()) return pieces.empty() ? 0 : pieces.size() - 1;
  return static_cast<std::size_t>(it - pieces.begin());
}

void MixtureProposal::normalize() {
  std::vector<double> lw;
  lw.reserve(pieces.size());
  for (const auto& p : pieces) lw.push_back(p.log_weight());
  log_total_mass = log_sum_exp(lw);
  cumulative.resize(pieces.size());
  double run = 0.0;
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    pieces[k].alpha = std::exp(lw[k] - log_total_mass);
    run += pieces[k].alpha;
    cumulative[k] = run;
  }
  if (!cumulative.empty()) cumulative.back() = 1.0;
}

MixtureProposal build_proposal(const PotentialModel& model, std::size_t j,
                               const TruncatableDensity& q, const SupportSet& supports,
                               const BoundOptions& options) {
  if (j >= model.size()) {
    throw Error(ErrorCode::index, "proposal term index " + std::to_string(j) + " out of range");
  }
  const Term& term = model.terms()[j];
  if (!same_up_to_constant([&](double x) { return term(x); },
                           [&](double x) { return q.potential(x); }, model.support())) {
    throw Error(ErrorCode::precondition, "proposal density does not match the chosen term");
  }
  const auto reduced = without(model.terms(), j);
  MixtureProposal out;
  for (const auto& iv : partition(model.support(), supports)) {
    out.pieces.push_back(
        make_piece(build_linearized(reduced, iv, AuxKind::base, 1.0, options), q));
  }
  out.normalize();
  return out;
}

ProposalDraw sample_proposal(const MixtureProposal& proposal, const TruncatableDensity& q,
                             Rng& rng) {
  const double u = rng.uniform();
  auto it = std::upper_bound(proposal.cumulative.begin(), proposal.cumulative.end(), u);
  auto k = static_cast<std::size_t>(it - proposal.cumulative.begin());
  k = std::min(k, proposal.pieces.size() - 1);
  return {q.sample(proposal.pieces[k].interval(), rng), k};
}

MixtureSampler::MixtureSampler(std::shared_ptr<const PotentialModel> model, std::size_t j,
                               std::shared_ptr<const TruncatableDensity> q,
                               std::vector<double> supports, BoundOptions options)
    : model_(std::move(model)),
      j_(j),
      q_(std::move(q)),
      options_(options),
      supports_(std::move(supports)) {
  if (!model_ || !q_) throw Error(ErrorCode::precondition, "null model or proposal density");
  proposal_ = build_proposal(*model_, j_, *q_, supports_, options_);
  reduced_terms_ = without(model_->terms(), j_);
}

double MixtureSampler::draw(Rng& rng) {
  std::uint64_t trials = 0;
  const double max_log_ratio = std::log1p(kRatioSlack);
  for (;;) {
    ++trials;
    const ProposalDraw d = sample_proposal(proposal_, *q_, rng);
    const double gamma = proposal_.pieces[d.piece].gamma();
    const double log_ratio = gamma - model_->reduced_potential_unchecked(j_, d.x);
    if (log_ratio > max_log_ratio) {
      throw Error(ErrorCode::invariant_violation,
                  "acceptance ratio " + std::to_string(std::exp(log_ratio)) + " above 1 at x = " +
                      std::to_string(d.x));
    }
    if (std::log(rng.uniform_open()) <= log_ratio) {
      stats_.trials_per_accept.push_back(trials);
      return d.x;
    }
    ++rejections_;
    split_piece(d.piece, d.x);
  }
}

void MixtureSampler::split_piece(std::size_t k, double x) {
  const Interval iv = proposal_.pieces[k].interval();
  const bool interior = x > iv.lo && x < iv.hi && well_separated(x, iv.lo) &&
                        well_separated(x, iv.hi);
  if (!interior || !supports_.insert(x)) {
    ++skipped_;
    return;
  }
  const LinearizedPotential& parent = proposal_.pieces[k].bound;
  MixturePiece left = make_piece(
      refine_linearized(reduced_terms_, parent, Interval(iv.lo, x), options_), *q_);
  MixturePiece right = make_piece(
      refine_linearized(reduced_terms_, parent, Interval(x, iv.hi), options_), *q_);
  proposal_.pieces[k] = std::move(left);
  proposal_.pieces.insert(proposal_.pieces.begin() + static_cast<std::ptrdiff_t>(k) + 1,
                          std::move(right));
  proposal_.normalize();
}

AdaptiveResult adaptive_sample(std::shared_ptr<const PotentialModel> model, std::size_t j,
                               std::shared_ptr<const TruncatableDensity> q,
                               std::vector<double> initial_supports, std::size_t n, Rng& rng,
                               const BoundOptions& options) {
  if (n == 0) throw Error(ErrorCode::precondition, "sample count must be >= 1");
  MixtureSampler sampler(std::move(model), j, std::move(q), std::move(initial_supports), options);
  AdaptiveResult out;
  out.samples.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.samples.push_back(sampler.draw(rng));
  out.stats = sampler.stats();
  out.supports = sampler.supports();
  return out;
}

}  // namespace arsrou
