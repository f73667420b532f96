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

#ifndef ARSROU_ARS_MIXTURE_HPP
#define ARSROU_ARS_MIXTURE_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "arsrou/bounds.hpp"
#include "arsrou/model.hpp"
#include "arsrou/random.hpp"
#include "arsrou/types.hpp"

namespace arsrou {

/// Density q(x) ∝ exp(-potential(x)) that can be integrated and sampled on
/// any sub-interval of its support.
class TruncatableDensity {
 public:
  virtual ~TruncatableDensity() = default;

  /// log of the unnormalized mass over `interval`.
  virtual double log_mass(const Interval& interval) const = 0;
  virtual double sample(const Interval& interval, Rng& rng) const = 0;
  virtual double potential(double x) const = 0;

  double mass(const Interval& interval) const;
};

/// q(x) ∝ exp(-rate * x), rate > 0, on intervals bounded below.
class ExponentialDensity final : public TruncatableDensity {
 public:
  explicit ExponentialDensity(double rate);

  /// Reads the rate off a term whose value is affine in x on the support;
  /// throws precondition otherwise.
  static ExponentialDensity from_term(const Term& term, const Interval& support);

  double rate() const { return rate_; }

  double log_mass(const Interval& interval) const override;
  double sample(const Interval& interval, Rng& rng) const override;
  double potential(double x) const override { return rate_ * x; }

 private:
  double rate_;
};

struct MixturePiece {
  LinearizedPotential bound;  // minorant of the reduced potential
  double log_mass = 0.0;      // log of the q-mass of the piece
  double alpha = 0.0;         // normalized weight

  const Interval& interval() const { return bound.interval; }
  double gamma() const { return bound.gamma; }
  double scale() const;          // L_k = exp(-gamma)
  double log_weight() const { return log_mass - bound.gamma; }  // log of L_k * mass
  double weight() const;         // unnormalized
};

struct MixtureProposal {
  std::vector<MixturePiece> pieces;
  std::vector<double> cumulative;  // running sum of alpha; last entry is 1
  double log_total_mass = 0.0;

  double total_mass() const;
  std::size_t piece_of(double x) const;
  /// Recomputes alpha and cumulative from the piece weights.
  void normalize();
};

/// Piecewise proposal L_k q(x) on the intervals induced by `supports`, with
/// L_k = exp(-gamma_k) bounding exp(-V_{-j}) on piece k. `reduced_terms` are
/// the model's terms without term j. Throws infinite_envelope when a piece
/// has no finite bound.
MixtureProposal build_proposal(const PotentialModel& model, std::size_t j,
                               const TruncatableDensity& q, const SupportSet& supports,
                               const BoundOptions& options = {});

struct ProposalDraw {
  double x;
  std::size_t piece;
};

ProposalDraw sample_proposal(const MixtureProposal& proposal, const TruncatableDensity& q,
                             Rng& rng);

/// Scheme-1 adaptive rejection sampler. Single-writer: the support set and
/// proposal change on every rejection.
class MixtureSampler {
 public:
  MixtureSampler(std::shared_ptr<const PotentialModel> model, std::size_t j,
                 std::shared_ptr<const TruncatableDensity> q, std::vector<double> supports,
                 BoundOptions options = {});

  /// Runs accept/reject until one candidate is accepted.
  double draw(Rng& rng);

  const AcceptanceStats& stats() const { return stats_; }
  const SupportSet& supports() const { return supports_; }
  const MixtureProposal& proposal() const { return proposal_; }
  /// Rejected candidates that were not inserted (duplicates or boundary points).
  std::uint64_t skipped_insertions() const { return skipped_; }
  std::uint64_t rejections() const { return rejections_; }

 private:
  void split_piece(std::size_t k, double x);

  std::shared_ptr<const PotentialModel> model_;
  std::size_t j_;
  std::shared_ptr<const TruncatableDensity> q_;
  std::vector<Term> reduced_terms_;
  BoundOptions options_;
  SupportSet supports_;
  MixtureProposal proposal_;
  AcceptanceStats stats_;
  std::uint64_t skipped_ = 0;
  std::uint64_t rejections_ = 0;
};

struct AdaptiveResult {
  std::vector<double> samples;
  AcceptanceStats stats;
  SupportSet supports;
};

AdaptiveResult adaptive_sample(std::shared_ptr<const PotentialModel> model, std::size_t j,
                               std::shared_ptr<const TruncatableDensity> q,
                               std::vector<double> initial_supports, std::size_t n, Rng& rng,
                               const BoundOptions& options = {});

}  // namespace arsrou

#endif  // ARSROU_ARS_MIXTURE_HPP
