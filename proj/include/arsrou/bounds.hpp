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

#ifndef ARSROU_BOUNDS_HPP
#define ARSROU_BOUNDS_HPP

// Interval-wise convex minorants of generalized potentials.
//
// On an interval every nonlinearity g_i is replaced by an affine r_i with
// Vbar_i(r_i(x)) <= Vbar_i(g_i(x)). The resulting modified potential is
// convex, so any tangent line w to it is a global minorant on the interval
// and gamma = min(w(lo), w(hi)) lower-bounds the true potential there.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "arsrou/model.hpp"
#include "arsrou/types.hpp"

namespace arsrou {

/// Coordinate the minorant is built in. `log` means z = log(x) and is used
/// on nonnegative intervals when every nonlinearity is affine-or-curved in
/// log(x) (declared through Nonlinearity::log_form).
enum class Coordinate { linear, log };

struct BoundOptions {
  /// Golden-section minimization (20 iterations) of the modified potential
  /// on finite intervals before taking the tangent.
  bool golden_section = false;
  bool allow_log_coordinate = true;
  /// Explicit tangent anchor in the working coordinate.
  std::optional<double> anchor;
};

struct ConvexFn {
  ScalarFn value;
  ScalarFn derivative;
};

struct LowerBound {
  LinearFn tangent;
  double anchor = 0.0;
  /// -inf when the tangent does not bound the interval from below.
  double gamma = -kInf;
};

/// r with Vbar(r(x)) <= Vbar(g(x)) on `interval` (in the coordinate `g` is
/// written in). Falls back to the constant argmin, which is always sound.
LinearFn linearize_term(const MarginalPotential& marginal, const Nonlinearity& g,
                        const Interval& interval);

/// gamma = min(w(lo), w(hi)) for the tangent w of `m` at `anchor`.
/// Infinite ends contribute -inf unless w ascends toward them.
LowerBound lower_bound(const ConvexFn& m, const Interval& interval, double anchor);

struct LinearizedPotential {
  Interval interval;  // in x
  Coordinate coordinate = Coordinate::linear;
  AuxKind aux = AuxKind::base;
  double rho = 1.0;
  std::vector<LinearFn> replacements;  // one per term, in `coordinate`
  LinearFn tangent;                    // in `coordinate`
  double anchor = 0.0;                 // in `coordinate`
  double gamma = -kInf;

  double to_coordinate(double x) const;
  bool finite() const;
};

/// Minorant of the potential selected by `aux` over `interval` for the sum
/// of `terms`. Empty `terms` gives V = 0.
LinearizedPotential build_linearized(std::span<const Term> terms, const Interval& interval,
                                     AuxKind aux, double rho,
                                     const BoundOptions& options = {});

LinearizedPotential build_linearized(const PotentialModel& model, const Interval& interval,
                                     AuxKind aux, double rho,
                                     const BoundOptions& options = {});

/// Modified potential of `lp` evaluated at x (in x units).
double modified_potential(std::span<const Term> terms, const LinearizedPotential& lp, double x);

/// Rebuilds the bound on a sub-interval of `parent.interval`. The child's
/// gamma never drops below the parent's, which is still valid on the subset.
LinearizedPotential refine_linearized(std::span<const Term> terms,
                                      const LinearizedPotential& parent,
                                      const Interval& child,
                                      const BoundOptions& options = {});

/// Upper bounds on the RoU region over one sign-pure interval:
/// u_bound >= sup p^{1/(rho+1)}, v_bound >= sup |x| p^{rho/(rho+1)}.
struct RouBounds {
  LinearizedPotential height;  // u_bound potential
  LinearizedPotential width;   // v_bound potential (pos or neg)

  double log_u_bound() const { return -height.gamma; }
  double log_v_bound() const { return -width.gamma; }
  double u_bound() const;
  double v_bound() const;
};

/// Throws unbounded_region when either bound is infinite.
RouBounds rou_bounds(const PotentialModel& model, const Interval& interval, double rho,
                     const BoundOptions& options = {});

/// Refinement counterpart of rou_bounds (see refine_linearized).
RouBounds refine_rou_bounds(const PotentialModel& model, const RouBounds& parent,
                            const Interval& child, const BoundOptions& options = {});

}  // namespace arsrou

#endif  // ARSROU_BOUNDS_HPP
