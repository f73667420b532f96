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

#ifndef ARSROU_MODEL_HPP
#define ARSROU_MODEL_HPP

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "arsrou/types.hpp"

namespace arsrou {

using ScalarFn = std::function<double(double)>;

enum class Curvature { convex, concave, linear };

const char* to_string(Curvature c) noexcept;

/// Convex scalar function with a known minimizer. Outside `domain` the
/// value is +inf, which keeps the extended function convex.
struct MarginalPotential {
  std::string name;
  ScalarFn value;
  ScalarFn derivative;
  double argmin = 0.0;
  double min_value = 0.0;
  Interval domain = Interval::real_line();

  double operator()(double t) const;
  double slope(double t) const;
};

/// Convex, concave or affine map from x to the marginal's argument.
///
/// `slope_at_lo` / `slope_at_hi` are the limits of the derivative at the
/// infinite ends of the domain (NaN when unknown); they let the bound
/// construction handle half-infinite intervals without probing.
///
/// `log_form`, when present, is the same map written in z = log(x) for
/// x > 0, i.e. g(x) = log_form(log x), with its own curvature in z.
struct Nonlinearity {
  std::string name;
  ScalarFn value;
  ScalarFn derivative;
  Curvature curvature = Curvature::linear;
  double slope_at_lo = std::numeric_limits<double>::quiet_NaN();
  double slope_at_hi = std::numeric_limits<double>::quiet_NaN();
  std::shared_ptr<const Nonlinearity> log_form;

  double operator()(double x) const { return value(x); }
};

struct Term {
  MarginalPotential marginal;
  Nonlinearity nonlinearity;

  double operator()(double x) const { return marginal(nonlinearity(x)); }
};

/// Which potential a bound or evaluation refers to.
///   base        V
///   u_bound     V / (rho + 1)                 (height of the RoU region)
///   v_bound_pos rho V / (rho + 1) - log(x)    (x > 0)
///   v_bound_neg rho V / (rho + 1) - log(-x)   (x < 0)
enum class AuxKind { base = 0, u_bound = 1, v_bound_pos = 2, v_bound_neg = 3 };

/// Potentials above this value are treated as +inf (density exactly 0).
inline constexpr double kPotentialCap = 700.0;

/// Target density p(x) = exp(-V(x)) with V(x) = sum_i Vbar_i(g_i(x)).
/// Immutable once built.
class PotentialModel {
 public:
  PotentialModel(std::vector<Term> terms, Interval support,
                 std::vector<double> suggested_supports = {});

  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  const Interval& support() const { return support_; }
  bool contains(double x) const { return support_.contains(x); }

  /// Initial support points registered with the model (may be empty).
  std::span<const double> suggested_supports() const { return suggested_; }

  double potential(double x) const;
  /// `j` is zero-based.
  double reduced_potential(std::size_t j, double x) const;
  double aux_potential(AuxKind which, double rho, double x) const;

  /// Saturated V without the support check, for sampler hot loops.
  double potential_unchecked(double x) const noexcept;
  double reduced_potential_unchecked(std::size_t j, double x) const noexcept;

 private:
  std::vector<Term> terms_;
  Interval support_;
  std::vector<double> suggested_;
};

/// Applies the overflow policy: NaN or values above the cap become +inf.
double saturate_potential(double v) noexcept;

namespace marginals {

/// c * t^2, c > 0.
MarginalPotential quadratic(double c);
/// t^2 / (2 sigma^2).
MarginalPotential gaussian(double sigma);
/// t^beta - alpha log t on t > 0 (negative log of t^alpha exp(-t^beta)).
/// Requires alpha > 0, beta >= 1.
MarginalPotential generalized_gamma(double alpha, double beta);
/// lambda * t on t >= 0.
MarginalPotential linear_halfline(double lambda);
/// (exp(t) - t) / 2: negative log density of log(chi^2_1).
MarginalPotential log_chi_square();
/// Vbar(z) = noise(y - z): the potential of an observation y = z + noise.
MarginalPotential residual(const MarginalPotential& noise, double y);

}  // namespace marginals

namespace nonlinearities {

Nonlinearity identity();
Nonlinearity affine(double slope, double intercept);
/// a * exp(-b x); concave for a < 0, convex for a > 0.
Nonlinearity scaled_exp(double a, double b);
/// c * log(d x + 1), d > 0, on x > -1/d; convex for c < 0.
Nonlinearity scaled_log(double c, double d);
/// (x - e)^2.
Nonlinearity shifted_square(double e);
/// scale * log(x^2) + offset on x > 0; concave for scale > 0.
/// Affine in log(x), which is recorded as its log form.
Nonlinearity log_square(double scale, double offset);

}  // namespace nonlinearities

using ParamMap = std::map<std::string, double>;

/// Built-in models:
///   artificial3obs  params a, b, c, d, e, lambda, y1, y2, y3 (all optional,
///                   defaults a=-2 b=1.1 c=-0.8 d=1.5 e=2 lambda=0.2
///                   y=[2.314, 1.6, 2]); support [0, inf).
///   sv_step         params y, alpha, sigma (all required); support (0, inf).
PotentialModel builtin_model(const std::string& name, const ParamMap& params);

/// Default initial supports of the per-ancestor volatility sampler:
/// {0, m/4, m/2, m, 2m, 4m} with m = exp(alpha/2 + y/4).
std::vector<double> sv_initial_supports(double y, double alpha);

}  // namespace arsrou

#endif  // ARSROU_MODEL_HPP
