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

#include "arsrou/model.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "arsrou/error.hpp"

namespace arsrou {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::precondition, what);
}

}  // namespace

const char* to_string(Curvature c) noexcept {
  switch (c) {
    case Curvature::convex: return "convex";
    case Curvature::concave: return "concave";
    case Curvature::linear: return "linear";
  }
  return "unknown";
}

double MarginalPotential::operator()(double t) const {
  if (!domain.contains(t)) return kInf;
  return value(t);
}

double MarginalPotential::slope(double t) const {
  if (!domain.contains(t)) return kNaN;
  return derivative(t);
}

double saturate_potential(double v) noexcept {
  // NaN fails the comparison and saturates too.
  return v <= kPotentialCap ? v : kInf;
}

PotentialModel::PotentialModel(std::vector<Term> terms, Interval support,
                               std::vector<double> suggested_supports)
    : terms_(std::move(terms)), support_(support), suggested_(std::move(suggested_supports)) {
  require(!terms_.empty(), "a potential model needs at least one term");
  for (const auto& t : terms_) {
    require(t.marginal.value && t.marginal.derivative, "marginal '" + t.marginal.name +
                                                           "' lacks value or derivative");
    require(t.nonlinearity.value && t.nonlinearity.derivative,
            "nonlinearity '" + t.nonlinearity.name + "' lacks value or derivative");
  }
  for (double s : suggested_) require(support_.contains(s), "suggested support outside domain");
}

double PotentialModel::potential_unchecked(double x) const noexcept {
  double v = 0.0;
  for (const auto& t : terms_) v += t(x);
  return saturate_potential(v);
}

double PotentialModel::reduced_potential_unchecked(std::size_t j, double x) const noexcept {
  double v = 0.0;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i != j) v += terms_[i](x);
  }
  return saturate_potential(v);
}

double PotentialModel::potential(double x) const {
  if (!contains(x)) {
    std::ostringstream msg;
    msg << "x = " << x << " outside the support [" << support_.lo << ", " << support_.hi << "]";
    throw Error(ErrorCode::domain, msg.str());
  }
  return potential_unchecked(x);
}

double PotentialModel::reduced_potential(std::size_t j, double x) const {
  if (j >= terms_.size()) {
    throw Error(ErrorCode::index, "term index " + std::to_string(j) + " out of range for " +
                                      std::to_string(terms_.size()) + " terms");
  }
  if (!contains(x)) throw Error(ErrorCode::domain, "x outside the model support");
  return reduced_potential_unchecked(j, x);
}

double PotentialModel::aux_potential(AuxKind which, double rho, double x) const {
  if (!(rho >= 1.0)) throw Error(ErrorCode::precondition, "rho must be >= 1");
  if (which == AuxKind::v_bound_pos && !(x > 0.0)) {
    throw Error(ErrorCode::sign, "positive-side width potential needs x > 0");
  }
  if (which == AuxKind::v_bound_neg && !(x < 0.0)) {
    throw Error(ErrorCode::sign, "negative-side width potential needs x < 0");
  }
  const double v = potential(x);
  switch (which) {
    case AuxKind::base: return v;
    case AuxKind::u_bound: return v / (rho + 1.0);
    case AuxKind::v_bound_pos: return rho * v / (rho + 1.0) - std::log(x);
    case AuxKind::v_bound_neg: return rho * v / (rho + 1.0) - std::log(-x);
  }
  return v;
}

namespace marginals {

MarginalPotential quadratic(double c) {
  require(c > 0.0 && std::isfinite(c), "quadratic marginal needs c > 0");
  return {"quadratic",
          [c](double t) { return c * t * t; },
          [c](double t) { return 2.0 * c * t; },
          0.0,
          0.0,
          Interval::real_line()};
}

MarginalPotential gaussian(double sigma) {
  require(sigma > 0.0 && std::isfinite(sigma), "gaussian marginal needs sigma > 0");
  auto m = quadratic(1.0 / (2.0 * sigma * sigma));
  m.name = "gaussian";
  return m;
}

MarginalPotential generalized_gamma(double alpha, double beta) {
  require(alpha > 0.0 && std::isfinite(alpha), "generalized_gamma needs alpha > 0");
  require(beta >= 1.0 && std::isfinite(beta), "generalized_gamma needs beta >= 1");
  const double mu = std::pow(alpha / beta, 1.0 / beta);
  auto value = [alpha, beta](double t) { return std::pow(t, beta) - alpha * std::log(t); };
  auto deriv = [alpha, beta](double t) { return beta * std::pow(t, beta - 1.0) - alpha / t; };
  return {"generalized_gamma", value, deriv, mu, value(mu), Interval(0.0, kInf)};
}

MarginalPotential linear_halfline(double lambda) {
  require(lambda > 0.0 && std::isfinite(lambda), "linear_halfline needs lambda > 0");
  return {"linear_halfline",
          [lambda](double t) { return lambda * t; },
          [lambda](double) { return lambda; },
          0.0,
          0.0,
          Interval(0.0, kInf)};
}

MarginalPotential log_chi_square() {
  return {"log_chi_square",
          [](double t) { return 0.5 * (std::exp(t) - t); },
          [](double t) { return 0.5 * (std::exp(t) - 1.0); },
          0.0,
          0.5,
          Interval::real_line()};
}

MarginalPotential residual(const MarginalPotential& noise, double y) {
  require(std::isfinite(y), "observation must be finite");
  auto nv = noise.value;
  auto nd = noise.derivative;
  return {noise.name + "@" + std::to_string(y),
          [nv, y](double z) { return nv(y - z); },
          [nd, y](double z) { return -nd(y - z); },
          y - noise.argmin,
          noise.min_value,
          Interval(y - noise.domain.hi, y - noise.domain.lo)};
}

}  // namespace marginals

namespace nonlinearities {

Nonlinearity identity() {
  return {"identity", [](double x) { return x; }, [](double) { return 1.0; },
          Curvature::linear, 1.0, 1.0, nullptr};
}

Nonlinearity affine(double slope, double intercept) {
  require(std::isfinite(slope) && std::isfinite(intercept), "affine needs finite coefficients");
  return {"affine",
          [slope, intercept](double x) { return slope * x + intercept; },
          [slope](double) { return slope; },
          Curvature::linear,
          slope,
          slope,
          nullptr};
}

Nonlinearity scaled_exp(double a, double b) {
  require(std::isfinite(a) && std::isfinite(b) && b != 0.0, "scaled_exp needs finite a, b != 0");
  const Curvature c = a > 0 ? Curvature::convex : a < 0 ? Curvature::concave : Curvature::linear;
  // d/dx a e^{-bx} = -ab e^{-bx}: vanishes on the decaying side.
  const double blowup = std::copysign(kInf, -a * b);
  const double at_lo = a == 0 ? 0.0 : (b > 0 ? blowup : 0.0);
  const double at_hi = a == 0 ? 0.0 : (b > 0 ? 0.0 : blowup);
  return {"scaled_exp",
          [a, b](double x) { return a * std::exp(-b * x); },
          [a, b](double x) { return -a * b * std::exp(-b * x); },
          c,
          at_lo,
          at_hi,
          nullptr};
}

Nonlinearity scaled_log(double c, double d) {
  require(std::isfinite(c) && d > 0.0 && std::isfinite(d), "scaled_log needs d > 0");
  const Curvature cv = c < 0 ? Curvature::convex : c > 0 ? Curvature::concave : Curvature::linear;
  return {"scaled_log",
          [c, d](double x) { return c * std::log(d * x + 1.0); },
          [c, d](double x) { return c * d / (d * x + 1.0); },
          cv,
          kNaN,
          0.0,
          nullptr};
}

Nonlinearity shifted_square(double e) {
  require(std::isfinite(e), "shifted_square needs finite e");
  return {"shifted_square",
          [e](double x) { return (x - e) * (x - e); },
          [e](double x) { return 2.0 * (x - e); },
          Curvature::convex,
          -kInf,
          kInf,
          nullptr};
}

Nonlinearity log_square(double scale, double offset) {
  require(std::isfinite(scale) && std::isfinite(offset), "log_square needs finite coefficients");
  const Curvature c =
      scale > 0 ? Curvature::concave : scale < 0 ? Curvature::convex : Curvature::linear;
  auto in_log = std::make_shared<Nonlinearity>(affine(2.0 * scale, offset));
  in_log->name = "log_square@log";
  return {"log_square",
          [scale, offset](double x) { return scale * std::log(x * x) + offset; },
          [scale](double x) { return 2.0 * scale / x; },
          c,
          kNaN,
          0.0,
          std::move(in_log)};
}

}  // namespace nonlinearities

namespace {

double param(const ParamMap& p, const std::string& key, double fallback) {
  auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

double required_param(const ParamMap& p, const std::string& key, const std::string& model) {
  auto it = p.find(key);
  if (it == p.end()) {
    throw Error(ErrorCode::precondition, "model '" + model + "' requires parameter '" + key + "'");
  }
  return it->second;
}

void reject_unknown(const ParamMap& p, const std::set<std::string>& known,
                    const std::string& model) {
  for (const auto& [k, v] : p) {
    if (!known.count(k)) {
      throw Error(ErrorCode::precondition, "unknown parameter '" + k + "' for model '" + model + "'");
    }
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::precondition, "parameter '" + k + "' must be finite");
    }
  }
}

PotentialModel artificial3obs(const ParamMap& p) {
  reject_unknown(p, {"a", "b", "c", "d", "e", "lambda", "y1", "y2", "y3"}, "artificial3obs");
  const double a = param(p, "a", -2.0);
  const double b = param(p, "b", 1.1);
  const double c = param(p, "c", -0.8);
  const double d = param(p, "d", 1.5);
  const double e = param(p, "e", 2.0);
  const double lambda = param(p, "lambda", 0.2);
  const double y1 = param(p, "y1", 2.314);
  const double y2 = param(p, "y2", 1.6);
  const double y3 = param(p, "y3", 2.0);

  require(b > 0.0, "artificial3obs needs b > 0");
  require(d > 0.0, "artificial3obs needs d > 0");
  require(lambda > 0.0, "artificial3obs needs lambda > 0");
  // The generalized-gamma noises live on (0, inf): y - g(x) must stay positive
  // over x >= 0. a e^{-bx} ranges over (0, a] or [a, 0); c log(dx+1) is
  // unbounded above unless c <= 0.
  require(y1 > std::max(a, 0.0), "artificial3obs needs y1 > max(a, 0)");
  require(c <= 0.0 && y2 > 0.0, "artificial3obs needs c <= 0 and y2 > 0");

  std::vector<Term> terms{
      {marginals::residual(marginals::generalized_gamma(4.0, 2.0), y1),
       nonlinearities::scaled_exp(a, b)},
      {marginals::residual(marginals::generalized_gamma(2.0, 2.0), y2),
       nonlinearities::scaled_log(c, d)},
      {marginals::residual(marginals::quadratic(1.0), y3), nonlinearities::shifted_square(e)},
      {marginals::linear_halfline(lambda), nonlinearities::identity()},
  };

  // Points where (x - e)^2 crosses its marginal's minimum y3, plus e itself.
  std::vector<double> supports{0.0};
  if (y3 > 0.0 && e - std::sqrt(y3) > 0.0) supports.push_back(e - std::sqrt(y3));
  if (e > 0.0) supports.push_back(e);
  if (y3 > 0.0 && e + std::sqrt(y3) > 0.0) supports.push_back(e + std::sqrt(y3));
  return PotentialModel(std::move(terms), Interval(0.0, kInf), std::move(supports));
}

PotentialModel sv_step(const ParamMap& p) {
  reject_unknown(p, {"y", "alpha", "sigma"}, "sv_step");
  const double y = required_param(p, "y", "sv_step");
  const double alpha = required_param(p, "alpha", "sv_step");
  const double sigma = required_param(p, "sigma", "sv_step");
  require(sigma > 0.0, "sv_step needs sigma > 0");

  std::vector<Term> terms{
      {marginals::log_chi_square(), nonlinearities::log_square(-1.0, y)},
      {marginals::gaussian(sigma), nonlinearities::log_square(1.0, -alpha)},
  };
  return PotentialModel(std::move(terms), Interval(0.0, kInf), sv_initial_supports(y, alpha));
}

}  // namespace

PotentialModel builtin_model(const std::string& name, const ParamMap& params) {
  if (name == "artificial3obs") return artificial3obs(params);
  if (name == "sv_step") return sv_step(params);
  throw Error(ErrorCode::precondition, "unknown built-in model '" + name + "'");
}

std::vector<double> sv_initial_supports(double y, double alpha) {
  const double m = std::exp(alpha / 2.0 + y / 4.0);
  return {0.0, m / 4.0, m / 2.0, m, 2.0 * m, 4.0 * m};
}

}  // namespace arsrou
