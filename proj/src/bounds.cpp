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

#include "arsrou/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "arsrou/error.hpp"

namespace arsrou {

namespace {

constexpr double kAnchorSearchSteps = 200;
constexpr int kBisectSteps = 60;

LinearFn tangent_at(const Nonlinearity& g, double x) {
  return LinearFn::through(x, g.value(x), g.derivative(x));
}

LinearFn chord(const Nonlinearity& g, double a, double b) {
  const double ga = g.value(a);
  return LinearFn::through(a, ga, (g.value(b) - ga) / (b - a));
}

bool finite_fn(const LinearFn& f) {
  return std::isfinite(f.slope) && std::isfinite(f.intercept);
}

LinearFn linearize_finite(const Nonlinearity& g, double mu, double a, double b) {
  const double ga = g.value(a);
  const double gb = g.value(b);
  const LinearFn fallback = LinearFn::constant(mu);
  if (!std::isfinite(ga) || !std::isfinite(gb)) return fallback;

  const bool above = ga >= mu && gb >= mu;
  const bool below = ga <= mu && gb <= mu;
  const bool convex = g.curvature == Curvature::convex;
  if (!above && !below) return fallback;

  // Above mu: convex g keeps its tangents below it, concave g keeps its chords
  // below it; the candidate must not dip under mu at either end.
  const bool use_tangent = above ? convex : !convex;
  if (!use_tangent) return chord(g, a, b);
  const LinearFn t = tangent_at(g, 0.5 * (a + b));
  if (!finite_fn(t)) return fallback;
  const bool ok = above ? (t(a) >= mu && t(b) >= mu) : (t(a) <= mu && t(b) <= mu);
  return ok ? t : fallback;
}

// [a, inf) when upper is true, (-inf, a] otherwise.
LinearFn linearize_tail(const Nonlinearity& g, double mu, double a, bool upper) {
  const LinearFn fallback = LinearFn::constant(mu);
  const double ga = g.value(a);
  const double da = g.derivative(a);
  const double s = upper ? g.slope_at_hi : g.slope_at_lo;
  if (!std::isfinite(ga)) return fallback;
  // Direction of travel towards the infinite end.
  const double dir = upper ? 1.0 : -1.0;
  const bool convex = g.curvature == Curvature::convex;

  LinearFn r = fallback;
  if (convex) {
    if (ga >= mu && dir * da >= 0.0) {
      r = LinearFn::through(a, ga, da);
    } else if (ga <= mu && std::isfinite(s) && dir * s <= 0.0) {
      r = LinearFn::through(a, ga, s);
    }
  } else {
    if (ga >= mu && std::isfinite(s) && dir * s >= 0.0) {
      r = LinearFn::through(a, ga, s);
    } else if (ga <= mu && dir * da <= 0.0) {
      r = LinearFn::through(a, ga, da);
    }
  }
  return finite_fn(r) ? r : fallback;
}

double aux_scale(AuxKind aux, double rho) {
  switch (aux) {
    case AuxKind::base: return 1.0;
    case AuxKind::u_bound: return 1.0 / (rho + 1.0);
    case AuxKind::v_bound_pos:
    case AuxKind::v_bound_neg: return rho / (rho + 1.0);
  }
  return 1.0;
}

struct Modified {
  std::span<const Term> terms;
  const LinearizedPotential* lp;

  double value(double c) const {
    double v = 0.0;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      v += terms[i].marginal(lp->replacements[i](c));
    }
    v *= aux_scale(lp->aux, lp->rho);
    return v + log_term(c);
  }

  double derivative(double c) const {
    double d = 0.0;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const LinearFn& r = lp->replacements[i];
      if (r.slope != 0.0) d += terms[i].marginal.slope(r(c)) * r.slope;
    }
    d *= aux_scale(lp->aux, lp->rho);
    return d + log_term_derivative(c);
  }

  double log_term(double c) const {
    if (lp->aux == AuxKind::v_bound_pos) {
      return lp->coordinate == Coordinate::log ? -c : -std::log(c);
    }
    if (lp->aux == AuxKind::v_bound_neg) return -std::log(-c);
    return 0.0;
  }

  double log_term_derivative(double c) const {
    if (lp->aux == AuxKind::v_bound_pos) {
      return lp->coordinate == Coordinate::log ? -1.0 : -1.0 / c;
    }
    if (lp->aux == AuxKind::v_bound_neg) return -1.0 / c;
    return 0.0;
  }
};

double golden_section(const Modified& m, double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = m.value(c), fd = m.value(d);
  for (int i = 0; i < 20; ++i) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = m.value(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = m.value(d);
    }
  }
  return 0.5 * (a + b);
}

bool usable(const Modified& m, double c) {
  return std::isfinite(m.value(c)) && std::isfinite(m.derivative(c));
}

// Slope ascends towards the infinite end of a half-infinite interval.
bool ascends(const Modified& m, double c, bool upper) {
  if (!usable(m, c)) return false;
  const double s = m.derivative(c);
  return upper ? s >= 0.0 : s <= 0.0;
}

// Walks away from the finite end until the tangent slope ascends towards the
// infinite end, then bisects back to the leftmost such point.
std::optional<double> tail_anchor(const Modified& m, double a, bool upper) {
  const double dir = upper ? 1.0 : -1.0;
  double step = std::max(1.0, std::abs(a)) * 1e-3;
  double inner = a;
  double outer = a;
  bool found = false;
  for (int i = 0; i < kAnchorSearchSteps; ++i) {
    outer = a + dir * step;
    if (!std::isfinite(outer)) break;
    if (ascends(m, outer, upper)) {
      found = true;
      break;
    }
    inner = outer;
    step *= 2.0;
  }
  if (!found) return std::nullopt;
  for (int i = 0; i < kBisectSteps; ++i) {
    const double mid = 0.5 * (inner + outer);
    if (mid == inner || mid == outer) break;
    if (ascends(m, mid, upper)) {
      outer = mid;
    } else {
      inner = mid;
    }
  }
  return outer;
}

// Brackets the minimizer on the whole line and bounds M below by the crossing
// of the two bracketing tangents.
LowerBound line_bound(const Modified& m) {
  LowerBound out;
  out.anchor = 0.0;
  if (!usable(m, 0.0)) return out;
  if (m.derivative(0.0) == 0.0) {
    out.gamma = m.value(0.0);
    out.tangent = LinearFn::constant(out.gamma);
    return out;
  }
  double lo = 0.0, hi = 0.0;
  const bool go_left = m.derivative(0.0) > 0.0;
  double step = 1e-3;
  bool found = false;
  for (int i = 0; i < kAnchorSearchSteps; ++i) {
    const double c = go_left ? -step : step;
    if (!usable(m, c)) return out;
    const double s = m.derivative(c);
    if (go_left ? s <= 0.0 : s >= 0.0) {
      (go_left ? lo : hi) = c;
      found = true;
      break;
    }
    (go_left ? hi : lo) = c;
    step *= 2.0;
  }
  if (!found) return out;
  for (int i = 0; i < kBisectSteps; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi || !usable(m, mid)) break;
    (m.derivative(mid) <= 0.0 ? lo : hi) = mid;
  }
  const double fl = m.value(lo), sl = m.derivative(lo);
  const double fh = m.value(hi), sh = m.derivative(hi);
  double gamma = std::min(fl, fh);
  if (sl != sh) {
    const double cross = (fh - fl + sl * lo - sh * hi) / (sl - sh);
    gamma = std::min(gamma, fl + sl * (cross - lo));
  }
  if (!std::isfinite(gamma)) return out;
  out.anchor = 0.5 * (lo + hi);
  out.gamma = gamma;
  out.tangent = LinearFn::constant(gamma);
  return out;
}

ConvexFn as_convex(const Modified& m) {
  return {[m](double c) { return m.value(c); }, [m](double c) { return m.derivative(c); }};
}

LowerBound bound_modified(const Modified& m, const Interval& iv, const BoundOptions& opts) {
  const ConvexFn fn = as_convex(m);
  if (opts.anchor) {
    if (!iv.contains(*opts.anchor)) {
      throw Error(ErrorCode::precondition, "tangent anchor outside the interval");
    }
    return lower_bound(fn, iv, *opts.anchor);
  }
  const bool lo_inf = std::isinf(iv.lo);
  const bool hi_inf = std::isinf(iv.hi);
  if (lo_inf && hi_inf) return line_bound(m);

  if (!lo_inf && !hi_inf) {
    const double mid = opts.golden_section ? golden_section(m, iv.lo, iv.hi)
                                           : 0.5 * (iv.lo + iv.hi);
    for (double c : {mid, 0.5 * (iv.lo + mid), 0.5 * (mid + iv.hi)}) {
      if (usable(m, c)) return lower_bound(fn, iv, c);
    }
    LowerBound none;
    none.anchor = mid;
    return none;
  }

  const bool upper = hi_inf;
  const double end = upper ? iv.lo : iv.hi;
  if (usable(m, end)) {
    LowerBound b = lower_bound(fn, iv, end);
    if (std::isfinite(b.gamma)) return b;
  }
  if (auto c = tail_anchor(m, end, upper)) return lower_bound(fn, iv, *c);
  LowerBound none;
  none.anchor = end;
  return none;
}

bool use_log_coordinate(std::span<const Term> terms, const Interval& iv, AuxKind aux,
                        const BoundOptions& opts) {
  if (!opts.allow_log_coordinate || !iv.nonnegative() || aux == AuxKind::v_bound_neg) {
    return false;
  }
  return std::all_of(terms.begin(), terms.end(),
                     [](const Term& t) { return t.nonlinearity.log_form != nullptr; });
}

Interval working_interval(const Interval& iv, Coordinate c) {
  if (c == Coordinate::linear) return iv;
  return Interval(iv.lo > 0.0 ? std::log(iv.lo) : -kInf, std::log(iv.hi));
}

}  // namespace

LinearFn linearize_term(const MarginalPotential& marginal, const Nonlinearity& g,
                        const Interval& interval) {
  const double mu = marginal.argmin;
  const bool lo_inf = std::isinf(interval.lo);
  const bool hi_inf = std::isinf(interval.hi);

  if (g.curvature == Curvature::linear) {
    double x0 = 0.0;
    if (!lo_inf && !hi_inf) {
      x0 = 0.5 * (interval.lo + interval.hi);
    } else if (!lo_inf) {
      x0 = interval.lo;
    } else if (!hi_inf) {
      x0 = interval.hi;
    }
    const LinearFn r = tangent_at(g, x0);
    return finite_fn(r) ? r : LinearFn::constant(mu);
  }
  if (lo_inf && hi_inf) return LinearFn::constant(mu);
  if (lo_inf) return linearize_tail(g, mu, interval.hi, false);
  if (hi_inf) return linearize_tail(g, mu, interval.lo, true);
  return linearize_finite(g, mu, interval.lo, interval.hi);
}

LowerBound lower_bound(const ConvexFn& m, const Interval& interval, double anchor) {
  LowerBound out;
  out.anchor = anchor;
  const double f = m.value(anchor);
  const double s = m.derivative(anchor);
  if (!std::isfinite(f) || !std::isfinite(s)) return out;
  out.tangent = LinearFn::through(anchor, f, s);

  double gamma = kInf;
  if (std::isfinite(interval.lo)) {
    gamma = std::min(gamma, out.tangent(interval.lo));
  } else if (s > 0.0) {
    gamma = -kInf;
  } else if (s == 0.0) {
    gamma = std::min(gamma, f);
  }
  if (std::isfinite(interval.hi)) {
    gamma = std::min(gamma, out.tangent(interval.hi));
  } else if (s < 0.0) {
    gamma = -kInf;
  } else if (s == 0.0) {
    gamma = std::min(gamma, f);
  }
  out.gamma = std::isnan(gamma) ? -kInf : gamma;
  return out;
}

double LinearizedPotential::to_coordinate(double x) const {
  return coordinate == Coordinate::log ? std::log(x) : x;
}

bool LinearizedPotential::finite() const { return std::isfinite(gamma); }

LinearizedPotential build_linearized(std::span<const Term> terms, const Interval& interval,
                                     AuxKind aux, double rho, const BoundOptions& options) {
  if (!(rho >= 1.0)) throw Error(ErrorCode::precondition, "rho must be >= 1");
  if (aux == AuxKind::v_bound_pos && !interval.nonnegative()) {
    throw Error(ErrorCode::sign, "positive-side width bound needs an interval with lo >= 0");
  }
  if (aux == AuxKind::v_bound_neg && !interval.nonpositive()) {
    throw Error(ErrorCode::sign, "negative-side width bound needs an interval with hi <= 0");
  }

  LinearizedPotential lp{interval, Coordinate::linear, aux, rho, {}, {}, 0.0, -kInf};
  lp.aux = aux;
  lp.rho = rho;
  lp.coordinate = use_log_coordinate(terms, interval, aux, options) ? Coordinate::log
                                                                    : Coordinate::linear;
  const Interval work = working_interval(interval, lp.coordinate);
  lp.replacements.reserve(terms.size());
  for (const auto& t : terms) {
    const Nonlinearity& g =
        lp.coordinate == Coordinate::log ? *t.nonlinearity.log_form : t.nonlinearity;
    lp.replacements.push_back(linearize_term(t.marginal, g, work));
  }

  const LowerBound b = bound_modified(Modified{terms, &lp}, work, options);
  lp.tangent = b.tangent;
  lp.anchor = b.anchor;
  lp.gamma = b.gamma;
  return lp;
}

LinearizedPotential build_linearized(const PotentialModel& model, const Interval& interval,
                                     AuxKind aux, double rho, const BoundOptions& options) {
  if (interval.lo < model.support().lo || interval.hi > model.support().hi) {
    throw Error(ErrorCode::domain, "interval outside the model support");
  }
  return build_linearized(model.terms(), interval, aux, rho, options);
}

double modified_potential(std::span<const Term> terms, const LinearizedPotential& lp, double x) {
  if (terms.size() != lp.replacements.size()) {
    throw Error(ErrorCode::precondition, "term count does not match the linearization");
  }
  return Modified{terms, &lp}.value(lp.to_coordinate(x));
}

LinearizedPotential refine_linearized(std::span<const Term> terms,
                                      const LinearizedPotential& parent, const Interval& child,
                                      const BoundOptions& options) {
  if (child.lo < parent.interval.lo || child.hi > parent.interval.hi) {
    throw Error(ErrorCode::precondition, "child interval not inside the parent");
  }
  LinearizedPotential lp = build_linearized(terms, child, parent.aux, parent.rho, options);
  // The parent bound already holds on any sub-interval.
  lp.gamma = std::max(lp.gamma, parent.gamma);
  return lp;
}

double RouBounds::u_bound() const { return std::exp(log_u_bound()); }
double RouBounds::v_bound() const { return std::exp(log_v_bound()); }

RouBounds rou_bounds(const PotentialModel& model, const Interval& interval, double rho,
                     const BoundOptions& options) {
  if (!interval.nonnegative() && !interval.nonpositive()) {
    throw Error(ErrorCode::sign, "RoU bounds need an interval on one side of zero");
  }
  const AuxKind side = interval.nonnegative() ? AuxKind::v_bound_pos : AuxKind::v_bound_neg;
  RouBounds b{build_linearized(model, interval, AuxKind::u_bound, rho, options),
              build_linearized(model, interval, side, rho, options)};
  if (!b.height.finite() || !b.width.finite()) {
    throw Error(ErrorCode::unbounded_region, "tails too heavy; increase rho");
  }
  return b;
}

RouBounds refine_rou_bounds(const PotentialModel& model, const RouBounds& parent,
                            const Interval& child, const BoundOptions& options) {
  RouBounds b{refine_linearized(model.terms(), parent.height, child, options),
              refine_linearized(model.terms(), parent.width, child, options)};
  if (!b.height.finite() || !b.width.finite()) {
    throw Error(ErrorCode::unbounded_region, "tails too heavy; increase rho");
  }
  return b;
}

}  // namespace arsrou
