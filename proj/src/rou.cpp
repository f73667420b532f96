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

#include "arsrou/rou.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "arsrou/error.hpp"

namespace arsrou {

namespace {

constexpr double kRadiusSlack = 1e-9;

double cross(Point2 a, Point2 b) { return a.v * b.u - a.u * b.v; }

Point2 scaled(Point2 p, double s) { return {p.v * s, p.u * s}; }

// log(sqrt(e^{2a} + e^{2b}))
double log_hypot(double a, double b) {
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  if (hi == -kInf) return -kInf;
  return hi + 0.5 * std::log1p(std::exp(2.0 * (lo - hi)));
}

double own_radius(const RouBounds& b) {
  return std::exp(log_hypot(b.log_u_bound(), b.log_v_bound()));
}

bool zero_in_closure(const Interval& support) { return support.lo <= 0.0 && support.hi >= 0.0; }

std::vector<ConeCell> cells_for(const PotentialModel& model, double rho,
                                const SupportSet& supports, const BoundOptions& options) {
  if (zero_in_closure(model.support()) && !supports.contains(0.0)) {
    throw Error(ErrorCode::precondition,
                "support points must include 0 when 0 lies in the closure of the domain");
  }
  std::vector<ConeCell> cells;
  for (const auto& iv : partition(model.support(), supports)) {
    cells.push_back(ConeCell{rou_bounds(model, iv, rho, options), 0.0, 0.0, 0.0, {}});
  }
  return cells;
}

double max_height(const std::vector<ConeCell>& cells) {
  double m = -kInf;
  for (const auto& c : cells) m = std::max(m, c.bounds.log_u_bound());
  return std::exp(m);
}

void set_cone(ConeCell& c) {
  c.edge_lo = c.interval().lo;
  c.edge_hi = c.interval().hi;
  c.radius = own_radius(c.bounds);
}

void shape_cell(ConeCell& c) {
  if (!std::isfinite(c.radius)) {
    throw Error(ErrorCode::unbounded_region, "RoU bounds overflow; tails too heavy");
  }
  c.triangle = build_triangle(c.radius, ray_direction(c.edge_lo), ray_direction(c.edge_hi));
}

void reweigh(TriangleCover& cover) {
  const std::size_t n = cover.cells.size();
  cover.total_area = 0.0;
  for (const auto& c : cover.cells) cover.total_area += c.triangle.area;
  cover.weights.resize(n);
  cover.cumulative.resize(n);
  double run = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    cover.weights[k] = cover.cells[k].triangle.area / cover.total_area;
    run += cover.weights[k];
    cover.cumulative[k] = run;
  }
  if (n > 0) cover.cumulative.back() = 1.0;
}

// Fills edges, radii, triangles and weights from the per-interval bounds.
// `scale` is U^{rho-1}: a point with abscissa x and height u has slope
// v/u = x u^{rho-1}, which lies between 0 and x * scale.
void assemble(TriangleCover& cover, double rho, double scale) {
  auto& cells = cover.cells;
  const std::size_t n = cells.size();
  if (rho == 1.0) {
    for (auto& c : cells) set_cone(c);
  } else {
    for (auto& c : cells) {
      const Interval& iv = c.interval();
      c.edge_lo = iv.lo * scale;
      c.edge_hi = iv.hi * scale;
      c.radius = own_radius(c.bounds);
    }
    // Slopes near 0 are reachable from every abscissa on the same side.
    for (std::size_t k = 0; k < n; ++k) {
      if (cells[k].interval().nonnegative() &&
          (k == 0 || !cells[k - 1].interval().nonnegative())) {
        cells[k].edge_lo = 0.0;
      }
      if (cells[k].interval().nonpositive() &&
          (k + 1 == n || !cells[k + 1].interval().nonpositive())) {
        cells[k].edge_hi = 0.0;
      }
    }
    double run = 0.0;
    for (std::size_t k = n; k-- > 0;) {
      if (!cells[k].interval().nonnegative()) break;
      run = std::max(run, cells[k].radius);
      cells[k].radius = run;
    }
    run = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (!cells[k].interval().nonpositive()) break;
      run = std::max(run, cells[k].radius);
      cells[k].radius = run;
    }
  }

  for (auto& c : cells) shape_cell(c);
  reweigh(cover);
}

double abscissa(Point2 p, double rho) {
  return rho == 1.0 ? p.v / p.u : p.v / std::pow(p.u, rho);
}

}  // namespace

Triangle Triangle::from_vertices(Point2 a, Point2 b, Point2 c) {
  const Point2 ab{b.v - a.v, b.u - a.u};
  const Point2 ac{c.v - a.v, c.u - a.u};
  return {a, b, c, 0.5 * std::abs(cross(ab, ac))};
}

bool Triangle::contains(Point2 p, double slack) const {
  const Point2 e1{v2.v - v1.v, v2.u - v1.u};
  const Point2 e2{v3.v - v1.v, v3.u - v1.u};
  const Point2 d{p.v - v1.v, p.u - v1.u};
  const double det = cross(e1, e2);
  if (det == 0.0) return false;
  const double b2 = cross(d, e2) / det;
  const double b3 = cross(e1, d) / det;
  const double b1 = 1.0 - b2 - b3;
  return b1 >= -slack && b2 >= -slack && b3 >= -slack;
}

Point2 sample_uniform_triangle(const Triangle& t, double u1, double u2) {
  const double lo = std::min(u1, u2);
  const double hi = std::max(u1, u2);
  const double w1 = lo, w2 = 1.0 - hi, w3 = hi - lo;
  return {t.v1.v * w1 + t.v2.v * w2 + t.v3.v * w3, t.v1.u * w1 + t.v2.u * w2 + t.v3.u * w3};
}

Point2 sample_uniform_triangle(const Triangle& t, Rng& rng) {
  const double u1 = rng.uniform();
  const double u2 = rng.uniform();
  return sample_uniform_triangle(t, u1, u2);
}

Point2 ray_direction(double t) {
  if (t == kInf) return {1.0, 0.0};
  if (t == -kInf) return {-1.0, 0.0};
  const double n = std::hypot(t, 1.0);
  return {t / n, 1.0 / n};
}

Triangle build_triangle(double u_bound, double v_bound, double angle_lo, double angle_hi) {
  if (!(angle_lo < angle_hi) || angle_lo < -std::numbers::pi / 2 ||
      angle_hi > std::numbers::pi / 2) {
    throw Error(ErrorCode::precondition, "cone angles must satisfy -pi/2 <= lo < hi <= pi/2");
  }
  if (angle_hi - angle_lo < 1e-12) throw Error(ErrorCode::precondition, "degenerate cone");
  if (!(u_bound >= 0.0) || !(v_bound >= 0.0) || !std::isfinite(u_bound) ||
      !std::isfinite(v_bound)) {
    throw Error(ErrorCode::precondition, "RoU bounds must be finite and nonnegative");
  }
  // Angle measured from the u axis towards +v.
  const Point2 lo{std::sin(angle_lo), std::cos(angle_lo)};
  const Point2 hi{std::sin(angle_hi), std::cos(angle_hi)};
  return build_triangle(std::hypot(u_bound, v_bound), lo, hi);
}

Triangle build_triangle(double radius, Point2 dir_lo, Point2 dir_hi) {
  Point2 mid{dir_lo.v + dir_hi.v, dir_lo.u + dir_hi.u};
  const double norm = std::hypot(mid.v, mid.u);
  if (!(norm > 0.0)) throw Error(ErrorCode::precondition, "cone aperture must be below pi");
  mid = scaled(mid, 1.0 / norm);
  const double cos_half = dir_lo.v * mid.v + dir_lo.u * mid.u;
  const double reach = radius / cos_half;
  return Triangle::from_vertices({0.0, 0.0}, scaled(dir_lo, reach), scaled(dir_hi, reach));
}

std::vector<double> TriangleCover::angles() const {
  std::vector<double> out;
  if (cells.empty()) return out;
  out.push_back(std::atan(cells.front().edge_lo));
  for (const auto& c : cells) out.push_back(std::atan(c.edge_hi));
  return out;
}

std::size_t TriangleCover::cell_of(Point2 p) const {
  if (p.u < 0.0 || cells.empty()) return cells.size();
  double t;
  if (p.u == 0.0) {
    if (p.v == 0.0) return cells.size();
    t = p.v > 0 ? kInf : -kInf;
  } else {
    t = p.v / p.u;
  }
  if (t < cells.front().edge_lo || t > cells.back().edge_hi) return cells.size();
  auto it = std::lower_bound(cells.begin(), cells.end(), t,
                             [](const ConeCell& c, double x) { return c.edge_hi < x; });
  return static_cast<std::size_t>(it - cells.begin());
}

bool TriangleCover::contains(Point2 p, double slack) const {
  const std::size_t k = cell_of(p);
  if (k < cells.size() && cells[k].triangle.contains(p, slack)) return true;
  // Points on a shared edge may be assigned to either neighbour.
  for (const auto& c : cells) {
    if (c.triangle.contains(p, slack)) return true;
  }
  return false;
}

TriangleCover build_cover(const PotentialModel& model, double rho, const SupportSet& supports,
                          const BoundOptions& options) {
  TriangleCover cover;
  cover.cells = cells_for(model, rho, supports, options);
  const double scale = rho == 1.0 ? 1.0 : std::pow(max_height(cover.cells), rho - 1.0);
  assemble(cover, rho, scale);
  return cover;
}

bool rou_accept(const PotentialModel& model, double rho, Point2 point) {
  if (!(point.u > 0.0)) return false;
  const double x = abscissa(point, rho);
  if (!model.contains(x)) return false;
  return (rho + 1.0) * std::log(point.u) <= -model.potential_unchecked(x);
}

bool rou_accept_standard(const PotentialModel& model, Point2 point) {
  if (!(point.u > 0.0)) return false;
  const double x = point.v / point.u;
  if (!model.contains(x)) return false;
  return 2.0 * std::log(point.u) <= -model.potential_unchecked(x);
}

RouSampler::RouSampler(std::shared_ptr<const PotentialModel> model, std::vector<double> supports,
                       RouOptions options)
    : model_(std::move(model)), options_(options) {
  if (!model_) throw Error(ErrorCode::precondition, "null model");
  if (!(options_.rho >= 1.0)) throw Error(ErrorCode::precondition, "rho must be >= 1");
  if (options_.standard_path && options_.rho != 1.0) {
    throw Error(ErrorCode::precondition, "the standard RoU path requires rho = 1");
  }
  if (supports.empty()) {
    supports.assign(model_->suggested_supports().begin(), model_->suggested_supports().end());
  }
  supports_ = SupportSet(std::move(supports));
  cover_.cells = cells_for(*model_, options_.rho, supports_, options_.bounds);
  if (options_.rho != 1.0) height_scale_ = std::pow(max_height(cover_.cells), options_.rho - 1.0);
  assemble(cover_, options_.rho, height_scale_);
}

RouCandidate RouSampler::propose(Rng& rng) const {
  RouCandidate c;
  const double pick = rng.uniform();
  auto it = std::upper_bound(cover_.cumulative.begin(), cover_.cumulative.end(), pick);
  c.cell = std::min(static_cast<std::size_t>(it - cover_.cumulative.begin()),
                    cover_.cells.size() - 1);
  c.point = sample_uniform_triangle(cover_.cells[c.cell].triangle, rng);
  if (!(c.point.u > 0.0)) return c;
  c.x = options_.standard_path ? c.point.v / c.point.u : abscissa(c.point, options_.rho);
  c.in_support = model_->contains(c.x);
  if (!c.in_support) return c;
  c.accepted = options_.standard_path ? rou_accept_standard(*model_, c.point)
                                      : rou_accept(*model_, options_.rho, c.point);
  return c;
}

double RouSampler::draw(Rng& rng) {
  std::uint64_t trials = 0;
  for (;;) {
    ++trials;
    const RouCandidate c = propose(rng);
    if (c.accepted) {
      const ConeCell& cell = cover_.cells[c.cell];
      const double limit = cell.radius * (1.0 + kRadiusSlack);
      const double rho = options_.rho;
      const double edge_u = std::exp(-model_->potential_unchecked(c.x) / (rho + 1.0));
      const double edge_v = c.x * std::pow(edge_u, rho);
      if (std::hypot(c.point.v, c.point.u) > limit || std::hypot(edge_v, edge_u) > limit) {
        throw Error(ErrorCode::invariant_violation,
                    "RoU region escapes the triangle cover at x = " + std::to_string(c.x));
      }
      stats_.trials_per_accept.push_back(trials);
      return c.x;
    }
    ++rejections_;
    if (c.point.u > 0.0 && c.in_support) {
      insert(c.x);
    } else {
      ++skipped_;
    }
  }
}

void RouSampler::insert(double x) {
  auto it = std::upper_bound(cover_.cells.begin(), cover_.cells.end(), x,
                             [](double v, const ConeCell& c) { return v < c.interval().hi; });
  if (it == cover_.cells.end()) --it;
  const Interval iv = it->interval();
  const bool interior =
      x > iv.lo && x < iv.hi && well_separated(x, iv.lo) && well_separated(x, iv.hi);
  if (!interior || !supports_.insert(x)) {
    ++skipped_;
    return;
  }
  ConeCell left{refine_rou_bounds(*model_, it->bounds, Interval(iv.lo, x), options_.bounds),
                0.0, 0.0, 0.0, {}};
  ConeCell right{refine_rou_bounds(*model_, it->bounds, Interval(x, iv.hi), options_.bounds),
                 0.0, 0.0, 0.0, {}};
  const auto k = it - cover_.cells.begin();
  cover_.cells[static_cast<std::size_t>(k)] = std::move(left);
  cover_.cells.insert(cover_.cells.begin() + k + 1, std::move(right));
  if (options_.rho == 1.0) {
    for (std::size_t i : {static_cast<std::size_t>(k), static_cast<std::size_t>(k) + 1}) {
      set_cone(cover_.cells[i]);
      shape_cell(cover_.cells[i]);
    }
    reweigh(cover_);
  } else {
    // Radii are running maxima over the abscissae, so every cone may change.
    assemble(cover_, options_.rho, height_scale_);
  }
}

AdaptiveRouResult adaptive_rou_sample(std::shared_ptr<const PotentialModel> model,
                                      std::vector<double> initial_supports, std::size_t n,
                                      Rng& rng, const RouOptions& options) {
  if (n == 0) throw Error(ErrorCode::precondition, "sample count must be >= 1");
  RouSampler sampler(std::move(model), std::move(initial_supports), options);
  AdaptiveRouResult out;
  out.samples.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.samples.push_back(sampler.draw(rng));
  out.stats = sampler.stats();
  out.supports = sampler.supports();
  return out;
}

BoundingRectangle bounding_rectangle(const PotentialModel& model, double rho,
                                     const BoundOptions& options) {
  const Interval& s = model.support();
  BoundingRectangle r;
  if (s.hi > 0.0) {
    const RouBounds b = rou_bounds(model, Interval(std::max(s.lo, 0.0), s.hi), rho, options);
    r.u_max = std::max(r.u_max, b.u_bound());
    r.v_max = b.v_bound();
  }
  if (s.lo < 0.0) {
    const RouBounds b = rou_bounds(model, Interval(s.lo, std::min(s.hi, 0.0)), rho, options);
    r.u_max = std::max(r.u_max, b.u_bound());
    r.v_min = -b.v_bound();
  }
  if (!std::isfinite(r.u_max) || !std::isfinite(r.v_min) || !std::isfinite(r.v_max)) {
    throw Error(ErrorCode::unbounded_region, "RoU rectangle is unbounded; increase rho");
  }
  return r;
}

RectangleRouSampler::RectangleRouSampler(std::shared_ptr<const PotentialModel> model, double rho,
                                         const BoundOptions& options)
    : model_(std::move(model)), rho_(rho) {
  if (!model_) throw Error(ErrorCode::precondition, "null model");
  if (!(rho >= 1.0)) throw Error(ErrorCode::precondition, "rho must be >= 1");
  rect_ = bounding_rectangle(*model_, rho_, options);
}

double RectangleRouSampler::draw(Rng& rng) {
  std::uint64_t trials = 0;
  for (;;) {
    ++trials;
    const Point2 p{rect_.v_min + (rect_.v_max - rect_.v_min) * rng.uniform(),
                   rect_.u_max * rng.uniform_open()};
    if (rou_accept(*model_, rho_, p)) {
      stats_.trials_per_accept.push_back(trials);
      return abscissa(p, rho_);
    }
  }
}

std::vector<double> probe_grid(const Interval& support, std::size_t probes) {
  std::vector<double> out;
  if (probes == 0) return out;
  const bool pos = support.hi > 0.0;
  const bool neg = support.lo < 0.0;
  const std::size_t sides = (pos ? 1 : 0) + (neg ? 1 : 0);
  if (sides == 0) return out;
  const std::size_t per_side = std::max<std::size_t>(2, probes / sides);
  const double lo_exp = -6.0, hi_exp = 6.0;
  auto side = [&](double sign) {
    for (std::size_t i = 0; i < per_side; ++i) {
      const double e = lo_exp + (hi_exp - lo_exp) * static_cast<double>(i) /
                                    static_cast<double>(per_side - 1);
      const double x = sign * std::pow(10.0, e);
      if (support.contains(x)) out.push_back(x);
    }
  };
  if (neg) side(-1.0);
  if (support.contains(0.0)) out.push_back(0.0);
  if (pos) side(1.0);
  std::sort(out.begin(), out.end());
  return out;
}

RegionDump export_region(const RouSampler& sampler, std::size_t probes) {
  RegionDump out;
  for (const auto& c : sampler.cover().cells) out.triangles.push_back(c.triangle);
  const double rho = sampler.rho();
  for (double x : probe_grid(sampler.model().support(), probes)) {
    const double v = sampler.model().potential_unchecked(x);
    if (!std::isfinite(v)) continue;
    const double u = std::exp(-v / (rho + 1.0));
    out.boundary.push_back({x * std::pow(u, rho), u});
  }
  return out;
}

}  // namespace arsrou
