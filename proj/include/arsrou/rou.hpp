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

#ifndef ARSROU_ROU_HPP
#define ARSROU_ROU_HPP

// Adaptive ratio-of-uniforms sampling.
//
// The region A = {(v, u) : 0 <= u <= p(v / u^rho)^{1/(rho+1)}} is cut into
// cones from the origin, one per support interval. Each cone's part of A
// lies in a circular sector whose radius comes from the interval's height
// and width bounds; the sector is in turn enclosed by the triangle formed
// by the cone edges and the tangent to the arc at the cone's angular
// midpoint. Uniform points on the union of triangles are accepted when they
// fall in A and otherwise split the cone they came from.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "arsrou/bounds.hpp"
#include "arsrou/model.hpp"
#include "arsrou/random.hpp"
#include "arsrou/types.hpp"

namespace arsrou {

struct Point2 {
  double v = 0.0;
  double u = 0.0;
};

struct Triangle {
  Point2 v1, v2, v3;
  double area = 0.0;

  static Triangle from_vertices(Point2 a, Point2 b, Point2 c);
  /// Barycentric membership with absolute slack on the coordinates.
  bool contains(Point2 p, double slack = 1e-9) const;
};

/// v1 min(u1,u2) + v2 (1 - max(u1,u2)) + v3 (max(u1,u2) - min(u1,u2)).
Point2 sample_uniform_triangle(const Triangle& t, double u1, double u2);
Point2 sample_uniform_triangle(const Triangle& t, Rng& rng);

/// Unit direction of the ray v = t u (t may be +-inf: the v axis).
Point2 ray_direction(double t);

/// Apex at the origin, other vertices on the cone edges where they meet
/// the tangent to the circle of radius sqrt(u_bound^2 + v_bound^2) at the
/// cone's angular midpoint. Angles are measured from the u axis.
Triangle build_triangle(double u_bound, double v_bound, double angle_lo, double angle_hi);
Triangle build_triangle(double radius, Point2 dir_lo, Point2 dir_hi);

/// One cone of the cover.
struct ConeCell {
  RouBounds bounds;     // over `bounds.height.interval`
  double edge_lo = 0;   // v/u slope of the lower edge
  double edge_hi = 0;
  double radius = 0;
  Triangle triangle;

  const Interval& interval() const { return bounds.height.interval; }
};

struct TriangleCover {
  std::vector<ConeCell> cells;
  std::vector<double> weights;     // triangle area / total
  std::vector<double> cumulative;  // running sum of weights
  double total_area = 0.0;

  std::size_t size() const { return cells.size(); }
  /// Cone angles arctan(edge) from the lowest edge to the highest.
  std::vector<double> angles() const;
  /// Index of the cell whose cone holds p (u >= 0), or size() if none.
  std::size_t cell_of(Point2 p) const;
  bool contains(Point2 p, double slack = 1e-9) const;
};

/// Cover for `supports`; requires 0 among the supports when 0 lies in the
/// closure of the model support. Throws unbounded_region when a bound is
/// infinite ("tails too heavy; increase rho").
TriangleCover build_cover(const PotentialModel& model, double rho, const SupportSet& supports,
                          const BoundOptions& options = {});

/// u <= p(v/u^rho)^{1/(rho+1)} tested as (rho+1) log u <= -V(v/u^rho).
/// u <= 0 and abscissae outside the support are rejected.
bool rou_accept(const PotentialModel& model, double rho, Point2 point);
/// Classic RoU test u^2 <= p(v/u).
bool rou_accept_standard(const PotentialModel& model, Point2 point);

struct RouOptions {
  double rho = 1.0;
  /// Use rou_accept_standard and x = v/u (requires rho == 1).
  bool standard_path = false;
  BoundOptions bounds;
};

/// Outcome of one candidate without adapting the cover.
struct RouCandidate {
  Point2 point;
  std::size_t cell = 0;
  double x = 0.0;
  bool in_support = false;
  bool accepted = false;
};

class RouSampler {
 public:
  RouSampler(std::shared_ptr<const PotentialModel> model, std::vector<double> supports,
             RouOptions options = {});

  /// Runs accept/reject until one candidate is accepted.
  double draw(Rng& rng);
  /// Draws and tests one candidate; never modifies the cover.
  RouCandidate propose(Rng& rng) const;

  const PotentialModel& model() const { return *model_; }
  double rho() const { return options_.rho; }
  const SupportSet& supports() const { return supports_; }
  const TriangleCover& cover() const { return cover_; }
  const AcceptanceStats& stats() const { return stats_; }
  std::uint64_t rejections() const { return rejections_; }
  std::uint64_t skipped_insertions() const { return skipped_; }

 private:
  void insert(double x);

  std::shared_ptr<const PotentialModel> model_;
  RouOptions options_;
  SupportSet supports_;
  TriangleCover cover_;
  double height_scale_ = 1.0;  // U^{rho-1}, U an upper bound on sup u over A
  AcceptanceStats stats_;
  std::uint64_t rejections_ = 0;
  std::uint64_t skipped_ = 0;
};

struct AdaptiveRouResult {
  std::vector<double> samples;
  AcceptanceStats stats;
  SupportSet supports;
};

AdaptiveRouResult adaptive_rou_sample(std::shared_ptr<const PotentialModel> model,
                                      std::vector<double> initial_supports, std::size_t n,
                                      Rng& rng, const RouOptions& options = {});

struct BoundingRectangle {
  double u_max = 0.0;
  double v_min = 0.0;
  double v_max = 0.0;
};

/// Rectangle enclosing A from one bound per sign of the support.
BoundingRectangle bounding_rectangle(const PotentialModel& model, double rho,
                                     const BoundOptions& options = {});

/// Plain (non-adaptive) RoU rejection from the bounding rectangle.
class RectangleRouSampler {
 public:
  RectangleRouSampler(std::shared_ptr<const PotentialModel> model, double rho = 1.0,
                      const BoundOptions& options = {});

  double draw(Rng& rng);
  const BoundingRectangle& rectangle() const { return rect_; }
  const AcceptanceStats& stats() const { return stats_; }

 private:
  std::shared_ptr<const PotentialModel> model_;
  double rho_;
  BoundingRectangle rect_;
  AcceptanceStats stats_;
};

struct RegionDump {
  std::vector<Triangle> triangles;
  std::vector<Point2> boundary;  // (x p^{rho/(rho+1)}, p^{1/(rho+1)})
};

/// Triangles of the current cover plus the boundary of A over a
/// log-spaced grid of `probes` abscissae.
RegionDump export_region(const RouSampler& sampler, std::size_t probes);

/// Log-spaced probe abscissae covering the model support (both signs when
/// the support straddles 0).
std::vector<double> probe_grid(const Interval& support, std::size_t probes);

}  // namespace arsrou

#endif  // ARSROU_ROU_HPP
