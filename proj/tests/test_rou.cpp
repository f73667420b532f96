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

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "arsrou/error.hpp"
#include "arsrou/rou.hpp"
#include "oracles.hpp"

namespace arsrou {
namespace {

using std::numbers::pi;

std::shared_ptr<const PotentialModel> exponential_model() {
  return std::make_shared<const PotentialModel>(
      std::vector<Term>{{marginals::linear_halfline(1), nonlinearities::identity()}},
      Interval(0, kInf));
}

std::shared_ptr<const PotentialModel> gaussian_model() {
  return std::make_shared<const PotentialModel>(
      std::vector<Term>{{marginals::gaussian(1), nonlinearities::identity()}},
      Interval::real_line());
}

std::shared_ptr<const PotentialModel> artificial() {
  return std::make_shared<const PotentialModel>(builtin_model("artificial3obs", {}));
}

std::vector<double> nine_supports() { return {0, 0.3, 0.7, 1, 1.5, 2, 2.5, 3.4, 5}; }

Point2 boundary_point(const PotentialModel& m, double rho, double x) {
  const double log_p = -m.potential(x);
  const double u = std::exp(log_p / (rho + 1));
  return {x * std::pow(u, rho), u};
}

// Counts probes whose boundary point escapes the triangle of its own cone.
int coverage_violations(const PotentialModel& m, double rho, const TriangleCover& cover,
                        std::size_t probes) {
  int bad = 0;
  for (double x : probe_grid(m.support(), probes)) {
    if (!m.contains(x)) continue;
    const Point2 p = boundary_point(m, rho, x);
    if (!(p.u > 0)) continue;
    const std::size_t k = cover.cell_of(p);
    if (k == cover.size() || !cover.cells[k].triangle.contains(p)) ++bad;
  }
  return bad;
}

TEST(TriangleSampling, FormulaEndpoints) {
  const Triangle t = Triangle::from_vertices({0, 0}, {2, 1}, {-1, 3});
  auto same = [](Point2 a, Point2 b) { return a.v == b.v && a.u == b.u; };
  EXPECT_TRUE(same(sample_uniform_triangle(t, 1, 1), t.v1));
  EXPECT_TRUE(same(sample_uniform_triangle(t, 0, 1), t.v3));
  EXPECT_TRUE(same(sample_uniform_triangle(t, 0, 0), t.v2));
}

TEST(TriangleSampling, UnitTriangleCentroid) {
  const Triangle t = Triangle::from_vertices({0, 0}, {1, 0}, {0, 1});
  EXPECT_DOUBLE_EQ(t.area, 0.5);
  Rng rng(41);
  double sv = 0, su = 0;
  const int n = 1000000;
  for (int i = 0; i < n; ++i) {
    const Point2 p = sample_uniform_triangle(t, rng);
    ASSERT_GE(p.v, 0.0);
    ASSERT_GE(p.u, 0.0);
    ASSERT_LE(p.v + p.u, 1.0 + 1e-15);
    sv += p.v;
    su += p.u;
  }
  EXPECT_NEAR(sv / n, 1.0 / 3, 0.003);
  EXPECT_NEAR(su / n, 1.0 / 3, 0.003);
}

TEST(BuildTriangle, QuarterConeUnitRadius) {
  // u_bound = 1, v_bound = 0 gives R = 1.
  const Triangle t = build_triangle(1.0, 0.0, 0.0, pi / 2);
  EXPECT_NEAR(t.area, 1.0, 1e-12);
  EXPECT_NEAR(std::hypot(t.v2.v, t.v2.u), std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(std::hypot(t.v3.v, t.v3.u), std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(t.v2.v, 0.0, 1e-12);  // on the u axis
  EXPECT_NEAR(t.v3.u, 0.0, 1e-12);  // on the v axis
}

TEST(BuildTriangle, ContainsSector) {
  Rng rng(42);
  for (int c = 0; c < 50; ++c) {
    double a = -pi / 2 + pi * rng.uniform();
    double b = -pi / 2 + pi * rng.uniform();
    if (a > b) std::swap(a, b);
    if (b - a < 1e-6) continue;
    const double u_bound = 3 * rng.uniform(), v_bound = 3 * rng.uniform();
    const double r = std::hypot(u_bound, v_bound);
    const Triangle t = build_triangle(u_bound, v_bound, a, b);
    for (int i = 0; i < 1000; ++i) {
      const double ang = a + (b - a) * rng.uniform();
      const double s = rng.uniform();
      ASSERT_TRUE(t.contains({r * std::sin(ang), r * std::cos(ang)}));
      ASSERT_TRUE(t.contains({s * r * std::sin(ang), s * r * std::cos(ang)}));
    }
  }
}

TEST(BuildTriangle, SymmetricCone) {
  const Triangle t = build_triangle(0.7, 1.3, -0.4, 0.4);
  EXPECT_NEAR(t.v2.v, -t.v3.v, 1e-14);
  EXPECT_NEAR(t.v2.u, t.v3.u, 1e-14);
}

TEST(BuildTriangle, Preconditions) {
  EXPECT_THROW(build_triangle(1, 1, 0.3, 0.3), Error);
  EXPECT_THROW(build_triangle(1, 1, 0.3, 0.3 + 1e-13), Error);
  EXPECT_THROW(build_triangle(1, 1, 0.5, 0.1), Error);
  EXPECT_THROW(build_triangle(1, 1, -2, 0.1), Error);
  EXPECT_THROW(build_triangle(kInf, 1, 0, 1), Error);
}

TEST(Cover, ExponentialThreeSupports) {
  const auto m = exponential_model();
  const auto cover = build_cover(*m, 1.0, SupportSet({0.0, 1.0, 3.0}));
  ASSERT_EQ(cover.size(), 3u);
  const auto angles = cover.angles();
  ASSERT_EQ(angles.size(), 4u);
  EXPECT_NEAR(angles[0], 0.0, 1e-15);
  EXPECT_NEAR(angles[1], std::atan(1.0), 1e-15);
  EXPECT_NEAR(angles[2], std::atan(3.0), 1e-15);
  EXPECT_NEAR(angles[3], pi / 2, 1e-15);
  double wsum = 0;
  for (double w : cover.weights) {
    EXPECT_GE(w, 0.0);
    wsum += w;
  }
  EXPECT_NEAR(wsum, 1.0, 1e-12);
  EXPECT_NEAR(cover.cumulative.back(), 1.0, 1e-12);
  for (const auto& cell : cover.cells) {
    EXPECT_EQ(cell.triangle.v1.v, 0.0);
    EXPECT_EQ(cell.triangle.v1.u, 0.0);
    EXPECT_GE(cell.triangle.v2.u, 0.0);
    EXPECT_GE(cell.triangle.v3.u, 0.0);
  }
  EXPECT_EQ(coverage_violations(*m, 1.0, cover, 10000), 0);
}

TEST(Cover, ArtificialNineSupports) {
  const auto m = artificial();
  const auto cover = build_cover(*m, 1.0, SupportSet(nine_supports()));
  EXPECT_EQ(cover.size(), 9u);
  EXPECT_EQ(coverage_violations(*m, 1.0, cover, 10000), 0);
}

TEST(Cover, GaussianBothSides) {
  const auto m = gaussian_model();
  const auto cover = build_cover(*m, 1.0, SupportSet({-2.0, -0.5, 0.0, 1.0, 2.5}));
  EXPECT_EQ(cover.size(), 6u);
  EXPECT_NEAR(cover.angles().front(), -pi / 2, 1e-15);
  EXPECT_EQ(coverage_violations(*m, 1.0, cover, 10000), 0);
}

TEST(Cover, MissingZeroSupport) {
  try {
    build_cover(*exponential_model(), 1.0, SupportSet({1.0, 3.0}));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::precondition);
  }
  EXPECT_THROW(build_cover(*gaussian_model(), 1.0, SupportSet({-1.0, 1.0})), Error);
}

TEST(Cover, HeavyTailNeedsLargerRho) {
  // p(x) proportional to (1+x)^{-3/2}: x p(x)^{1/2} grows without bound.
  MarginalPotential log_tail{"log_tail", [](double t) { return 1.5 * std::log1p(t); },
                             [](double t) { return 1.5 / (1 + t); }, 0.0, 0.0,
                             Interval(-1, kInf)};
  const PotentialModel m({{log_tail, nonlinearities::identity()}}, Interval(0, kInf));
  try {
    build_cover(m, 1.0, SupportSet({0.0, 1.0}));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::unbounded_region);
  }
}

TEST(Accept, Examples) {
  const auto m = exponential_model();
  EXPECT_TRUE(rou_accept(*m, 1.0, {0.5, 0.5}));
  EXPECT_TRUE(rou_accept(*m, 1.0, {0.0, 1e-3}));
  const double x = 1.0, u = std::exp(-0.5 * x) * (1 + 1e-6);
  EXPECT_FALSE(rou_accept(*m, 1.0, {x * u, u}));
  EXPECT_FALSE(rou_accept(*m, 1.0, {-0.1, 0.5}));  // x outside the domain
  EXPECT_FALSE(rou_accept(*m, 1.0, {0.1, 0.0}));
  EXPECT_TRUE(rou_accept_standard(*m, {0.5, 0.5}));
  // rho = 2: x = v / u^2.
  EXPECT_TRUE(rou_accept(*m, 2.0, {0.25, 0.5}));  // x = 1, p^{1/3} = 0.7165
  EXPECT_FALSE(rou_accept(*m, 2.0, {0.64, 0.8}));  // x = 1
}

TEST(Sampler, StandardPathMatchesGeneralPath) {
  const auto m = artificial();
  RouOptions general;
  RouOptions standard;
  standard.standard_path = true;
  RouSampler a(m, nine_supports(), general);
  RouSampler b(m, nine_supports(), standard);
  Rng ra(43), rb(43);
  for (int i = 0; i < 2000; ++i) {
    const double xa = a.draw(ra), xb = b.draw(rb);
    ASSERT_EQ(xa, xb);
  }
  EXPECT_EQ(a.stats().trials_per_accept, b.stats().trials_per_accept);
  RouOptions bad;
  bad.standard_path = true;
  bad.rho = 2;
  EXPECT_THROW(RouSampler(m, nine_supports(), bad), Error);
}

TEST(Sampler, ExponentialKs) {
  Rng rng(44);
  const auto res = adaptive_rou_sample(exponential_model(), {0.0, 1.0, 3.0}, 10000, rng);
  EXPECT_LT(oracle::ks_statistic(res.samples, [](double x) { return 1 - std::exp(-x); }), 0.015);
}

TEST(Sampler, GaussianKs) {
  Rng rng(45);
  const auto res = adaptive_rou_sample(gaussian_model(), {-1.0, 0.0, 1.0}, 10000, rng);
  auto phi = [](double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); };
  EXPECT_LT(oracle::ks_statistic(res.samples, phi), 0.02);
}

TEST(Sampler, ArtificialKs) {
  const auto m = artificial();
  Rng rng(46);
  const auto res = adaptive_rou_sample(m, {}, 10000, rng);
  const oracle::Cdf cdf([&](double x) { return std::exp(-m->potential(x)); }, 0, kInf,
                        nine_supports());
  EXPECT_LT(oracle::ks_statistic(res.samples, cdf), 0.02);
}

TEST(Sampler, GeneralizedRhoKs) {
  for (double rho : {2.0, 3.0}) {
    RouOptions opt;
    opt.rho = rho;
    Rng rng(47);
    const auto res = adaptive_rou_sample(exponential_model(), {0.0, 1.0}, 5000, rng, opt);
    EXPECT_LT(oracle::ks_statistic(res.samples, [](double x) { return 1 - std::exp(-x); }), 0.025)
        << "rho " << rho;
    const auto g = adaptive_rou_sample(gaussian_model(), {-1.0, 0.0, 1.0}, 5000, rng, opt);
    auto phi = [](double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); };
    EXPECT_LT(oracle::ks_statistic(g.samples, phi), 0.025) << "rho " << rho;
  }
}

TEST(Sampler, AcceptanceMatchesAreaRatio) {
  const auto m = artificial();
  for (double rho : {1.0, 2.0}) {
    RouOptions opt;
    opt.rho = rho;
    const RouSampler s(m, nine_supports(), opt);
    const double mass = oracle::Cdf([&](double x) { return std::exp(-m->potential(x)); }, 0,
                                    kInf, nine_supports())
                            .total();
    const double ratio = mass / (rho + 1) / s.cover().total_area;
    ASSERT_GT(ratio, 0.0);
    ASSERT_LE(ratio, 1.0);
    Rng rng(48);
    const int n = 100000;
    int hits = 0;
    for (int i = 0; i < n; ++i) hits += s.propose(rng).accepted;
    EXPECT_TRUE(oracle::within_binomial(hits, n, ratio)) << hits << " vs " << n * ratio;
  }
}

TEST(Sampler, RefinementKeepsCoverage) {
  for (double rho : {1.0, 2.0, 3.0}) {
    const auto m = artificial();
    RouOptions opt;
    opt.rho = rho;
    RouSampler s(m, nine_supports(), opt);
    Rng rng(49);
    std::uint64_t seen = 0;
    while (s.rejections() < 100) {
      s.draw(rng);
      if (s.rejections() != seen) {
        seen = s.rejections();
        ASSERT_EQ(s.cover().size(), s.supports().size());
        if (seen % 10 == 0) ASSERT_EQ(coverage_violations(*m, rho, s.cover(), 2000), 0);
      }
    }
    EXPECT_EQ(coverage_violations(*m, rho, s.cover(), 10000), 0) << "rho " << rho;
    EXPECT_EQ(s.supports().size(), 9 + s.rejections() - s.skipped_insertions());
  }
}

TEST(Sampler, RefinementTouchesOnlySplitCone) {
  const auto m = artificial();
  RouSampler s(m, nine_supports());
  Rng rng(50);
  for (int step = 0; step < 20; ++step) {
    const auto before = s.cover().cells;
    const std::size_t supports_before = s.supports().size();
    const auto rejected = s.rejections();
    while (s.rejections() == rejected) s.draw(rng);
    // One draw may reject several candidates; each insertion replaces one cell by two.
    const std::size_t added = s.supports().size() - supports_before;
    const auto& after = s.cover().cells;
    ASSERT_EQ(after.size(), before.size() + added);
    std::size_t kept = 0;
    for (const auto& b : before) {
      for (const auto& a : after) {
        if (a.interval() == b.interval() && a.radius == b.radius &&
            a.triangle.area == b.triangle.area) {
          ++kept;
          break;
        }
      }
    }
    EXPECT_GE(kept + added, before.size());
  }
}

TEST(Sampler, ConesAreDisjoint) {
  const auto m = gaussian_model();
  const RouSampler s(m, {-2.0, -0.5, 0.0, 1.0, 2.5});
  Rng rng(51);
  for (std::size_t k = 0; k < s.cover().size(); ++k) {
    const Triangle& t = s.cover().cells[k].triangle;
    for (int i = 0; i < 1000; ++i) {
      // Shrink towards the centroid to stay off the shared rays.
      const Point2 p = sample_uniform_triangle(t, rng);
      const Point2 c{(t.v1.v + t.v2.v + t.v3.v) / 3, (t.v1.u + t.v2.u + t.v3.u) / 3};
      const Point2 q{c.v + 0.999 * (p.v - c.v), c.u + 0.999 * (p.u - c.u)};
      ASSERT_EQ(s.cover().cell_of(q), k);
    }
  }
}

TEST(Sampler, SectorsInsideTriangles) {
  const auto m = artificial();
  for (double rho : {1.0, 2.5}) {
    RouOptions opt;
    opt.rho = rho;
    const RouSampler s(m, nine_supports(), opt);
    Rng rng(52);
    for (const auto& cell : s.cover().cells) {
      const double a = std::atan(cell.edge_lo), b = std::atan(cell.edge_hi);
      for (int i = 0; i < 1000; ++i) {
        const double ang = a + (b - a) * rng.uniform();
        ASSERT_TRUE(cell.triangle.contains(
            {cell.radius * std::sin(ang), cell.radius * std::cos(ang)}));
      }
    }
  }
}

TEST(Rectangle, ExponentialBounds) {
  const auto r = bounding_rectangle(*exponential_model(), 1.0);
  EXPECT_GE(r.u_max, 1.0 - 1e-12);
  EXPECT_EQ(r.v_min, 0.0);
  EXPECT_GE(r.v_max, 2 / std::exp(1.0) - 1e-12);
}

TEST(Rectangle, SymmetricTarget) {
  const auto r = bounding_rectangle(*gaussian_model(), 1.0);
  EXPECT_DOUBLE_EQ(r.v_min, -r.v_max);
  EXPECT_GE(r.v_max, std::sqrt(2.0) * std::exp(-0.5) - 1e-12);
}

TEST(Rectangle, BaselineAgreesWithAdaptive) {
  const auto m = artificial();
  RectangleRouSampler base(m);
  Rng r1(53), r2(54);
  std::vector<double> a(10000), b;
  for (auto& x : a) x = base.draw(r1);
  b = adaptive_rou_sample(m, {}, 10000, r2).samples;
  EXPECT_GT(oracle::ks_two_sample(a, b).p, 0.01);
  EXPECT_LT(base.stats().acceptance_rate(), 1.0);
}

TEST(Export, TrianglesAndBoundary) {
  const auto m = exponential_model();
  const RouSampler s(m, {0.0, 1.0, 3.0});
  const auto dump = export_region(s, 500);
  ASSERT_EQ(dump.triangles.size(), 3u);
  ASSERT_FALSE(dump.boundary.empty());
  for (const Point2& p : dump.boundary) {
    ASSERT_TRUE(s.cover().contains(p));
    if (p.u > 0) {
      const double x = p.v / p.u;
      EXPECT_LE(2 * std::log(p.u), -m->potential(x) + 1e-9);
    }
  }
}

TEST(ProbeGrid, LogSpacedOnBothSides) {
  const auto g = probe_grid(Interval::real_line(), 100);
  EXPECT_TRUE(std::is_sorted(g.begin(), g.end()));
  EXPECT_NE(std::find(g.begin(), g.end(), 0.0), g.end());
  EXPECT_LT(g.front(), -1e5);
  EXPECT_GT(g.back(), 1e5);
}

}  // namespace
}  // namespace arsrou
