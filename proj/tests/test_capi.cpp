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

// Exercises the shared library strictly through its C header.

#include <cmath>
#include <cstring>
#include <vector>

#include <gtest/gtest.h>

#include "arsrou/arsrou.h"

namespace {

struct ModelHandle {
  arsrou_model* p = nullptr;
  ~ModelHandle() { arsrou_model_free(p); }
};

struct SamplerHandle {
  arsrou_sampler* p = nullptr;
  ~SamplerHandle() { arsrou_sampler_free(p); }
};

TEST(CApi, BuiltinModelQueries) {
  ModelHandle m;
  ASSERT_EQ(arsrou_model_builtin("artificial3obs", nullptr, &m.p), ARSROU_OK);
  EXPECT_EQ(arsrou_model_term_count(m.p), 4u);
  double lo = 0, hi = 0;
  arsrou_model_support(m.p, &lo, &hi);
  EXPECT_EQ(lo, 0.0);
  EXPECT_TRUE(std::isinf(hi));
  double buf[8];
  const size_t n = arsrou_model_default_supports(m.p, buf, 8);
  EXPECT_EQ(n, 4u);
  EXPECT_EQ(buf[0], 0.0);
  EXPECT_EQ(arsrou_model_default_supports(m.p, nullptr, 0), 4u);

  double v = 0, r = 0;
  ASSERT_EQ(arsrou_model_eval(m.p, 2.0, &v), ARSROU_OK);
  ASSERT_EQ(arsrou_model_eval_reduced(m.p, 3, 2.0, &r), ARSROU_OK);
  EXPECT_NEAR(v - r, 0.2 * 2.0, 1e-12);
}

TEST(CApi, ErrorCodesAndMessages) {
  ModelHandle m;
  EXPECT_EQ(arsrou_model_builtin("nope", nullptr, &m.p), ARSROU_E_PRECONDITION);
  EXPECT_EQ(m.p, nullptr);
  EXPECT_NE(std::strstr(arsrou_last_error(), "nope"), nullptr);
  EXPECT_EQ(arsrou_model_builtin("sv_step", "{\"y\": 1", &m.p), ARSROU_E_CONFIG);
  EXPECT_EQ(arsrou_model_builtin(nullptr, nullptr, &m.p), ARSROU_E_INVALID_ARGUMENT);
  EXPECT_EQ(arsrou_model_from_config("{\"terms\": 3}", &m.p), ARSROU_E_CONFIG);

  ASSERT_EQ(arsrou_model_builtin("artificial3obs", "{\"lambda\": 0.3}", &m.p), ARSROU_OK);
  double v = 0;
  EXPECT_EQ(arsrou_model_eval(m.p, -1.0, &v), ARSROU_E_DOMAIN);
  EXPECT_EQ(arsrou_model_eval_reduced(m.p, 9, 1.0, &v), ARSROU_E_INDEX);
  EXPECT_EQ(arsrou_model_eval(m.p, 1.0, nullptr), ARSROU_E_INVALID_ARGUMENT);
  EXPECT_STREQ(arsrou_status_name(ARSROU_E_UNBOUNDED_REGION), "unbounded_region");
  EXPECT_STREQ(arsrou_status_name(ARSROU_OK), "ok");
}

TEST(CApi, SamplersAreDeterministic) {
  ModelHandle m;
  ASSERT_EQ(arsrou_model_builtin("artificial3obs", nullptr, &m.p), ARSROU_OK);
  for (int scheme = 0; scheme < 2; ++scheme) {
    SamplerHandle a, b;
    if (scheme == 0) {
      ASSERT_EQ(arsrou_sampler_create_ars1(m.p, 3, nullptr, 0, 5, &a.p), ARSROU_OK);
      ASSERT_EQ(arsrou_sampler_create_ars1(m.p, 3, nullptr, 0, 5, &b.p), ARSROU_OK);
    } else {
      ASSERT_EQ(arsrou_sampler_create_rou(m.p, 1.0, nullptr, 0, 5, &a.p), ARSROU_OK);
      ASSERT_EQ(arsrou_sampler_create_rou(m.p, 1.0, nullptr, 0, 5, &b.p), ARSROU_OK);
    }
    std::vector<double> xa(500), xb(500);
    std::vector<uint64_t> ta(500);
    ASSERT_EQ(arsrou_sampler_draw(a.p, 500, xa.data(), ta.data()), ARSROU_OK);
    ASSERT_EQ(arsrou_sampler_draw(b.p, 500, xb.data(), nullptr), ARSROU_OK);
    EXPECT_EQ(xa, xb);
    uint64_t trials = 0;
    for (auto t : ta) trials += t;
    EXPECT_EQ(trials - 500, arsrou_sampler_rejections(a.p));
    EXPECT_GE(arsrou_sampler_support_count(a.p), 4u);
  }
}

TEST(CApi, SamplerErrors) {
  ModelHandle m;
  ASSERT_EQ(arsrou_model_builtin("artificial3obs", nullptr, &m.p), ARSROU_OK);
  SamplerHandle s;
  EXPECT_EQ(arsrou_sampler_create_ars1(m.p, 2, nullptr, 0, 1, &s.p), ARSROU_E_PRECONDITION);
  EXPECT_EQ(arsrou_sampler_create_ars1(m.p, 4, nullptr, 0, 1, &s.p), ARSROU_E_INDEX);
  const double no_zero[] = {1.0, 2.0};
  EXPECT_EQ(arsrou_sampler_create_rou(m.p, 1.0, no_zero, 2, 1, &s.p), ARSROU_E_PRECONDITION);
  EXPECT_EQ(arsrou_sampler_create_rou(m.p, 0.5, nullptr, 0, 1, &s.p), ARSROU_E_PRECONDITION);
  EXPECT_EQ(arsrou_sampler_create_rou(nullptr, 1.0, nullptr, 0, 1, &s.p),
            ARSROU_E_INVALID_ARGUMENT);
  EXPECT_EQ(s.p, nullptr);

}

TEST(CApi, RegionExport) {
  ModelHandle m;
  ASSERT_EQ(arsrou_model_from_config(
                R"({"support": {"lo": 0}, "terms": [{"marginal": {"name": "linear_halfline", "lambda": 1}}], "supports": [0, 1, 3]})",
                &m.p),
            ARSROU_OK);
  SamplerHandle s;
  ASSERT_EQ(arsrou_sampler_create_rou(m.p, 1.0, nullptr, 0, 1, &s.p), ARSROU_OK);
  arsrou_region* r = nullptr;
  ASSERT_EQ(arsrou_region_export(s.p, 200, &r), ARSROU_OK);
  EXPECT_EQ(arsrou_region_triangle_count(r), 3u);
  double tri[7], pt[2];
  ASSERT_EQ(arsrou_region_triangle(r, 0, tri), ARSROU_OK);
  EXPECT_EQ(tri[0], 0.0);
  EXPECT_GT(tri[6], 0.0);
  EXPECT_EQ(arsrou_region_triangle(r, 3, tri), ARSROU_E_INDEX);
  ASSERT_GT(arsrou_region_boundary_count(r), 0u);
  ASSERT_EQ(arsrou_region_boundary(r, 0, pt), ARSROU_OK);
  arsrou_region_free(r);

  SamplerHandle a;
  ASSERT_EQ(arsrou_sampler_create_ars1(m.p, 0, nullptr, 0, 1, &a.p), ARSROU_OK);
  EXPECT_EQ(arsrou_region_export(a.p, 10, &r), ARSROU_E_INVALID_ARGUMENT);
}

TEST(CApi, AcceptanceCurve) {
  ModelHandle m;
  ASSERT_EQ(arsrou_model_builtin("artificial3obs", nullptr, &m.p), ARSROU_OK);
  std::vector<double> c1(50), c2(50);
  ASSERT_EQ(arsrou_acceptance_curve(m.p, ARSROU_SCHEME_ROU, 0, 1.0, nullptr, 0, 20, 50, 9, 1,
                                    c1.data()),
            ARSROU_OK);
  ASSERT_EQ(arsrou_acceptance_curve(m.p, ARSROU_SCHEME_ROU, 0, 1.0, nullptr, 0, 20, 50, 9, 3,
                                    c2.data()),
            ARSROU_OK);
  EXPECT_EQ(c1, c2);  // thread count does not change the result
  for (double r : c1) {
    EXPECT_GT(r, 0.0);
    EXPECT_LE(r, 1.0);
  }
  EXPECT_EQ(arsrou_acceptance_curve(m.p, ARSROU_SCHEME_ARS1, 3, 1.0, nullptr, 0, 0, 50, 9, 1,
                                    c1.data()),
            ARSROU_E_PRECONDITION);
}

TEST(CApi, StochasticVolatility) {
  std::vector<double> states(15), obs(15);
  ASSERT_EQ(arsrou_sv_simulate(0.8, 0.9, 15, 1.0, 3, states.data(), obs.data()), ARSROU_OK);
  std::vector<arsrou_filter_row> rows(15);
  ASSERT_EQ(arsrou_sv_filter(0.8, 0.9, 0, obs.data(), states.data(), 15, 200, 4, rows.data()),
            ARSROU_OK);
  EXPECT_EQ(rows[14].k, 15u);
  EXPECT_EQ(rows[14].truth, states[14]);
  ASSERT_EQ(arsrou_sv_filter(0.8, 0.9, 0, obs.data(), nullptr, 15, 200, 4, rows.data()), ARSROU_OK);
  EXPECT_TRUE(std::isnan(rows[0].truth));
  EXPECT_EQ(arsrou_sv_filter(0.8, 0.0, 0, obs.data(), nullptr, 15, 200, 4, rows.data()),
            ARSROU_E_PRECONDITION);
  EXPECT_EQ(arsrou_sv_filter(0.8, 0.9, 0, nullptr, nullptr, 0, 200, 4, nullptr), ARSROU_OK);
}

TEST(CApi, SplitSeedIsStable) {
  EXPECT_EQ(arsrou_split_seed(42, 0), arsrou_split_seed(42, 0));
  EXPECT_NE(arsrou_split_seed(42, 0), arsrou_split_seed(42, 1));
}

}  // namespace
