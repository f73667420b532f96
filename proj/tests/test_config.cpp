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

#include <gtest/gtest.h>

#include "arsrou/config.hpp"
#include "arsrou/error.hpp"

namespace arsrou {
namespace {

ErrorCode code_of(const std::string& text) {
  try {
    parse_model_config(text);
  } catch (const Error& err) {
    return err.code();
  }
  return ErrorCode::invariant_violation;  // sentinel: nothing thrown
}

TEST(Config, BuiltinWithParams) {
  const auto m = parse_model_config(R"({"builtin": "sv_step", "params": {"y": 0.3, "alpha": -0.2, "sigma": 0.9}})");
  const auto ref = builtin_model("sv_step", {{"y", 0.3}, {"alpha", -0.2}, {"sigma", 0.9}});
  for (double x : {0.1, 0.7, 2.0, 9.0}) EXPECT_EQ(m.potential(x), ref.potential(x));
}

TEST(Config, TermsReproduceArtificialModel) {
  const auto m = parse_model_config(R"({
    "support": {"lo": 0, "hi": "inf"},
    "terms": [
      {"marginal": {"name": "generalized_gamma", "alpha": 4, "beta": 2, "observed": 2.314},
       "nonlinearity": {"name": "scaled_exp", "a": -2, "b": 1.1}},
      {"marginal": {"name": "generalized_gamma", "alpha": 2, "beta": 2, "observed": 1.6},
       "nonlinearity": {"name": "scaled_log", "c": -0.8, "d": 1.5}},
      {"marginal": {"name": "quadratic", "observed": 2},
       "nonlinearity": {"name": "shifted_square", "e": 2}},
      {"marginal": {"name": "linear_halfline", "lambda": 0.2}}
    ],
    "supports": [0, 0.5857864376269049, 2, 3.414213562373095]
  })");
  const auto ref = builtin_model("artificial3obs", {});
  ASSERT_EQ(m.terms().size(), 4u);
  EXPECT_EQ(m.support(), ref.support());
  for (double x : {0.06, 0.3, 1.0, 2.0, 3.7, 8.0}) {
    if (std::isinf(ref.potential(x))) {
      EXPECT_TRUE(std::isinf(m.potential(x)));
      continue;
    }
    EXPECT_NEAR(m.potential(x), ref.potential(x), 1e-12 * (1 + std::abs(ref.potential(x))));
  }
  EXPECT_EQ(m.suggested_supports().size(), 4u);
}

TEST(Config, IdentityIsTheDefaultNonlinearity) {
  const auto m = parse_model_config(R"({"terms": [{"marginal": {"name": "gaussian", "sigma": 2}}]})");
  EXPECT_EQ(m.support(), Interval::real_line());
  EXPECT_NEAR(m.potential(3.0) - m.potential(0.0), 9.0 / 8.0, 1e-14);
}

TEST(Config, Errors) {
  EXPECT_EQ(code_of("not json"), ErrorCode::config);
  EXPECT_EQ(code_of(R"({"builtin": "sv_step", "params": {"y": 1}})"), ErrorCode::config);
  EXPECT_EQ(code_of(R"({"builtin": "nope"})"), ErrorCode::config);
  EXPECT_EQ(code_of(R"({"builtin": "sv_step", "extra": 1})"), ErrorCode::config);
  EXPECT_EQ(code_of(R"({"terms": []})"), ErrorCode::config);
  EXPECT_EQ(code_of(R"({"terms": [{"marginal": {"name": "cauchy"}}]})"), ErrorCode::config);
  EXPECT_EQ(code_of(R"({"terms": [{"marginal": {"name": "gaussian"}}]})"), ErrorCode::config);
  EXPECT_EQ(code_of(R"({"terms": [{"marginal": {"name": "gaussian", "sigma": 1, "mu": 0}}]})"),
            ErrorCode::config);
  EXPECT_EQ(code_of(R"({"terms": [{"marginal": {"name": "gaussian", "sigma": "inf"}}]})"),
            ErrorCode::config);
  EXPECT_EQ(code_of(R"({"support": {"lo": 2, "hi": 1}, "terms": [{"marginal": {"name": "quadratic"}}]})"),
            ErrorCode::config);
  EXPECT_EQ(code_of(R"({"terms": [{"marginal": {"name": "quadratic"}, "nonlinearity": {"name": "cube"}}]})"),
            ErrorCode::config);
}

TEST(Config, ErrorMessageNamesTheField) {
  try {
    parse_model_config(R"({"terms": [{"marginal": {"name": "gaussian", "sigma": 1, "mu": 0}}]})");
    FAIL();
  } catch (const Error& err) {
    EXPECT_NE(std::string(err.what()).find("terms[0].marginal"), std::string::npos) << err.what();
    EXPECT_NE(std::string(err.what()).find("mu"), std::string::npos);
  }
}

}  // namespace
}  // namespace arsrou
