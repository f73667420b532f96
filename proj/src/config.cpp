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

#include "arsrou/config.hpp"

#include <cmath>
#include <set>

#include <json.hpp>

#include "arsrou/error.hpp"

namespace arsrou {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::config, what); }

double number(const json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  fail(where + ": expected a number or \"inf\"/\"-inf\"");
}

double finite_number(const json& j, const std::string& where) {
  const double v = number(j, where);
  if (!std::isfinite(v)) fail(where + ": must be finite");
  return v;
}

void only_keys(const json& obj, const std::set<std::string>& keys, const std::string& where) {
  if (!obj.is_object()) fail(where + ": expected an object");
  for (const auto& [k, v] : obj.items()) {
    if (!keys.count(k)) fail(where + ": unknown key '" + k + "'");
  }
}

double field(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) fail(where + ": missing '" + key + "'");
  return finite_number(obj.at(key), where + "." + key);
}

double field_or(const json& obj, const std::string& key, double fallback,
                const std::string& where) {
  return obj.contains(key) ? finite_number(obj.at(key), where + "." + key) : fallback;
}

std::string name_of(const json& obj, const std::string& where) {
  if (!obj.is_object() || !obj.contains("name") || !obj.at("name").is_string()) {
    fail(where + ": missing string 'name'");
  }
  return obj.at("name").get<std::string>();
}

MarginalPotential parse_marginal(const json& j, const std::string& where) {
  const std::string name = name_of(j, where);
  MarginalPotential m;
  if (name == "quadratic") {
    only_keys(j, {"name", "c", "observed"}, where);
    m = marginals::quadratic(field_or(j, "c", 1.0, where));
  } else if (name == "gaussian") {
    only_keys(j, {"name", "sigma", "observed"}, where);
    m = marginals::gaussian(field(j, "sigma", where));
  } else if (name == "generalized_gamma") {
    only_keys(j, {"name", "alpha", "beta", "observed"}, where);
    m = marginals::generalized_gamma(field(j, "alpha", where), field(j, "beta", where));
  } else if (name == "linear_halfline") {
    only_keys(j, {"name", "lambda", "observed"}, where);
    m = marginals::linear_halfline(field(j, "lambda", where));
  } else if (name == "log_chi_square") {
    only_keys(j, {"name", "observed"}, where);
    m = marginals::log_chi_square();
  } else {
    fail(where + ": unknown marginal '" + name + "'");
  }
  if (j.contains("observed")) {
    m = marginals::residual(m, field(j, "observed", where));
  }
  return m;
}

Nonlinearity parse_nonlinearity(const json& j, const std::string& where) {
  const std::string name = name_of(j, where);
  if (name == "identity") {
    only_keys(j, {"name"}, where);
    return nonlinearities::identity();
  }
  if (name == "affine") {
    only_keys(j, {"name", "slope", "intercept"}, where);
    return nonlinearities::affine(field(j, "slope", where), field_or(j, "intercept", 0.0, where));
  }
  if (name == "scaled_exp") {
    only_keys(j, {"name", "a", "b"}, where);
    return nonlinearities::scaled_exp(field(j, "a", where), field(j, "b", where));
  }
  if (name == "scaled_log") {
    only_keys(j, {"name", "c", "d"}, where);
    return nonlinearities::scaled_log(field(j, "c", where), field(j, "d", where));
  }
  if (name == "shifted_square") {
    only_keys(j, {"name", "e"}, where);
    return nonlinearities::shifted_square(field(j, "e", where));
  }
  if (name == "log_square") {
    only_keys(j, {"name", "scale", "offset"}, where);
    return nonlinearities::log_square(field(j, "scale", where),
                                      field_or(j, "offset", 0.0, where));
  }
  fail(where + ": unknown nonlinearity '" + name + "'");
}

PotentialModel parse_builtin(const json& doc) {
  only_keys(doc, {"builtin", "params"}, "config");
  if (!doc.at("builtin").is_string()) fail("config.builtin: expected a string");
  ParamMap params;
  if (doc.contains("params")) {
    if (!doc.at("params").is_object()) fail("config.params: expected an object");
    for (const auto& [k, v] : doc.at("params").items()) {
      params[k] = finite_number(v, "config.params." + k);
    }
  }
  return builtin_model(doc.at("builtin").get<std::string>(), params);
}

PotentialModel parse_terms(const json& doc) {
  only_keys(doc, {"support", "terms", "supports"}, "config");
  Interval support = Interval::real_line();
  if (doc.contains("support")) {
    const json& s = doc.at("support");
    only_keys(s, {"lo", "hi"}, "config.support");
    const double lo = s.contains("lo") ? number(s.at("lo"), "config.support.lo") : -kInf;
    const double hi = s.contains("hi") ? number(s.at("hi"), "config.support.hi") : kInf;
    if (!(lo < hi)) fail("config.support: need lo < hi");
    support = Interval(lo, hi);
  }
  if (!doc.contains("terms") || !doc.at("terms").is_array() || doc.at("terms").empty()) {
    fail("config.terms: expected a nonempty array");
  }
  std::vector<Term> terms;
  std::size_t i = 0;
  for (const auto& t : doc.at("terms")) {
    const std::string where = "config.terms[" + std::to_string(i++) + "]";
    only_keys(t, {"marginal", "nonlinearity"}, where);
    if (!t.contains("marginal")) fail(where + ": missing 'marginal'");
    const Nonlinearity g = t.contains("nonlinearity")
                               ? parse_nonlinearity(t.at("nonlinearity"), where + ".nonlinearity")
                               : nonlinearities::identity();
    terms.push_back({parse_marginal(t.at("marginal"), where + ".marginal"), g});
  }
  std::vector<double> supports;
  if (doc.contains("supports")) {
    if (!doc.at("supports").is_array()) fail("config.supports: expected an array");
    for (const auto& s : doc.at("supports")) supports.push_back(finite_number(s, "config.supports"));
  }
  return PotentialModel(std::move(terms), support, std::move(supports));
}

}  // namespace

PotentialModel parse_model_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    fail(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("config: expected a JSON object");
  try {
    return doc.contains("builtin") ? parse_builtin(doc) : parse_terms(doc);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::config) throw;
    fail(e.what());
  }
}

}  // namespace arsrou
