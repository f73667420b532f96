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

#include "arsrou/arsrou.h"

#include <cmath>
#include <memory>
#include <new>
#include <string>
#include <variant>

#include <json.hpp>

#include "arsrou/ars_mixture.hpp"
#include "arsrou/config.hpp"
#include "arsrou/error.hpp"
#include "arsrou/experiments.hpp"
#include "arsrou/pf.hpp"
#include "arsrou/rou.hpp"

struct arsrou_model {
  std::shared_ptr<const arsrou::PotentialModel> model;
};

struct arsrou_sampler {
  std::variant<std::unique_ptr<arsrou::MixtureSampler>, std::unique_ptr<arsrou::RouSampler>>
      impl;
  arsrou::Rng rng;
};

struct arsrou_region {
  arsrou::RegionDump dump;
};

namespace {

thread_local std::string last_error;

arsrou_status status_of(arsrou::ErrorCode code) {
  using arsrou::ErrorCode;
  switch (code) {
    case ErrorCode::domain: return ARSROU_E_DOMAIN;
    case ErrorCode::index: return ARSROU_E_INDEX;
    case ErrorCode::sign: return ARSROU_E_SIGN;
    case ErrorCode::unbounded_region: return ARSROU_E_UNBOUNDED_REGION;
    case ErrorCode::infinite_envelope: return ARSROU_E_INFINITE_ENVELOPE;
    case ErrorCode::invariant_violation: return ARSROU_E_INVARIANT;
    case ErrorCode::precondition: return ARSROU_E_PRECONDITION;
    case ErrorCode::config: return ARSROU_E_CONFIG;
  }
  return ARSROU_E_INTERNAL;
}

arsrou_status fail(arsrou_status s, std::string what) {
  last_error = std::move(what);
  return s;
}

template <typename F>
arsrou_status guarded(F&& f) {
  try {
    f();
    last_error.clear();
    return ARSROU_OK;
  } catch (const arsrou::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(ARSROU_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(ARSROU_E_INTERNAL, e.what());
  } catch (...) {
    return fail(ARSROU_E_INTERNAL, "unknown failure");
  }
}

#define ARSROU_REQUIRE(cond, msg) \
  if (!(cond)) return fail(ARSROU_E_INVALID_ARGUMENT, msg)

std::vector<double> support_vector(const arsrou_model* m, const double* supports, size_t n) {
  if (n > 0) return {supports, supports + n};
  const auto s = m->model->suggested_supports();
  return {s.begin(), s.end()};
}

}  // namespace

extern "C" {

const char* arsrou_last_error(void) { return last_error.c_str(); }

const char* arsrou_status_name(arsrou_status status) {
  switch (status) {
    case ARSROU_OK: return "ok";
    case ARSROU_E_DOMAIN: return "domain";
    case ARSROU_E_INDEX: return "index";
    case ARSROU_E_SIGN: return "sign";
    case ARSROU_E_UNBOUNDED_REGION: return "unbounded_region";
    case ARSROU_E_INFINITE_ENVELOPE: return "infinite_envelope";
    case ARSROU_E_INVARIANT: return "invariant_violation";
    case ARSROU_E_PRECONDITION: return "precondition";
    case ARSROU_E_CONFIG: return "config";
    case ARSROU_E_INVALID_ARGUMENT: return "invalid_argument";
    case ARSROU_E_INTERNAL: return "internal";
  }
  return "unknown";
}

uint64_t arsrou_split_seed(uint64_t master, uint64_t stream) {
  return arsrou::split_seed(master, stream);
}

arsrou_status arsrou_model_builtin(const char* name, const char* params_json, arsrou_model** out) {
  ARSROU_REQUIRE(name && out, "null argument");
  *out = nullptr;
  return guarded([&] {
    arsrou::ParamMap params;
    if (params_json && *params_json) {
      nlohmann::json doc;
      try {
        doc = nlohmann::json::parse(params_json);
      } catch (const nlohmann::json::exception& e) {
        throw arsrou::Error(arsrou::ErrorCode::config, std::string("malformed JSON: ") + e.what());
      }
      if (!doc.is_object()) {
        throw arsrou::Error(arsrou::ErrorCode::config, "parameters must be a JSON object");
      }
      for (const auto& [k, v] : doc.items()) {
        if (!v.is_number()) {
          throw arsrou::Error(arsrou::ErrorCode::config, "parameter '" + k + "' is not a number");
        }
        params[k] = v.get<double>();
      }
    }
    auto m = std::make_shared<const arsrou::PotentialModel>(arsrou::builtin_model(name, params));
    *out = new arsrou_model{std::move(m)};
  });
}

arsrou_status arsrou_model_from_config(const char* json_text, arsrou_model** out) {
  ARSROU_REQUIRE(json_text && out, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto m = std::make_shared<const arsrou::PotentialModel>(arsrou::parse_model_config(json_text));
    *out = new arsrou_model{std::move(m)};
  });
}

void arsrou_model_free(arsrou_model* model) { delete model; }

size_t arsrou_model_term_count(const arsrou_model* model) {
  return model ? model->model->size() : 0;
}

void arsrou_model_support(const arsrou_model* model, double* lo, double* hi) {
  if (!model) return;
  if (lo) *lo = model->model->support().lo;
  if (hi) *hi = model->model->support().hi;
}

size_t arsrou_model_default_supports(const arsrou_model* model, double* buf, size_t cap) {
  if (!model) return 0;
  const auto s = model->model->suggested_supports();
  for (size_t i = 0; i < s.size() && i < cap && buf; ++i) buf[i] = s[i];
  return s.size();
}

arsrou_status arsrou_model_eval(const arsrou_model* model, double x, double* out) {
  ARSROU_REQUIRE(model && out, "null argument");
  return guarded([&] { *out = model->model->potential(x); });
}

arsrou_status arsrou_model_eval_reduced(const arsrou_model* model, size_t term, double x,
                                        double* out) {
  ARSROU_REQUIRE(model && out, "null argument");
  return guarded([&] { *out = model->model->reduced_potential(term, x); });
}

arsrou_status arsrou_sampler_create_ars1(const arsrou_model* model, size_t term,
                                         const double* supports, size_t n_supports,
                                         uint64_t seed, arsrou_sampler** out) {
  ARSROU_REQUIRE(model && out, "null argument");
  ARSROU_REQUIRE(supports || n_supports == 0, "null support array");
  *out = nullptr;
  return guarded([&] {
    const auto& m = model->model;
    if (term >= m->size()) {
      throw arsrou::Error(arsrou::ErrorCode::index, "proposal term index out of range");
    }
    auto q = std::make_shared<const arsrou::ExponentialDensity>(
        arsrou::ExponentialDensity::from_term(m->terms()[term], m->support()));
    auto s = std::make_unique<arsrou::MixtureSampler>(m, term, q,
                                                      support_vector(model, supports, n_supports));
    *out = new arsrou_sampler{std::move(s), arsrou::Rng(seed)};
  });
}

arsrou_status arsrou_sampler_create_rou(const arsrou_model* model, double rho,
                                        const double* supports, size_t n_supports, uint64_t seed,
                                        arsrou_sampler** out) {
  ARSROU_REQUIRE(model && out, "null argument");
  ARSROU_REQUIRE(supports || n_supports == 0, "null support array");
  *out = nullptr;
  return guarded([&] {
    arsrou::RouOptions opts;
    opts.rho = rho;
    auto s = std::make_unique<arsrou::RouSampler>(model->model,
                                                  support_vector(model, supports, n_supports), opts);
    *out = new arsrou_sampler{std::move(s), arsrou::Rng(seed)};
  });
}

void arsrou_sampler_free(arsrou_sampler* sampler) { delete sampler; }

arsrou_status arsrou_sampler_draw(arsrou_sampler* sampler, size_t n, double* samples,
                                  uint64_t* trials) {
  ARSROU_REQUIRE(sampler && (samples || n == 0), "null argument");
  return guarded([&] {
    std::visit(
        [&](auto& s) {
          for (size_t i = 0; i < n; ++i) {
            samples[i] = s->draw(sampler->rng);
            if (trials) trials[i] = s->stats().trials_per_accept.back();
          }
        },
        sampler->impl);
  });
}

size_t arsrou_sampler_support_count(const arsrou_sampler* sampler) {
  if (!sampler) return 0;
  return std::visit([](const auto& s) { return s->supports().size(); }, sampler->impl);
}

uint64_t arsrou_sampler_rejections(const arsrou_sampler* sampler) {
  if (!sampler) return 0;
  return std::visit([](const auto& s) { return s->rejections(); }, sampler->impl);
}

arsrou_status arsrou_acceptance_curve(const arsrou_model* model, arsrou_scheme scheme, size_t term,
                                      double rho, const double* supports, size_t n_supports,
                                      size_t runs, size_t samples, uint64_t seed, unsigned threads,
                                      double* curve) {
  ARSROU_REQUIRE(model && (curve || samples == 0), "null argument");
  ARSROU_REQUIRE(supports || n_supports == 0, "null support array");
  ARSROU_REQUIRE(scheme == ARSROU_SCHEME_ARS1 || scheme == ARSROU_SCHEME_ROU, "unknown scheme");
  return guarded([&] {
    arsrou::SamplerConfig cfg;
    cfg.scheme = scheme == ARSROU_SCHEME_ARS1 ? arsrou::Scheme::ars1 : arsrou::Scheme::rou;
    cfg.model = model->model;
    cfg.term = term;
    cfg.rho = rho;
    cfg.supports = support_vector(model, supports, n_supports);
    const auto c = arsrou::acceptance_curve(cfg, runs, samples, seed, threads);
    std::copy(c.begin(), c.end(), curve);
  });
}

arsrou_status arsrou_region_export(const arsrou_sampler* sampler, size_t probes,
                                   arsrou_region** out) {
  ARSROU_REQUIRE(sampler && out, "null argument");
  *out = nullptr;
  const auto* rou = std::get_if<std::unique_ptr<arsrou::RouSampler>>(&sampler->impl);
  ARSROU_REQUIRE(rou, "region export needs a RoU sampler");
  return guarded([&] { *out = new arsrou_region{arsrou::export_region(**rou, probes)}; });
}

void arsrou_region_free(arsrou_region* region) { delete region; }

size_t arsrou_region_triangle_count(const arsrou_region* region) {
  return region ? region->dump.triangles.size() : 0;
}

arsrou_status arsrou_region_triangle(const arsrou_region* region, size_t i, double out[7]) {
  ARSROU_REQUIRE(region && out, "null argument");
  if (i >= region->dump.triangles.size()) return fail(ARSROU_E_INDEX, "triangle index out of range");
  const auto& t = region->dump.triangles[i];
  const double vals[7] = {t.v1.v, t.v1.u, t.v2.v, t.v2.u, t.v3.v, t.v3.u, t.area};
  std::copy(vals, vals + 7, out);
  return ARSROU_OK;
}

size_t arsrou_region_boundary_count(const arsrou_region* region) {
  return region ? region->dump.boundary.size() : 0;
}

arsrou_status arsrou_region_boundary(const arsrou_region* region, size_t i, double out[2]) {
  ARSROU_REQUIRE(region && out, "null argument");
  if (i >= region->dump.boundary.size()) return fail(ARSROU_E_INDEX, "boundary index out of range");
  out[0] = region->dump.boundary[i].v;
  out[1] = region->dump.boundary[i].u;
  return ARSROU_OK;
}

arsrou_status arsrou_sv_simulate(double beta, double sigma, size_t steps, double x0, uint64_t seed,
                                 double* states, double* observations) {
  ARSROU_REQUIRE((states && observations) || steps == 0, "null argument");
  return guarded([&] {
    arsrou::Rng rng(seed);
    const auto traj = arsrou::simulate_sv({beta, sigma}, steps, x0, rng);
    std::copy(traj.states.begin(), traj.states.end(), states);
    std::copy(traj.observations.begin(), traj.observations.end(), observations);
  });
}

arsrou_status arsrou_sv_filter(double beta, double sigma, int jacobian, const double* observations,
                               const double* truth, size_t steps, size_t particles, uint64_t seed,
                               arsrou_filter_row* rows) {
  ARSROU_REQUIRE((observations && rows) || steps == 0, "null argument");
  return guarded([&] {
    arsrou::Rng rng(seed);
    std::span<const double> obs(observations, steps);
    std::span<const double> tr;
    if (truth) tr = std::span<const double>(truth, steps);
    const auto trace = arsrou::run_filter({beta, sigma, jacobian != 0}, obs, particles, rng, tr);
    for (size_t i = 0; i < trace.rows.size(); ++i) {
      const auto& r = trace.rows[i];
      rows[i] = {r.k, r.truth, r.estimate, r.std, r.acceptance_rate};
    }
  });
}

}  // extern "C"
