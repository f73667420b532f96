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

/* C interface to the arsrou samplers. Every fallible call returns an
 * arsrou_status; on failure arsrou_last_error() describes the problem for
 * the calling thread. Handles are opaque and must be released with the
 * matching *_free function. Term indices are zero-based. */

#ifndef ARSROU_ARSROU_H
#define ARSROU_ARSROU_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define ARSROU_API __declspec(dllexport)
#else
#define ARSROU_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum arsrou_status {
  ARSROU_OK = 0,
  ARSROU_E_DOMAIN = 1,
  ARSROU_E_INDEX = 2,
  ARSROU_E_SIGN = 3,
  ARSROU_E_UNBOUNDED_REGION = 4,
  ARSROU_E_INFINITE_ENVELOPE = 5,
  ARSROU_E_INVARIANT = 6,
  ARSROU_E_PRECONDITION = 7,
  ARSROU_E_CONFIG = 8,
  ARSROU_E_INVALID_ARGUMENT = 9,
  ARSROU_E_INTERNAL = 10
} arsrou_status;

typedef enum arsrou_scheme { ARSROU_SCHEME_ARS1 = 0, ARSROU_SCHEME_ROU = 1 } arsrou_scheme;

typedef struct arsrou_model arsrou_model;
typedef struct arsrou_sampler arsrou_sampler;
typedef struct arsrou_region arsrou_region;

typedef struct arsrou_filter_row {
  size_t k;
  double truth; /* NaN when unknown */
  double estimate;
  double std;
  double acceptance_rate;
} arsrou_filter_row;

ARSROU_API const char* arsrou_last_error(void);
ARSROU_API const char* arsrou_status_name(arsrou_status status);
ARSROU_API uint64_t arsrou_split_seed(uint64_t master, uint64_t stream);

/* params_json is a JSON object of numeric parameters, or NULL. */
ARSROU_API arsrou_status arsrou_model_builtin(const char* name, const char* params_json,
                                              arsrou_model** out);
ARSROU_API arsrou_status arsrou_model_from_config(const char* json_text, arsrou_model** out);
ARSROU_API void arsrou_model_free(arsrou_model* model);

ARSROU_API size_t arsrou_model_term_count(const arsrou_model* model);
ARSROU_API void arsrou_model_support(const arsrou_model* model, double* lo, double* hi);
/* Copies up to cap suggested support points; returns how many exist. */
ARSROU_API size_t arsrou_model_default_supports(const arsrou_model* model, double* buf,
                                                size_t cap);
ARSROU_API arsrou_status arsrou_model_eval(const arsrou_model* model, double x, double* out);
ARSROU_API arsrou_status arsrou_model_eval_reduced(const arsrou_model* model, size_t term,
                                                   double x, double* out);

/* supports may be NULL (n_supports 0) to use the model's suggested points. */
ARSROU_API arsrou_status arsrou_sampler_create_ars1(const arsrou_model* model, size_t term,
                                                    const double* supports, size_t n_supports,
                                                    uint64_t seed, arsrou_sampler** out);
ARSROU_API arsrou_status arsrou_sampler_create_rou(const arsrou_model* model, double rho,
                                                   const double* supports, size_t n_supports,
                                                   uint64_t seed, arsrou_sampler** out);
ARSROU_API void arsrou_sampler_free(arsrou_sampler* sampler);

/* trials may be NULL; otherwise receives the trial count of each sample. */
ARSROU_API arsrou_status arsrou_sampler_draw(arsrou_sampler* sampler, size_t n, double* samples,
                                             uint64_t* trials);
ARSROU_API size_t arsrou_sampler_support_count(const arsrou_sampler* sampler);
ARSROU_API uint64_t arsrou_sampler_rejections(const arsrou_sampler* sampler);

/* curve must hold `samples` doubles. threads 0 picks the hardware count. */
ARSROU_API arsrou_status arsrou_acceptance_curve(const arsrou_model* model, arsrou_scheme scheme,
                                                 size_t term, double rho, const double* supports,
                                                 size_t n_supports, size_t runs, size_t samples,
                                                 uint64_t seed, unsigned threads, double* curve);

/* RoU samplers only. */
ARSROU_API arsrou_status arsrou_region_export(const arsrou_sampler* sampler, size_t probes,
                                              arsrou_region** out);
ARSROU_API void arsrou_region_free(arsrou_region* region);
ARSROU_API size_t arsrou_region_triangle_count(const arsrou_region* region);
/* out: v1, u1, v2, u2, v3, u3, area */
ARSROU_API arsrou_status arsrou_region_triangle(const arsrou_region* region, size_t i,
                                                double out[7]);
ARSROU_API size_t arsrou_region_boundary_count(const arsrou_region* region);
/* out: v, u */
ARSROU_API arsrou_status arsrou_region_boundary(const arsrou_region* region, size_t i,
                                                double out[2]);

/* states and observations must each hold `steps` doubles. */
ARSROU_API arsrou_status arsrou_sv_simulate(double beta, double sigma, size_t steps, double x0,
                                            uint64_t seed, double* states, double* observations);
/* truth may be NULL; rows must hold `steps` entries. A nonzero jacobian adds
   the 1/x change-of-variables factor to the transition density. */
ARSROU_API arsrou_status arsrou_sv_filter(double beta, double sigma, int jacobian,
                                          const double* observations,
                                          const double* truth, size_t steps, size_t particles,
                                          uint64_t seed, arsrou_filter_row* rows);

#ifdef __cplusplus
}
#endif

#endif /* ARSROU_ARSROU_H */
