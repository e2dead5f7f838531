// Copyright 2026 The padiclab Authors
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

/* C interface to padiclab. Every call returns a padiclab_status; on failure
 * padiclab_last_error() describes the problem for the calling thread.
 * Strings returned through char** are owned by the caller and released with
 * padiclab_string_free. Rationals are passed as decimal strings "a" or "a/b". */
#ifndef PADICLAB_H
#define PADICLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(PADICLAB_BUILDING_LIBRARY)
#define PADICLAB_API __attribute__((visibility("default")))
#else
#define PADICLAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum padiclab_status {
  PADICLAB_OK = 0,
  PADICLAB_E_USAGE,
  PADICLAB_E_NON_UNIT,
  PADICLAB_E_PRECISION_EXHAUSTED,
  PADICLAB_E_HENSEL_PRECONDITION_FAILED,
  PADICLAB_E_UNRESOLVED_BRANCH,
  PADICLAB_E_NO_ROOT_IN_ZP,
  PADICLAB_E_BOX_EXHAUSTED,
  PADICLAB_E_PROFILE_UNAVAILABLE,
  PADICLAB_E_COMMON_FACTOR,
  PADICLAB_E_UNSUPPORTED,
  PADICLAB_E_INTERNAL
} padiclab_status;

typedef struct padiclab_context padiclab_context;
typedef struct padiclab_poly padiclab_poly;

PADICLAB_API const char* padiclab_version(void);
PADICLAB_API const char* padiclab_status_name(padiclab_status status);
PADICLAB_API const char* padiclab_last_error(void);
PADICLAB_API void padiclab_string_free(char* s);

PADICLAB_API padiclab_status padiclab_context_new(uint32_t p, unsigned m, padiclab_context** out);
PADICLAB_API void padiclab_context_free(padiclab_context* ctx);

/* Coefficient list lowest degree first, e.g. "[1,-5,1]". */
PADICLAB_API padiclab_status padiclab_poly_parse(const char* text, padiclab_poly** out);
PADICLAB_API padiclab_status padiclab_poly_to_string(const padiclab_poly* poly, char** out);
PADICLAB_API padiclab_status padiclab_poly_degree(const padiclab_poly* poly, unsigned* out);
PADICLAB_API void padiclab_poly_free(padiclab_poly* poly);

/* Root set in Z_p at the context precision. */
PADICLAB_API padiclab_status padiclab_roots(const padiclab_context* ctx, const padiclab_poly* poly, char** json);
/* Hensel lift from an integer starting point xi0. */
PADICLAB_API padiclab_status padiclab_hensel(const padiclab_context* ctx, const padiclab_poly* poly, const char* xi0,
                                             char** json);
/* Nearest Z_p root of poly to omega together with the root-distance inequality record. */
PADICLAB_API padiclab_status padiclab_nearest_root(const padiclab_context* ctx, const padiclab_poly* poly,
                                                   const char* omega, char** json);
/* Root separation profile for grid parameters (eps, d) and its derivative diagnostic. */
PADICLAB_API padiclab_status padiclab_profile(const padiclab_context* ctx, const padiclab_poly* poly, const char* eps,
                                              unsigned d, char** json);
PADICLAB_API padiclab_status padiclab_resultant(const padiclab_poly* a, const padiclab_poly* b, uint32_t p,
                                                char** json);

/* disc is "Zp" or "center:k". */
PADICLAB_API padiclab_status padiclab_enum_alg(const padiclab_context* ctx, unsigned n, uint64_t height_max,
                                               const char* disc, char** json);
/* delta must be p^-k for some k >= 0. */
PADICLAB_API padiclab_status padiclab_dirichlet(const padiclab_context* ctx, const char* omega, unsigned n,
                                                const char* Q, const char* delta, const char* C, char** json);
PADICLAB_API padiclab_status padiclab_approx(const padiclab_context* ctx, const char* omega, unsigned n,
                                             const char* Q, const char* delta, const char* C, char** json);
/* T must be p^(s(n+1)) for some s >= 1. */
PADICLAB_API padiclab_status padiclab_regsys(const padiclab_context* ctx, const char* disc, const char* T, unsigned n,
                                             char** json);

/* resolution 0 lets the library pick the exact method. */
PADICLAB_API padiclab_status padiclab_measure_solution(const padiclab_context* ctx, const padiclab_poly* poly,
                                                       unsigned k, const char* disc, unsigned resolution,
                                                       char** json);
PADICLAB_API padiclab_status padiclab_measure_union(const padiclab_context* ctx, const char* delta, const char* Q,
                                                    unsigned n, const char* disc, unsigned resolution,
                                                    unsigned threads, char** json);
PADICLAB_API padiclab_status padiclab_measure_e1(const padiclab_context* ctx, const char* delta, const char* Q,
                                                 const char* xi, unsigned n, const char* disc, char** json);

/* Experiment reports: summary JSON, one JSON line per sample, CSV mean curve.
 * Any of the three outputs may be NULL. */
PADICLAB_API padiclab_status padiclab_dichotomy(const padiclab_context* ctx, size_t samples, uint64_t seed,
                                                const char* psi, unsigned n, const uint64_t* h_grid,
                                                size_t h_grid_len, unsigned threads, char** summary,
                                                char** lines, char** csv);
PADICLAB_API padiclab_status padiclab_thm2(const padiclab_context* ctx, size_t samples, uint64_t seed,
                                           const char* psi, unsigned n, const uint64_t* h_grid, size_t h_grid_len,
                                           unsigned threads, char** summary, char** lines, char** csv);

/* Invariant suite. violations receives the total count; may be NULL. */
PADICLAB_API padiclab_status padiclab_check(uint32_t p, unsigned m, unsigned n, uint64_t height_max, uint64_t seed,
                                            char** json, uint64_t* violations);

#ifdef __cplusplus
}
#endif

#endif /* PADICLAB_H */
