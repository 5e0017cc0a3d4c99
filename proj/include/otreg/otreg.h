/* Copyright 2026 The otreg Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to libotreg.
 *
 * Objects are opaque handles created by otreg_*_create / *_from_json and
 * released with the matching *_destroy (NULL is a no-op). Every function returns an
 * otreg_status; results are written through out-pointers, which are left
 * untouched on failure. otreg_last_error() describes the most recent failure
 * on the calling thread. Strings returned through char** are owned by the
 * caller and released with otreg_string_free.
 */

#ifndef OTREG_OTREG_H
#define OTREG_OTREG_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  define OTREG_API __declspec(dllexport)
#else
#  define OTREG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum otreg_status {
  OTREG_SUCCESS = 0,
  OTREG_ARGUMENT_ERROR = 1,
  OTREG_DOMAIN_ERROR = 2,
  OTREG_CONSTRUCTION_ERROR = 3,
  OTREG_PARSE_ERROR = 4,
  OTREG_IO_ERROR = 5,
  OTREG_INVALID_HANDLE_ERROR = 6,
  OTREG_UNKNOWN_ERROR = 7
} otreg_status;

typedef enum otreg_map_mode { OTREG_MAP_STEP = 0, OTREG_MAP_LINEAR = 1 } otreg_map_mode;

typedef struct otreg_measure otreg_measure;
typedef struct otreg_map otreg_map;
typedef struct otreg_dataset otreg_dataset;
typedef struct otreg_scenario otreg_scenario;
typedef struct otreg_rate_table otreg_rate_table;
typedef struct otreg_packing otreg_packing;

OTREG_API const char* otreg_last_error(void);
OTREG_API const char* otreg_status_string(otreg_status status);
OTREG_API void otreg_string_free(char* s);

/* Measures. Atoms/weights are canonicalized on creation. */
OTREG_API otreg_status otreg_measure_create(const double* atoms, const double* weights, size_t n,
                                            otreg_measure** out);
OTREG_API otreg_status otreg_measure_from_json(const char* json, otreg_measure** out);
OTREG_API otreg_status otreg_measure_to_json(const otreg_measure* m, char** out);
OTREG_API otreg_status otreg_measure_destroy(otreg_measure* m);
OTREG_API otreg_status otreg_measure_size(const otreg_measure* m, size_t* out);
/* Copies up to `capacity` atoms and weights; either buffer may be NULL. */
OTREG_API otreg_status otreg_measure_get(const otreg_measure* m, double* atoms, double* weights, size_t capacity);
OTREG_API otreg_status otreg_measure_cdf(const otreg_measure* m, double x, double* out);
OTREG_API otreg_status otreg_measure_quantile(const otreg_measure* m, double u, double* out);
OTREG_API otreg_status otreg_measure_pushforward(const otreg_measure* m, const otreg_map* map, otreg_measure** out);
OTREG_API otreg_status otreg_wasserstein2_sq(const otreg_measure* a, const otreg_measure* b, double* out);
OTREG_API otreg_status otreg_measure_average(const otreg_measure* const* ms, size_t n, otreg_measure** out);

/* Monotone maps. */
OTREG_API otreg_status otreg_map_create(double domain_lo, double domain_hi, const double* xs, const double* ts,
                                        size_t n, otreg_map_mode mode, otreg_map** out);
OTREG_API otreg_status otreg_map_identity(double domain_lo, double domain_hi, otreg_map** out);
OTREG_API otreg_status otreg_map_from_json(const char* json, otreg_map** out);
OTREG_API otreg_status otreg_map_to_json(const otreg_map* map, char** out);
OTREG_API otreg_status otreg_map_destroy(otreg_map* map);
OTREG_API otreg_status otreg_map_eval(const otreg_map* map, double x, double* out);
OTREG_API otreg_status otreg_map_knot_count(const otreg_map* map, size_t* out);
OTREG_API otreg_status otreg_map_get_knots(const otreg_map* map, double* xs, double* ts, size_t capacity);
OTREG_API otreg_status otreg_map_clamp(const otreg_map* map, double lo, double hi, otreg_map** out);
/* Squared L2 distance weighted by a discrete measure or by Unif[lo, hi]. */
OTREG_API otreg_status otreg_map_l2_distance_sq_discrete(const otreg_map* a, const otreg_map* b,
                                                         const otreg_measure* q, double* out);
OTREG_API otreg_status otreg_map_l2_distance_sq_uniform(const otreg_map* a, const otreg_map* b, double lo,
                                                        double hi, double* out);

/* Isotonic regression on arrays. `x` must be strictly increasing. */
OTREG_API otreg_status otreg_pava(const double* x, const double* y, const double* w, size_t n, double* fitted);

/* Datasets and the least-squares estimator. */
OTREG_API otreg_status otreg_dataset_from_json(const char* json, otreg_dataset** out);
OTREG_API otreg_status otreg_dataset_load(const char* path, otreg_dataset** out);
OTREG_API otreg_status otreg_dataset_to_json(const otreg_dataset* data, char** out);
OTREG_API otreg_status otreg_dataset_save(const otreg_dataset* data, const char* path);
OTREG_API otreg_status otreg_dataset_destroy(otreg_dataset* data);
OTREG_API otreg_status otreg_dataset_size(const otreg_dataset* data, size_t* out);
/* Pooled isotonic problem: number of points, then copies of x, y, w and the constant. */
OTREG_API otreg_status otreg_dataset_pool_size(const otreg_dataset* data, size_t* out);
OTREG_API otreg_status otreg_dataset_pool(const otreg_dataset* data, double* x, double* y, double* w,
                                          size_t capacity, double* constant);
OTREG_API otreg_status otreg_objective(const otreg_map* map, const otreg_dataset* data, double* out);
OTREG_API otreg_status otreg_fit(const otreg_dataset* data, int clamp, otreg_map** out);
/* Squared L2 risk under the average covariate measure of `data`. */
OTREG_API otreg_status otreg_risk_empirical(const otreg_map* estimate, const otreg_map* truth,
                                            const otreg_dataset* data, double* out);

/* Scenarios, simulation and rate experiments. */
OTREG_API otreg_status otreg_scenario_from_json(const char* json, otreg_scenario** out);
OTREG_API otreg_status otreg_scenario_load(const char* path, otreg_scenario** out);
OTREG_API otreg_status otreg_scenario_destroy(otreg_scenario* cfg);
OTREG_API otreg_status otreg_scenario_set_seed(otreg_scenario* cfg, uint64_t seed);
/* 0 workers selects the hardware concurrency. */
OTREG_API otreg_status otreg_scenario_set_workers(otreg_scenario* cfg, size_t workers);
OTREG_API otreg_status otreg_simulate(const otreg_scenario* cfg, otreg_dataset** out);
OTREG_API otreg_status otreg_rate_experiment(const otreg_scenario* cfg, otreg_rate_table** out);
OTREG_API otreg_status otreg_rate_table_destroy(otreg_rate_table* table);
OTREG_API otreg_status otreg_rate_table_to_csv(const otreg_rate_table* table, char** out);
OTREG_API otreg_status otreg_rate_table_to_svg(const otreg_rate_table* table, char** out);
/* Writes slope, its standard error and the intercept; *degenerate is 1 when no slope was fitted. */
OTREG_API otreg_status otreg_rate_table_slope(const otreg_rate_table* table, double* slope, double* slope_stderr,
                                              double* intercept, int* degenerate);
OTREG_API otreg_status otreg_loglog_slope(const double* n, const double* risk, size_t count, double* slope,
                                          double* intercept, double* slope_stderr);

/* Lower-bound calculators. */
OTREG_API otreg_status otreg_kl_conditional_uniform(const otreg_map* a, const otreg_map* b, double sigma,
                                                    double lo, double hi, double* out);
OTREG_API otreg_status otreg_kl_conditional_discrete(const otreg_map* a, const otreg_map* b, double sigma,
                                                     const otreg_measure* p, double* out);
OTREG_API otreg_status otreg_packing_create(int k, double h, double target_hamming_frac, uint64_t seed,
                                            otreg_packing** out);
OTREG_API otreg_status otreg_packing_destroy(otreg_packing* family);
OTREG_API otreg_status otreg_packing_size(const otreg_packing* family, size_t* out);
OTREG_API otreg_status otreg_packing_summary(const otreg_packing* family, double* min_pairwise_dist,
                                             double* log_cardinality);
/* Returns a new handle owned by the caller. */
OTREG_API otreg_status otreg_packing_member(const otreg_packing* family, size_t index, otreg_map** out);
OTREG_API otreg_status otreg_packing_to_json(const otreg_packing* family, char** out);
OTREG_API otreg_status otreg_fano_bound(double delta, double epsilon, double bracketing_constant,
                                        double packing_constant, double kl_multiplier, double* out);

#ifdef __cplusplus
}
#endif

#endif /* OTREG_OTREG_H */
