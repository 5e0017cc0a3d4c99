// Copyright 2026 The otreg Authors
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

#include "otreg/otreg.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "otreg/error.hpp"
#include "otreg/harness.hpp"
#include "otreg/io.hpp"
#include "otreg/isotonic.hpp"
#include "otreg/measure.hpp"
#include "otreg/monotone_map.hpp"
#include "otreg/regression.hpp"
#include "otreg/theory.hpp"

struct otreg_measure {
  otreg::DiscreteMeasure value;
};
struct otreg_map {
  otreg::MonotoneMap value;
};
struct otreg_dataset {
  otreg::RegressionDataset value;
};
struct otreg_scenario {
  otreg::ScenarioConfig value;
};
struct otreg_rate_table {
  otreg::RateTable value;
};
struct otreg_packing {
  otreg::PackingFamily value;
};

namespace {

thread_local std::string last_error;

otreg_status fail(otreg_status status, const char* what) {
  last_error = what;
  return status;
}

template <class F>
otreg_status guard(F&& f) {
  try {
    f();
  } catch (const otreg::Error& e) {
    return fail(static_cast<otreg_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(OTREG_UNKNOWN_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(OTREG_UNKNOWN_ERROR, e.what());
  } catch (...) {
    return fail(OTREG_UNKNOWN_ERROR, "unknown error");
  }
  return OTREG_SUCCESS;
}

// Null handles and null output pointers are reported before any work.
#define OTREG_REQUIRE(ptr)                                                   \
  do {                                                                       \
    if (!(ptr)) return fail(OTREG_INVALID_HANDLE_ERROR, "null pointer: " #ptr); \
  } while (0)

char* to_c_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

otreg::MapMode mode_of(otreg_map_mode mode) {
  switch (mode) {
    case OTREG_MAP_STEP:
      return otreg::MapMode::Step;
    case OTREG_MAP_LINEAR:
      return otreg::MapMode::Linear;
  }
  throw otreg::ArgumentError("unknown map mode");
}

}  // namespace

extern "C" {

OTREG_API const char* otreg_last_error(void) { return last_error.c_str(); }

OTREG_API const char* otreg_status_string(otreg_status status) {
  switch (status) {
    case OTREG_SUCCESS:
      return "success";
    case OTREG_ARGUMENT_ERROR:
      return "argument error";
    case OTREG_DOMAIN_ERROR:
      return "domain error";
    case OTREG_CONSTRUCTION_ERROR:
      return "construction error";
    case OTREG_PARSE_ERROR:
      return "parse error";
    case OTREG_IO_ERROR:
      return "i/o error";
    case OTREG_INVALID_HANDLE_ERROR:
      return "invalid handle";
    case OTREG_UNKNOWN_ERROR:
      break;
  }
  return "unknown error";
}

OTREG_API void otreg_string_free(char* s) { std::free(s); }

// ---- measures ----

OTREG_API otreg_status otreg_measure_create(const double* atoms, const double* weights, size_t n,
                                            otreg_measure** out) {
  OTREG_REQUIRE(out);
  if (n > 0) {
    OTREG_REQUIRE(atoms);
    OTREG_REQUIRE(weights);
  }
  return guard([&] {
    *out = new otreg_measure{otreg::DiscreteMeasure(std::vector<double>(atoms, atoms + n),
                                                    std::vector<double>(weights, weights + n))};
  });
}

OTREG_API otreg_status otreg_measure_from_json(const char* json, otreg_measure** out) {
  OTREG_REQUIRE(json);
  OTREG_REQUIRE(out);
  return guard([&] { *out = new otreg_measure{otreg::measure_from_json(json)}; });
}

OTREG_API otreg_status otreg_measure_to_json(const otreg_measure* m, char** out) {
  OTREG_REQUIRE(m);
  OTREG_REQUIRE(out);
  return guard([&] { *out = to_c_string(otreg::measure_to_json(m->value)); });
}

OTREG_API otreg_status otreg_measure_destroy(otreg_measure* m) {
  // Like free(), a null handle is a no-op.
  if (!m) return OTREG_SUCCESS;
  delete m;
  return OTREG_SUCCESS;
}

OTREG_API otreg_status otreg_measure_size(const otreg_measure* m, size_t* out) {
  OTREG_REQUIRE(m);
  OTREG_REQUIRE(out);
  *out = m->value.size();
  return OTREG_SUCCESS;
}

OTREG_API otreg_status otreg_measure_get(const otreg_measure* m, double* atoms, double* weights, size_t capacity) {
  OTREG_REQUIRE(m);
  const size_t n = std::min(capacity, m->value.size());
  for (size_t i = 0; i < n; ++i) {
    if (atoms) atoms[i] = m->value.atoms()[i];
    if (weights) weights[i] = m->value.weights()[i];
  }
  return OTREG_SUCCESS;
}

OTREG_API otreg_status otreg_measure_cdf(const otreg_measure* m, double x, double* out) {
  OTREG_REQUIRE(m);
  OTREG_REQUIRE(out);
  return guard([&] { *out = otreg::cdf_eval(m->value, x); });
}

OTREG_API otreg_status otreg_measure_quantile(const otreg_measure* m, double u, double* out) {
  OTREG_REQUIRE(m);
  OTREG_REQUIRE(out);
  return guard([&] { *out = otreg::quantile_eval(m->value, u); });
}

OTREG_API otreg_status otreg_measure_pushforward(const otreg_measure* m, const otreg_map* map,
                                                 otreg_measure** out) {
  OTREG_REQUIRE(m);
  OTREG_REQUIRE(map);
  OTREG_REQUIRE(out);
  return guard([&] { *out = new otreg_measure{otreg::pushforward(m->value, map->value)}; });
}

OTREG_API otreg_status otreg_wasserstein2_sq(const otreg_measure* a, const otreg_measure* b, double* out) {
  OTREG_REQUIRE(a);
  OTREG_REQUIRE(b);
  OTREG_REQUIRE(out);
  return guard([&] { *out = otreg::wasserstein2_sq(a->value, b->value); });
}

OTREG_API otreg_status otreg_measure_average(const otreg_measure* const* ms, size_t n, otreg_measure** out) {
  OTREG_REQUIRE(out);
  if (n > 0) OTREG_REQUIRE(ms);
  for (size_t i = 0; i < n; ++i) OTREG_REQUIRE(ms[i]);
  return guard([&] {
    std::vector<otreg::DiscreteMeasure> v;
    v.reserve(n);
    for (size_t i = 0; i < n; ++i) v.push_back(ms[i]->value);
    *out = new otreg_measure{otreg::average_measure(v)};
  });
}

// ---- maps ----

OTREG_API otreg_status otreg_map_create(double domain_lo, double domain_hi, const double* xs, const double* ts,
                                        size_t n, otreg_map_mode mode, otreg_map** out) {
  OTREG_REQUIRE(out);
  if (n > 0) {
    OTREG_REQUIRE(xs);
    OTREG_REQUIRE(ts);
  }
  return guard([&] {
    std::vector<otreg::Knot> knots(n);
    for (size_t i = 0; i < n; ++i) knots[i] = {xs[i], ts[i]};
    *out = new otreg_map{otreg::MonotoneMap({domain_lo, domain_hi}, std::move(knots), mode_of(mode))};
  });
}

OTREG_API otreg_status otreg_map_identity(double domain_lo, double domain_hi, otreg_map** out) {
  OTREG_REQUIRE(out);
  return guard([&] {
    if (!(domain_lo <= domain_hi)) throw otreg::ArgumentError("identity: invalid domain");
    *out = new otreg_map{otreg::MonotoneMap::identity({domain_lo, domain_hi})};
  });
}

OTREG_API otreg_status otreg_map_from_json(const char* json, otreg_map** out) {
  OTREG_REQUIRE(json);
  OTREG_REQUIRE(out);
  return guard([&] { *out = new otreg_map{otreg::map_from_json(json)}; });
}

OTREG_API otreg_status otreg_map_to_json(const otreg_map* map, char** out) {
  OTREG_REQUIRE(map);
  OTREG_REQUIRE(out);
  return guard([&] { *out = to_c_string(otreg::map_to_json(map->value)); });
}

OTREG_API otreg_status otreg_map_destroy(otreg_map* map) {
  if (!map) return OTREG_SUCCESS;
  delete map;
  return OTREG_SUCCESS;
}

OTREG_API otreg_status otreg_map_eval(const otreg_map* map, double x, double* out) {
  OTREG_REQUIRE(map);
  OTREG_REQUIRE(out);
  return guard([&] { *out = map->value(x); });
}

OTREG_API otreg_status otreg_map_knot_count(const otreg_map* map, size_t* out) {
  OTREG_REQUIRE(map);
  OTREG_REQUIRE(out);
  *out = map->value.knots().size();
  return OTREG_SUCCESS;
}

OTREG_API otreg_status otreg_map_get_knots(const otreg_map* map, double* xs, double* ts, size_t capacity) {
  OTREG_REQUIRE(map);
  const auto& knots = map->value.knots();
  const size_t n = std::min(capacity, knots.size());
  for (size_t i = 0; i < n; ++i) {
    if (xs) xs[i] = knots[i].x;
    if (ts) ts[i] = knots[i].t;
  }
  return OTREG_SUCCESS;
}

OTREG_API otreg_status otreg_map_clamp(const otreg_map* map, double lo, double hi, otreg_map** out) {
  OTREG_REQUIRE(map);
  OTREG_REQUIRE(out);
  return guard([&] { *out = new otreg_map{otreg::clamp_to(map->value, {lo, hi})}; });
}

OTREG_API otreg_status otreg_map_l2_distance_sq_discrete(const otreg_map* a, const otreg_map* b,
                                                         const otreg_measure* q, double* out) {
  OTREG_REQUIRE(a);
  OTREG_REQUIRE(b);
  OTREG_REQUIRE(q);
  OTREG_REQUIRE(out);
  return guard([&] {
    *out = otreg::l2_distance_sq(a->value, b->value, otreg::WeightingMeasure::discrete(q->value));
  });
}

OTREG_API otreg_status otreg_map_l2_distance_sq_uniform(const otreg_map* a, const otreg_map* b, double lo,
                                                        double hi, double* out) {
  OTREG_REQUIRE(a);
  OTREG_REQUIRE(b);
  OTREG_REQUIRE(out);
  return guard([&] {
    *out = otreg::l2_distance_sq(a->value, b->value, otreg::WeightingMeasure::uniform({lo, hi}));
  });
}

// ---- isotonic ----

OTREG_API otreg_status otreg_pava(const double* x, const double* y, const double* w, size_t n, double* fitted) {
  if (n > 0) {
    OTREG_REQUIRE(x);
    OTREG_REQUIRE(y);
    OTREG_REQUIRE(w);
    OTREG_REQUIRE(fitted);
  }
  return guard([&] {
    std::vector<otreg::WeightedPoint> pts(n);
    for (size_t i = 0; i < n; ++i) pts[i] = {x[i], y[i], w[i]};
    const auto g = otreg::pava(pts);
    std::copy(g.begin(), g.end(), fitted);
  });
}

// ---- datasets ----

OTREG_API otreg_status otreg_dataset_from_json(const char* json, otreg_dataset** out) {
  OTREG_REQUIRE(json);
  OTREG_REQUIRE(out);
  return guard([&] { *out = new otreg_dataset{otreg::dataset_from_json(json)}; });
}

OTREG_API otreg_status otreg_dataset_load(const char* path, otreg_dataset** out) {
  OTREG_REQUIRE(path);
  OTREG_REQUIRE(out);
  return guard([&] { *out = new otreg_dataset{otreg::dataset_from_json(otreg::read_text_file(path))}; });
}

OTREG_API otreg_status otreg_dataset_to_json(const otreg_dataset* data, char** out) {
  OTREG_REQUIRE(data);
  OTREG_REQUIRE(out);
  return guard([&] { *out = to_c_string(otreg::dataset_to_json(data->value)); });
}

OTREG_API otreg_status otreg_dataset_save(const otreg_dataset* data, const char* path) {
  OTREG_REQUIRE(data);
  OTREG_REQUIRE(path);
  return guard([&] { otreg::write_text_file(path, otreg::dataset_to_json(data->value) + "\n"); });
}

OTREG_API otreg_status otreg_dataset_destroy(otreg_dataset* data) {
  if (!data) return OTREG_SUCCESS;
  delete data;
  return OTREG_SUCCESS;
}

OTREG_API otreg_status otreg_dataset_size(const otreg_dataset* data, size_t* out) {
  OTREG_REQUIRE(data);
  OTREG_REQUIRE(out);
  *out = data->value.size();
  return OTREG_SUCCESS;
}

OTREG_API otreg_status otreg_dataset_pool_size(const otreg_dataset* data, size_t* out) {
  OTREG_REQUIRE(data);
  OTREG_REQUIRE(out);
  return guard([&] { *out = otreg::pool(data->value).points.size(); });
}

OTREG_API otreg_status otreg_dataset_pool(const otreg_dataset* data, double* x, double* y, double* w,
                                          size_t capacity, double* constant) {
  OTREG_REQUIRE(data);
  return guard([&] {
    const auto problem = otreg::pool(data->value);
    const size_t n = std::min(capacity, problem.points.size());
    for (size_t i = 0; i < n; ++i) {
      if (x) x[i] = problem.points[i].x;
      if (y) y[i] = problem.points[i].y;
      if (w) w[i] = problem.points[i].w;
    }
    if (constant) *constant = problem.constant;
  });
}

OTREG_API otreg_status otreg_objective(const otreg_map* map, const otreg_dataset* data, double* out) {
  OTREG_REQUIRE(map);
  OTREG_REQUIRE(data);
  OTREG_REQUIRE(out);
  return guard([&] { *out = otreg::objective(map->value, data->value); });
}

OTREG_API otreg_status otreg_fit(const otreg_dataset* data, int clamp, otreg_map** out) {
  OTREG_REQUIRE(data);
  OTREG_REQUIRE(out);
  return guard([&] { *out = new otreg_map{otreg::fit(data->value, clamp != 0)}; });
}

OTREG_API otreg_status otreg_risk_empirical(const otreg_map* estimate, const otreg_map* truth,
                                            const otreg_dataset* data, double* out) {
  OTREG_REQUIRE(estimate);
  OTREG_REQUIRE(truth);
  OTREG_REQUIRE(data);
  OTREG_REQUIRE(out);
  return guard([&] { *out = otreg::risk(estimate->value, truth->value, data->value); });
}

// ---- scenarios ----

OTREG_API otreg_status otreg_scenario_from_json(const char* json, otreg_scenario** out) {
  OTREG_REQUIRE(json);
  OTREG_REQUIRE(out);
  return guard([&] { *out = new otreg_scenario{otreg::scenario_from_json(json)}; });
}

OTREG_API otreg_status otreg_scenario_load(const char* path, otreg_scenario** out) {
  OTREG_REQUIRE(path);
  OTREG_REQUIRE(out);
  return guard([&] { *out = new otreg_scenario{otreg::scenario_from_json(otreg::read_text_file(path))}; });
}

OTREG_API otreg_status otreg_scenario_destroy(otreg_scenario* cfg) {
  if (!cfg) return OTREG_SUCCESS;
  delete cfg;
  return OTREG_SUCCESS;
}

OTREG_API otreg_status otreg_scenario_set_seed(otreg_scenario* cfg, uint64_t seed) {
  OTREG_REQUIRE(cfg);
  cfg->value.seed = seed;
  return OTREG_SUCCESS;
}

OTREG_API otreg_status otreg_scenario_set_workers(otreg_scenario* cfg, size_t workers) {
  OTREG_REQUIRE(cfg);
  cfg->value.workers = workers;
  return OTREG_SUCCESS;
}

OTREG_API otreg_status otreg_simulate(const otreg_scenario* cfg, otreg_dataset** out) {
  OTREG_REQUIRE(cfg);
  OTREG_REQUIRE(out);
  return guard([&] { *out = new otreg_dataset{otreg::simulate_dataset(cfg->value)}; });
}

OTREG_API otreg_status otreg_rate_experiment(const otreg_scenario* cfg, otreg_rate_table** out) {
  OTREG_REQUIRE(cfg);
  OTREG_REQUIRE(out);
  return guard([&] { *out = new otreg_rate_table{otreg::rate_experiment(cfg->value)}; });
}

OTREG_API otreg_status otreg_rate_table_destroy(otreg_rate_table* table) {
  if (!table) return OTREG_SUCCESS;
  delete table;
  return OTREG_SUCCESS;
}

OTREG_API otreg_status otreg_rate_table_to_csv(const otreg_rate_table* table, char** out) {
  OTREG_REQUIRE(table);
  OTREG_REQUIRE(out);
  return guard([&] { *out = to_c_string(table->value.to_csv()); });
}

OTREG_API otreg_status otreg_rate_table_to_svg(const otreg_rate_table* table, char** out) {
  OTREG_REQUIRE(table);
  OTREG_REQUIRE(out);
  return guard([&] { *out = to_c_string(table->value.to_svg()); });
}

OTREG_API otreg_status otreg_rate_table_slope(const otreg_rate_table* table, double* slope, double* slope_stderr,
                                              double* intercept, int* degenerate) {
  OTREG_REQUIRE(table);
  const auto& t = table->value;
  if (slope) *slope = t.fit.slope;
  if (slope_stderr) *slope_stderr = t.fit.slope_stderr;
  if (intercept) *intercept = t.fit.intercept;
  if (degenerate) *degenerate = t.degenerate ? 1 : 0;
  return OTREG_SUCCESS;
}

OTREG_API otreg_status otreg_loglog_slope(const double* n, const double* risk, size_t count, double* slope,
                                          double* intercept, double* slope_stderr) {
  if (count > 0) {
    OTREG_REQUIRE(n);
    OTREG_REQUIRE(risk);
  }
  return guard([&] {
    std::vector<std::pair<double, double>> pts(count);
    for (size_t i = 0; i < count; ++i) pts[i] = {n[i], risk[i]};
    const auto fit = otreg::loglog_slope(pts);
    if (slope) *slope = fit.slope;
    if (intercept) *intercept = fit.intercept;
    if (slope_stderr) *slope_stderr = fit.slope_stderr;
  });
}

// ---- lower-bound calculators ----

OTREG_API otreg_status otreg_kl_conditional_uniform(const otreg_map* a, const otreg_map* b, double sigma,
                                                    double lo, double hi, double* out) {
  OTREG_REQUIRE(a);
  OTREG_REQUIRE(b);
  OTREG_REQUIRE(out);
  return guard([&] {
    *out = otreg::kl_conditional(a->value, b->value, sigma, otreg::WeightingMeasure::uniform({lo, hi}));
  });
}

OTREG_API otreg_status otreg_kl_conditional_discrete(const otreg_map* a, const otreg_map* b, double sigma,
                                                     const otreg_measure* p, double* out) {
  OTREG_REQUIRE(a);
  OTREG_REQUIRE(b);
  OTREG_REQUIRE(p);
  OTREG_REQUIRE(out);
  return guard([&] {
    *out = otreg::kl_conditional(a->value, b->value, sigma, otreg::WeightingMeasure::discrete(p->value));
  });
}

OTREG_API otreg_status otreg_packing_create(int k, double h, double target_hamming_frac, uint64_t seed,
                                            otreg_packing** out) {
  OTREG_REQUIRE(out);
  return guard([&] {
    otreg::PackingOptions opts;
    opts.target_hamming_frac = target_hamming_frac;
    opts.seed = seed;
    *out = new otreg_packing{otreg::packing_family(k, h, opts)};
  });
}

OTREG_API otreg_status otreg_packing_destroy(otreg_packing* family) {
  if (!family) return OTREG_SUCCESS;
  delete family;
  return OTREG_SUCCESS;
}

OTREG_API otreg_status otreg_packing_size(const otreg_packing* family, size_t* out) {
  OTREG_REQUIRE(family);
  OTREG_REQUIRE(out);
  *out = family->value.maps.size();
  return OTREG_SUCCESS;
}

OTREG_API otreg_status otreg_packing_summary(const otreg_packing* family, double* min_pairwise_dist,
                                             double* log_cardinality) {
  OTREG_REQUIRE(family);
  if (min_pairwise_dist) *min_pairwise_dist = family->value.min_pairwise_dist;
  if (log_cardinality) *log_cardinality = family->value.log_cardinality;
  return OTREG_SUCCESS;
}

OTREG_API otreg_status otreg_packing_member(const otreg_packing* family, size_t index, otreg_map** out) {
  OTREG_REQUIRE(family);
  OTREG_REQUIRE(out);
  if (index >= family->value.maps.size()) return fail(OTREG_ARGUMENT_ERROR, "packing member index out of range");
  return guard([&] { *out = new otreg_map{family->value.maps[index]}; });
}

OTREG_API otreg_status otreg_packing_to_json(const otreg_packing* family, char** out) {
  OTREG_REQUIRE(family);
  OTREG_REQUIRE(out);
  return guard([&] { *out = to_c_string(otreg::packing_to_json(family->value)); });
}

OTREG_API otreg_status otreg_fano_bound(double delta, double epsilon, double bracketing_constant,
                                        double packing_constant, double kl_multiplier, double* out) {
  OTREG_REQUIRE(out);
  return guard([&] {
    *out = otreg::fano_bound({delta, epsilon, bracketing_constant, packing_constant, kl_multiplier});
  });
}

}  // extern "C"
