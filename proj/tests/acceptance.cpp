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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <string>

#include "otreg/harness.hpp"
#include "otreg/io.hpp"
#include "otreg/theory.hpp"
#include "test_support.hpp"

using namespace otreg;
using otreg::testing::Rng;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome isotonic_reduction() {
  Rng rng(1001);
  double worst = 0.0;
  for (int d = 0; d < 200; ++d) {
    const auto data =
        otreg::testing::random_dirac_dataset(rng, otreg::testing::uniform_int(rng, 1, 200), {0, 1}, -0.5, 1.5);
    std::vector<WeightedPoint> raw;
    for (const auto& p : data.pairs()) raw.push_back({p.covariate.atoms()[0], p.response.atoms()[0], 1.0});
    const auto merged = merge_ties(raw);
    const auto g = pava(merged);
    const auto est = fit(data, false);
    if (est.knots().size() != g.size()) return {false, fmt("dataset %d: knot count mismatch", d)};
    for (std::size_t j = 0; j < g.size(); ++j) {
      worst = std::max({worst, std::abs(est.knots()[j].t - g[j]), std::abs(est.knots()[j].x - merged[j].x)});
    }
  }
  return {worst <= 1e-12, fmt("200 Dirac datasets, max |fit - pava| = %.3g (tol 1e-12)", worst)};
}

Outcome reduction_identity() {
  Rng rng(1002);
  double worst = 0.0;
  for (int d = 0; d < 200; ++d) {
    const auto data =
        otreg::testing::random_general_dataset(rng, otreg::testing::uniform_int(rng, 1, 50), 10, {0, 1});
    const auto problem = pool(data);
    for (int m = 0; m < 20; ++m) {
      const auto t = otreg::testing::random_map(rng, {0, 1}, -1, 2, 12);
      const double direct = objective(t, data);
      const double reduced = problem.quadratic_form(t) / (2.0 * static_cast<double>(data.size()));
      worst = std::max(worst, std::abs(direct - reduced));
    }
  }
  return {worst <= 1e-10, fmt("200 datasets x 20 maps, max |direct - pooled| = %.3g (tol 1e-10)", worst)};
}

Outcome estimator_optimality() {
  Rng rng(1003);
  int violations = 0;
  double worst_gap = -INFINITY;
  for (int d = 0; d < 50; ++d) {
    const auto data = otreg::testing::random_general_dataset(rng, otreg::testing::uniform_int(rng, 2, 30), 6, {0, 1});
    const double clamped = objective(fit(data), data);
    const double free = objective(fit(data, false), data);
    for (int c = 0; c < 1000; ++c) {
      // Clamped fit against candidates with range in the domain, free fit against any range.
      const bool in_range = c % 2 == 0;
      const auto t = in_range ? otreg::testing::random_map(rng, {0, 1}, 0, 1, 12)
                              : otreg::testing::random_map(rng, {0, 1}, -1, 2, 12);
      const double best = in_range ? clamped : free;
      const double gap = best - objective(t, data);
      worst_gap = std::max(worst_gap, gap);
      if (gap > 1e-12) ++violations;
    }
  }
  return {violations == 0, fmt("50 datasets x 1000 candidates, violations = %d, max gap = %.3g", violations, worst_gap)};
}

Outcome rate_slope() {
  ScenarioConfig cfg;
  cfg.true_map = {TrueMapFamily::Power, 2.0, {}, 4};
  cfg.noise.sigma = 0.3;
  cfg.sample_sizes = {256, 512, 1024, 2048, 4096, 8192};
  cfg.replicates = 200;
  cfg.seed = 20260101;
  cfg.workers = 0;
  const auto t0 = std::chrono::steady_clock::now();
  const auto table = rate_experiment(cfg);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double s = table.fit.slope;
  const bool ok = !table.degenerate && s >= -0.80 && s <= -0.55;
  return {ok, fmt("T0=x^2, sigma=0.3, N=2^8..2^13, R=200: slope = %.4f +- %.4f, want [-0.80, -0.55] (%.1fs)", s,
                  table.fit.slope_stderr, secs)};
}

Outcome noise_validity() {
  const std::size_t draws = 100'000;
  const double xs[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  const NoiseConfig families[] = {{NoiseFamily::GaussianShift, 0.3, 0, 0}, {NoiseFamily::Affine, 0, 0.5, 0.3}};
  double worst_z = 0.0;
  std::size_t bad_maps = 0;
  for (const auto& noise : families) {
    Rng rng(1005);
    double s[5] = {}, ss[5] = {};
    for (std::size_t i = 0; i < draws; ++i) {
      const auto t = sample_noise_map(noise, {0, 1}, rng);
      const auto& k = t.knots();
      for (std::size_t j = 1; j < k.size(); ++j) {
        if (k[j].t < k[j - 1].t) ++bad_maps;
      }
      for (int j = 0; j < 5; ++j) {
        const double v = t(xs[j]);
        s[j] += v;
        ss[j] += v * v;
      }
    }
    for (int j = 0; j < 5; ++j) {
      const double mean = s[j] / draws;
      const double se = std::sqrt((ss[j] / draws - mean * mean) / draws);
      worst_z = std::max(worst_z, std::abs(mean - xs[j]) / se);
    }
  }
  return {worst_z <= 4.0 && bad_maps == 0,
          fmt("2 families x 5 points x 1e5 draws: max |mean - x|/SE = %.3f (tol 4), non-monotone maps = %zu", worst_z,
              bad_maps)};
}

// KL(N(a, s^2) || N(b, s^2)) by composite Simpson on a +-12 s window.
double gaussian_kl_simpson(double a, double b, double s) {
  const int panels = 4000;
  const double lo = a - 12 * s, hi = a + 12 * s, h = (hi - lo) / panels;
  auto f = [&](double y) {
    const double la = -0.5 * ((y - a) / s) * ((y - a) / s), lb = -0.5 * ((y - b) / s) * ((y - b) / s);
    return std::exp(la) / (s * std::sqrt(2 * std::numbers::pi)) * (la - lb);
  };
  double acc = f(lo) + f(hi);
  for (int i = 1; i < panels; ++i) acc += (i % 2 ? 4 : 2) * f(lo + i * h);
  return acc * h / 3;
}

Outcome kl_identity() {
  Rng rng(1006);
  const auto unif = WeightingMeasure::uniform({0, 1});
  double worst = 0.0, worst_oracle = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto a = otreg::testing::random_map(rng, {0, 1}, 0, 1, 8, MapMode::Linear);
    const auto b = otreg::testing::random_map(rng, {0, 1}, 0, 1, 8, MapMode::Linear);
    worst = std::max(worst, std::abs(kl_conditional(a, b, 1.0, unif) - 0.5 * l2_distance_sq(a, b, unif)));

    // Independent check of the Gaussian KL formula under a discrete p.
    const auto p = otreg::testing::random_measure(rng, 5);
    double oracle = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j) {
      oracle += p.weights()[j] * gaussian_kl_simpson(a(p.atoms()[j]), b(p.atoms()[j]), 1.0);
    }
    worst_oracle = std::max(worst_oracle, std::abs(kl_conditional(a, b, 1.0, WeightingMeasure::discrete(p)) - oracle));
  }
  return {worst <= 1e-9 && worst_oracle <= 1e-9,
          fmt("100 pairs: max |KL - L2/2| = %.3g, max |KL - quadrature| = %.3g (tol 1e-9)", worst, worst_oracle)};
}

Outcome packing() {
  const int k = 32;
  const double h = 1.0 / 32;
  const auto fam = packing_family(k, h, {.seed = 1007});
  const auto unif = WeightingMeasure::uniform({0, 1});
  double worst = 0.0;
  bool shape_ok = true;
  for (const auto& m : fam.maps) {
    shape_ok = shape_ok && m.min_value() >= 0.0 && m.max_value() <= 1.0;
    for (std::size_t j = 1; j < m.knots().size(); ++j) shape_ok = shape_ok && m.knots()[j - 1].t <= m.knots()[j].t;
  }
  for (std::size_t i = 0; i < fam.maps.size(); ++i) {
    for (std::size_t j = i + 1; j < fam.maps.size(); ++j) {
      int ham = 0;
      for (int b = 0; b < k; ++b) ham += fam.codewords[i][b] != fam.codewords[j][b];
      const double exact = std::sqrt(l2_distance_sq(fam.maps[i], fam.maps[j], unif));
      worst = std::max(worst, std::abs(exact - h * std::sqrt(double(ham) / k)));
    }
  }
  const bool ok = fam.log_cardinality >= 4.0 && worst <= 1e-12 && shape_ok && fam.min_hamming >= 8;
  return {ok, fmt("k=32, h=1/32: %zu members, log M = %.3f (want >= 4), min Hamming = %d, max dist error = %.3g",
                  fam.maps.size(), fam.log_cardinality, fam.min_hamming, worst)};
}

Outcome fano() {
  const double limit = fano_bound({0.2, 0.1, 1, 1e12, 1});
  const double e1 = std::abs(fano_bound({1, 1, 1, 1, 1}) - 0.5 * (1 - (1 + 1 + std::log(2.0))));
  const double e2 = std::abs(fano_bound({0.1, 0.1, 1, 30, 1}) - 0.05 * (1 - (10 + 0.01 + std::log(2.0)) / 300));
  double lo = INFINITY, hi = -INFINITY;
  for (double n : {1e2, 1e3, 1e4, 1e5, 1e6}) {
    const double s = std::cbrt(1.0 / n);
    const double scaled = fano_bound({s, s, 1, 30, n}) / s;
    lo = std::min(lo, scaled);
    hi = std::max(hi, scaled);
  }
  const bool ok = std::abs(limit - 0.1) <= 1e-9 && e1 <= 1e-9 && e2 <= 1e-9 && lo >= 0.4 && hi <= 0.5;
  return {ok, fmt("limit error %.3g, case errors %.3g / %.3g, N^(1/3) bound in [%.4f, %.4f] (band [0.4, 0.5])",
                  std::abs(limit - 0.1), e1, e2, lo, hi)};
}

Outcome w2_oracle() {
  Rng rng(1009);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto a = otreg::testing::random_measure(rng, 10, -1, 2);
    const auto b = otreg::testing::random_measure(rng, 10, -1, 2);
    worst = std::max(worst, std::abs(wasserstein2_sq(a, b) - otreg::testing::w2_riemann(a, b, 1'000'000)));
  }
  return {worst <= 1e-4, fmt("100 pairs: max |exact - Riemann(1e6)| = %.3g (tol 1e-4)", worst)};
}

Outcome determinism() {
  ScenarioConfig cfg;
  cfg.true_map = {TrueMapFamily::Power, 2.0, {}, 4};
  cfg.noise.sigma = 0.3;
  cfg.sample_sizes = {64, 128, 256, 512};
  cfg.replicates = 24;
  cfg.seed = 1010;
  const auto dir = std::filesystem::temp_directory_path();
  std::string first;
  bool same = true;
  for (std::size_t w : {1, 4, 8}) {
    cfg.workers = w;
    const auto path = (dir / ("otreg_acceptance_w" + std::to_string(w) + ".csv")).string();
    write_text_file(path, rate_experiment(cfg).to_csv());
    const std::string bytes = read_text_file(path);
    std::filesystem::remove(path);
    if (first.empty()) {
      first = bytes;
    } else {
      same = same && bytes == first;
    }
  }
  return {same && !first.empty(), fmt("results.csv with 1, 4, 8 workers: %s", same ? "byte-identical" : "differ")};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"isotonic reduction", isotonic_reduction}, {"reduction identity", reduction_identity},
      {"estimator optimality", estimator_optimality}, {"minimax rate slope", rate_slope},
      {"noise map validity", noise_validity},     {"KL identity", kl_identity},
      {"packing family", packing},                {"Fano calculator", fano},
      {"W2 oracle", w2_oracle},                   {"determinism", determinism},
  };
  int failures = 0;
  int index = 1;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("[%s] %2d %-22s %s\n", o.pass ? "PASS" : "FAIL", index++, c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failures, std::size(criteria));
  return failures == 0 ? 0 : 1;
}
