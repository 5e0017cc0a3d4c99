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

#include "otreg/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

#include "otreg/error.hpp"

namespace otreg {

namespace {

constexpr std::size_t kTabulationGrid = 4097;

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

void ScenarioConfig::validate() const {
  if (!std::isfinite(domain.lo) || !std::isfinite(domain.hi) || !(domain.lo < domain.hi)) {
    throw ArgumentError("scenario: domain must be a nondegenerate finite interval");
  }
  if (design.kind == DesignKind::Dirac && design.density == DesignDensity::Beta &&
      (!finite_positive(design.alpha) || !finite_positive(design.beta))) {
    throw ArgumentError("scenario: beta design needs positive shape parameters");
  }
  if (design.kind == DesignKind::General && design.atoms == 0) {
    throw ArgumentError("scenario: general design needs at least one atom");
  }
  switch (true_map.family) {
    case TrueMapFamily::Power:
      if (!finite_positive(true_map.gamma)) throw ArgumentError("scenario: power gamma must be positive");
      break;
    case TrueMapFamily::PiecewiseLinear:
      if (true_map.knots.empty()) throw ArgumentError("scenario: piecewise-linear map needs knots");
      break;
    case TrueMapFamily::Staircase:
      if (true_map.steps < 1) throw ArgumentError("scenario: staircase needs at least one step");
      break;
    case TrueMapFamily::Identity:
      break;
  }
  if (!std::isfinite(noise.sigma) || noise.sigma < 0.0) throw ArgumentError("scenario: sigma must be >= 0");
  if (!std::isfinite(noise.sigma_b) || noise.sigma_b < 0.0) throw ArgumentError("scenario: sigma_b must be >= 0");
  if (!(noise.slope_halfwidth >= 0.0 && noise.slope_halfwidth <= 1.0)) {
    throw ArgumentError("scenario: affine slope half-width must lie in [0, 1]");
  }
  if (sample_sizes.empty()) throw ArgumentError("scenario: no sample size");
  for (std::size_t i = 0; i < sample_sizes.size(); ++i) {
    if (sample_sizes[i] < 1) throw ArgumentError("scenario: sample sizes must be >= 1");
    if (i > 0 && sample_sizes[i] <= sample_sizes[i - 1]) {
      throw ArgumentError("scenario: sample sizes must be strictly increasing");
    }
  }
}

MonotoneMap sample_noise_map(const NoiseConfig& noise, Interval support, Rng& rng) {
  if (!(support.lo < support.hi)) throw ArgumentError("noise map: degenerate support");
  double slope = 1.0, shift = 0.0;
  switch (noise.family) {
    case NoiseFamily::GaussianShift: {
      if (!std::isfinite(noise.sigma) || noise.sigma < 0.0) throw ArgumentError("noise map: sigma must be >= 0");
      std::normal_distribution<double> z(0.0, 1.0);
      shift = noise.sigma * z(rng);
      break;
    }
    case NoiseFamily::Affine: {
      const double a = noise.slope_halfwidth;
      if (!(a >= 0.0 && a <= 1.0)) throw ArgumentError("noise map: slope half-width must lie in [0, 1]");
      if (!std::isfinite(noise.sigma_b) || noise.sigma_b < 0.0) {
        throw ArgumentError("noise map: sigma_b must be >= 0");
      }
      std::uniform_real_distribution<double> u(1.0 - a, 1.0 + a);
      std::normal_distribution<double> z(0.0, 1.0);
      slope = a > 0.0 ? u(rng) : 1.0;
      shift = noise.sigma_b * z(rng);
      break;
    }
  }
  if (slope == 1.0 && shift == 0.0) return MonotoneMap::identity(support);
  return MonotoneMap(support,
                     {{support.lo, slope * support.lo + shift}, {support.hi, slope * support.hi + shift}},
                     MapMode::Linear);
}

MonotoneMap build_true_map(const TrueMapConfig& cfg, Interval domain, std::span<const double> exact_at) {
  const double a = domain.lo, b = domain.hi, width = b - a;
  switch (cfg.family) {
    case TrueMapFamily::Identity:
      return MonotoneMap::identity(domain);
    case TrueMapFamily::PiecewiseLinear:
      return MonotoneMap(domain, cfg.knots, MapMode::Linear);
    case TrueMapFamily::Staircase: {
      std::vector<Knot> knots;
      for (int j = 0; j < cfg.steps; ++j) {
        const double x = a + width * j / cfg.steps;
        knots.push_back({x, x});
      }
      return MonotoneMap(domain, std::move(knots), MapMode::Step);
    }
    case TrueMapFamily::Power: {
      std::vector<double> xs(exact_at.begin(), exact_at.end());
      for (std::size_t i = 0; i < kTabulationGrid; ++i) {
        xs.push_back(a + width * static_cast<double>(i) / (kTabulationGrid - 1));
      }
      xs.back() = b;
      std::sort(xs.begin(), xs.end());
      xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
      std::vector<Knot> knots;
      knots.reserve(xs.size());
      for (double x : xs) knots.push_back({x, a + width * std::pow((x - a) / width, cfg.gamma)});
      return MonotoneMap(domain, std::move(knots), MapMode::Linear);
    }
  }
  throw ArgumentError("true map: unknown family");
}

namespace {

DiscreteMeasure draw_covariate(const ScenarioConfig& cfg, Rng& rng) {
  const double a = cfg.domain.lo, b = cfg.domain.hi;
  const DesignConfig& d = cfg.design;
  if (d.kind == DesignKind::Dirac) {
    if (d.density == DesignDensity::Uniform) {
      std::uniform_real_distribution<double> u(a, b);
      return DiscreteMeasure::dirac(u(rng));
    }
    std::gamma_distribution<double> g1(d.alpha, 1.0), g2(d.beta, 1.0);
    const double x1 = g1(rng), x2 = g2(rng);
    const double frac = x1 + x2 > 0.0 ? x1 / (x1 + x2) : 0.5;
    return DiscreteMeasure::dirac(std::clamp(a + (b - a) * frac, a, b));
  }
  std::uniform_real_distribution<double> u(a, b);
  std::vector<double> atoms(d.atoms), weights(d.atoms, 1.0 / static_cast<double>(d.atoms));
  for (auto& x : atoms) x = u(rng);
  if (d.weights == AtomWeights::Dirichlet) {
    std::gamma_distribution<double> g(1.0, 1.0);
    double total = 0.0;
    for (auto& w : weights) total += (w = g(rng));
    for (auto& w : weights) w /= total;
  }
  return DiscreteMeasure(std::move(atoms), std::move(weights));
}

}  // namespace

Simulation simulate(const ScenarioConfig& cfg, std::size_t n, std::uint64_t seed) {
  cfg.validate();
  if (n < 1) throw ArgumentError("simulate: sample size must be >= 1");
  Rng rng(seed);

  std::vector<DiscreteMeasure> covariates;
  covariates.reserve(n);
  std::vector<double> support_points;
  for (std::size_t i = 0; i < n; ++i) {
    covariates.push_back(draw_covariate(cfg, rng));
    const auto atoms = covariates.back().atoms();
    support_points.insert(support_points.end(), atoms.begin(), atoms.end());
  }

  MonotoneMap truth = build_true_map(cfg.true_map, cfg.domain, support_points);
  const Interval noise_support{std::min(cfg.domain.lo, truth.min_value()),
                               std::max(cfg.domain.hi, truth.max_value())};

  std::vector<MeasurePair> pairs;
  std::vector<MonotoneMap> noise_maps;
  pairs.reserve(n);
  noise_maps.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    noise_maps.push_back(sample_noise_map(cfg.noise, noise_support, rng));
    DiscreteMeasure response = pushforward(pushforward(covariates[i], truth), noise_maps.back());
    pairs.push_back({std::move(covariates[i]), std::move(response)});
  }
  return {RegressionDataset(cfg.domain, std::move(pairs)), std::move(truth), std::move(noise_maps)};
}

RegressionDataset simulate_dataset(const ScenarioConfig& cfg) {
  if (cfg.sample_sizes.size() != 1) throw ArgumentError("simulate: expected exactly one sample size N");
  return simulate(cfg, cfg.sample_sizes.front(), cfg.seed).data;
}

SlopeFit loglog_slope(std::span<const std::pair<double, double>> points) {
  if (points.size() < 3) throw ArgumentError("loglog_slope: need at least 3 points");
  std::vector<double> xs, ys;
  for (const auto& [n, r] : points) {
    if (!finite_positive(n) || !finite_positive(r)) {
      throw ArgumentError("loglog_slope: sample sizes and risks must be positive");
    }
    xs.push_back(std::log(n));
    ys.push_back(std::log(r));
  }
  const double m = static_cast<double>(xs.size());
  double xbar = 0.0, ybar = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xbar += xs[i];
    ybar += ys[i];
  }
  xbar /= m;
  ybar /= m;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - xbar) * (xs[i] - xbar);
    sxy += (xs[i] - xbar) * (ys[i] - ybar);
  }
  if (!(sxx > 0.0)) throw ArgumentError("loglog_slope: sample sizes must not all be equal");
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = ybar - fit.slope * xbar;
  double ssr = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ssr += r * r;
  }
  fit.slope_stderr = std::sqrt(ssr / (m - 2.0) / sxx);
  return fit;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t replicate_seed(std::uint64_t master, std::uint64_t n, std::uint64_t r) {
  return splitmix64(splitmix64(splitmix64(master) ^ n) ^ r);
}

double replicate_risk(const ScenarioConfig& cfg, std::size_t n, std::uint64_t seed) {
  const Simulation sim = simulate(cfg, n, seed);
  const MonotoneMap estimate = fit(sim.data, cfg.clamp);
  if (cfg.risk_weighting == RiskWeighting::Uniform) {
    return risk(estimate, sim.true_map, WeightingMeasure::uniform(cfg.domain));
  }
  return risk(estimate, sim.true_map, sim.data);
}

RateTable rate_experiment(const ScenarioConfig& cfg) {
  cfg.validate();
  if (cfg.replicates < 2) throw ArgumentError("rate: need at least 2 replicates");

  const std::size_t rows = cfg.sample_sizes.size();
  const std::size_t reps = cfg.replicates;
  std::vector<double> risks(rows * reps);

  std::size_t workers = cfg.workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.workers;
  workers = std::min(workers, risks.size());

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    for (std::size_t job; (job = next.fetch_add(1)) < risks.size();) {
      const std::size_t row = job / reps, r = job % reps;
      const std::size_t n = cfg.sample_sizes[row];
      try {
        risks[job] = replicate_risk(cfg, n, replicate_seed(cfg.seed, n, r));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = risks.size();
      }
    }
  };
  if (workers <= 1) {
    run();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run);
  }
  if (failure) std::rethrow_exception(failure);

  RateTable table;
  std::vector<std::pair<double, double>> curve;
  for (std::size_t row = 0; row < rows; ++row) {
    const double* rs = risks.data() + row * reps;
    double sum = 0.0;
    for (std::size_t r = 0; r < reps; ++r) sum += rs[r];
    const double mean = sum / static_cast<double>(reps);
    double ss = 0.0;
    for (std::size_t r = 0; r < reps; ++r) ss += (rs[r] - mean) * (rs[r] - mean);
    const double se = std::sqrt(ss / static_cast<double>(reps - 1) / static_cast<double>(reps));
    table.rows.push_back({cfg.sample_sizes[row], reps, mean, se});
    curve.emplace_back(static_cast<double>(cfg.sample_sizes[row]), mean);
  }

  const bool fittable =
      curve.size() >= 3 && std::all_of(curve.begin(), curve.end(), [](const auto& p) { return p.second > 0.0; });
  if (fittable) {
    table.fit = loglog_slope(curve);
  } else {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    table.degenerate = true;
    table.fit = {nan, nan, nan};
  }
  return table;
}

}  // namespace otreg
