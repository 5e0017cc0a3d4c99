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

#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "otreg/monotone_map.hpp"
#include "otreg/regression.hpp"

namespace otreg {

using Rng = std::mt19937_64;

enum class DesignKind { Dirac, General };
enum class DesignDensity { Uniform, Beta };
enum class AtomWeights { Uniform, Dirichlet };

struct DesignConfig {
  DesignKind kind = DesignKind::Dirac;
  // Dirac design: location density on the domain.
  DesignDensity density = DesignDensity::Uniform;
  double alpha = 1.0;
  double beta = 1.0;
  // General design: atoms uniform on the domain.
  std::size_t atoms = 5;
  AtomWeights weights = AtomWeights::Uniform;
};

enum class TrueMapFamily { Identity, Power, PiecewiseLinear, Staircase };

struct TrueMapConfig {
  TrueMapFamily family = TrueMapFamily::Identity;
  double gamma = 1.0;       // Power: a + (b-a) ((x-a)/(b-a))^gamma
  std::vector<Knot> knots;  // PiecewiseLinear
  int steps = 4;            // Staircase
};

enum class NoiseFamily { GaussianShift, Affine };

/// GaussianShift: T(x) = x + sigma Z.
/// Affine: T(x) = A x + B, A ~ Unif[1-a, 1+a], B ~ N(0, sigma_b^2).
struct NoiseConfig {
  NoiseFamily family = NoiseFamily::GaussianShift;
  double sigma = 0.0;
  double slope_halfwidth = 0.0;
  double sigma_b = 0.0;
};

enum class RiskWeighting { Empirical, Uniform };

struct ScenarioConfig {
  Interval domain{0.0, 1.0};
  DesignConfig design;
  TrueMapConfig true_map;
  NoiseConfig noise;
  std::vector<std::size_t> sample_sizes{100};
  std::size_t replicates = 2;
  std::uint64_t seed = 0;
  RiskWeighting risk_weighting = RiskWeighting::Empirical;
  bool clamp = true;
  /// Worker threads for rate experiments; 0 picks the hardware concurrency.
  std::size_t workers = 1;

  /// Throws ArgumentError on any invalid field.
  void validate() const;
};

/// Draws one noise map with domain `support`. Both families are
/// nondecreasing with pointwise mean equal to the identity.
MonotoneMap sample_noise_map(const NoiseConfig& noise, Interval support, Rng& rng);

/// True map on the domain. Smooth families are tabulated as piecewise-linear
/// maps on a 4097-point grid plus `exact_at`, so they are exact there.
MonotoneMap build_true_map(const TrueMapConfig& cfg, Interval domain, std::span<const double> exact_at = {});

struct Simulation {
  RegressionDataset data;
  MonotoneMap true_map;
  std::vector<MonotoneMap> noise_maps;
};

/// Draws n pairs (mu_i, T_eps_i # (T0 # mu_i)). All covariates are drawn
/// first, then one noise map per pair, from a single stream seeded by `seed`.
Simulation simulate(const ScenarioConfig& cfg, std::size_t n, std::uint64_t seed);

/// Uses cfg.seed and the single entry of cfg.sample_sizes.
RegressionDataset simulate_dataset(const ScenarioConfig& cfg);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
};

/// OLS of log(risk) on log(N). Needs at least three points, all positive.
SlopeFit loglog_slope(std::span<const std::pair<double, double>> points);

/// Seed of replicate r at sample size n, independent of scheduling.
std::uint64_t replicate_seed(std::uint64_t master, std::uint64_t n, std::uint64_t r);

struct RateRow {
  std::size_t n = 0;
  std::size_t replicates = 0;
  double mean_sq_risk = 0.0;
  double std_error = 0.0;
};

struct RateTable {
  std::vector<RateRow> rows;
  SlopeFit fit;
  /// Set when a mean risk is zero, so no slope can be fitted.
  bool degenerate = false;

  std::string to_csv() const;
  std::string to_svg() const;
};

/// Squared L2 risk of one simulate -> fit replicate.
double replicate_risk(const ScenarioConfig& cfg, std::size_t n, std::uint64_t seed);

/// Runs cfg.replicates replicates per sample size on cfg.workers threads.
RateTable rate_experiment(const ScenarioConfig& cfg);

}  // namespace otreg
