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

#include <vector>

#include "otreg/isotonic.hpp"
#include "otreg/measure.hpp"
#include "otreg/monotone_map.hpp"

namespace otreg {

struct MeasurePair {
  DiscreteMeasure covariate;
  DiscreteMeasure response;

  bool operator==(const MeasurePair&) const = default;
};

/// Covariate/response measure pairs with covariates supported in `domain`.
class RegressionDataset {
 public:
  /// Throws ArgumentError when empty, when the domain is degenerate, or when
  /// a covariate atom falls outside the domain.
  RegressionDataset(Interval domain, std::vector<MeasurePair> pairs);

  const Interval& domain() const noexcept { return domain_; }
  const std::vector<MeasurePair>& pairs() const noexcept { return pairs_; }
  std::size_t size() const noexcept { return pairs_.size(); }

  std::vector<DiscreteMeasure> covariates() const;

  bool operator==(const RegressionDataset&) const = default;

 private:
  Interval domain_;
  std::vector<MeasurePair> pairs_;
};

/// The transport objective rewritten as a weighted isotonic problem: for
/// every nondecreasing T,
///   sum_i W2^2(T#mu_i, nu_i) = sum_j w_j (T(x_j) - y_j)^2 + constant.
struct PooledProblem {
  std::vector<WeightedPoint> points;  // strictly increasing x
  double constant = 0.0;

  double quadratic_form(const MonotoneMap& map) const;
};

PooledProblem pool(const RegressionDataset& data);

/// (1/2N) sum_i W2^2(T#mu_i, nu_i), evaluated directly through pushforwards.
double objective(const MonotoneMap& map, const RegressionDataset& data);

/// Frechet least-squares estimate: a right-continuous step map with a knot
/// at every distinct covariate atom. With `clamp` the values are clipped to
/// the domain, which gives the minimizer among maps into the domain.
MonotoneMap fit(const RegressionDataset& data, bool clamp = true);

/// Squared L2(q) distance between an estimate and the true map.
double risk(const MonotoneMap& estimate, const MonotoneMap& truth, const WeightingMeasure& q);

/// Same, weighted by the average covariate measure of `data`.
double risk(const MonotoneMap& estimate, const MonotoneMap& truth, const RegressionDataset& data);

}  // namespace otreg
