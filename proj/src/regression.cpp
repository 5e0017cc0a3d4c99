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

#include "otreg/regression.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "otreg/error.hpp"

namespace otreg {

RegressionDataset::RegressionDataset(Interval domain, std::vector<MeasurePair> pairs)
    : domain_(domain), pairs_(std::move(pairs)) {
  if (pairs_.empty()) throw ArgumentError("dataset: no pairs");
  if (!std::isfinite(domain_.lo) || !std::isfinite(domain_.hi) || !(domain_.lo < domain_.hi)) {
    throw ArgumentError("dataset: degenerate domain");
  }
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    const auto atoms = pairs_[i].covariate.atoms();
    if (!domain_.contains(atoms.front()) || !domain_.contains(atoms.back())) {
      throw ArgumentError("dataset: covariate " + std::to_string(i) + " not supported in the domain");
    }
  }
}

std::vector<DiscreteMeasure> RegressionDataset::covariates() const {
  std::vector<DiscreteMeasure> out;
  out.reserve(pairs_.size());
  for (const auto& p : pairs_) out.push_back(p.covariate);
  return out;
}

double PooledProblem::quadratic_form(const MonotoneMap& map) const {
  double total = 0.0;
  for (const auto& p : points) {
    const double d = map(p.x) - p.y;
    total += p.w * d * d;
  }
  return total + constant;
}

namespace {

struct Segment {
  double length;
  double value;
};

// Appends one WeightedPoint per covariate atom and returns the summed
// within-interval variance of the response quantile.
double pool_pair(const MeasurePair& pair, std::vector<WeightedPoint>& out) {
  const auto xs = pair.covariate.atoms();
  const auto cx = pair.covariate.cumulative();
  const auto ys = pair.response.atoms();
  const auto cy = pair.response.cumulative();

  double variance = 0.0;
  std::vector<Segment> segs;
  std::size_t k = 0;  // current response atom
  double u0 = 0.0;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    const double u1 = cx[j];
    segs.clear();
    double lo = u0;
    while (lo < u1) {
      const double hi = std::min(u1, cy[k]);
      if (hi > lo) segs.push_back({hi - lo, ys[k]});
      lo = hi;
      if (cy[k] <= u1 && k + 1 < ys.size()) ++k;
      if (hi == u1) break;
    }
    const double w = u1 - u0;
    double integral = 0.0;
    for (const auto& s : segs) integral += s.length * s.value;
    const double mean = segs.size() == 1 ? segs.front().value : integral / w;
    for (const auto& s : segs) {
      const double d = s.value - mean;
      variance += s.length * d * d;
    }
    out.push_back({xs[j], mean, w});
    u0 = u1;
  }
  return variance;
}

}  // namespace

PooledProblem pool(const RegressionDataset& data) {
  std::vector<WeightedPoint> raw;
  double constant = 0.0;
  for (const auto& pair : data.pairs()) constant += pool_pair(pair, raw);
  auto merged = merge_ties_with_dispersion(raw);
  return {std::move(merged.points), constant + merged.dispersion};
}

double objective(const MonotoneMap& map, const RegressionDataset& data) {
  double total = 0.0;
  for (const auto& pair : data.pairs()) {
    total += wasserstein2_sq(pushforward(pair.covariate, map), pair.response);
  }
  return total / (2.0 * static_cast<double>(data.size()));
}

MonotoneMap fit(const RegressionDataset& data, bool clamp) {
  const PooledProblem problem = pool(data);
  const std::vector<double> fitted = pava(problem.points);
  std::vector<Knot> knots;
  knots.reserve(fitted.size());
  for (std::size_t j = 0; j < fitted.size(); ++j) knots.push_back({problem.points[j].x, fitted[j]});
  MonotoneMap estimate(data.domain(), std::move(knots), MapMode::Step);
  return clamp ? clamp_to(estimate, data.domain()) : estimate;
}

double risk(const MonotoneMap& estimate, const MonotoneMap& truth, const WeightingMeasure& q) {
  return l2_distance_sq(estimate, truth, q);
}

double risk(const MonotoneMap& estimate, const MonotoneMap& truth, const RegressionDataset& data) {
  const auto covariates = data.covariates();
  return l2_distance_sq(estimate, truth, WeightingMeasure::discrete(average_measure(covariates)));
}

}  // namespace otreg
