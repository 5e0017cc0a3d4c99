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

#include "otreg/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "otreg/error.hpp"
#include "otreg/monotone_map.hpp"

namespace otreg {

namespace {

constexpr double kMassTolerance = 1e-9;

}  // namespace

DiscreteMeasure::DiscreteMeasure(std::vector<double> atoms, std::vector<double> weights) {
  if (atoms.size() != weights.size()) {
    throw ArgumentError("measure: atoms and weights differ in length");
  }
  std::vector<std::size_t> order;
  order.reserve(atoms.size());
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (!std::isfinite(atoms[i]) || !std::isfinite(weights[i])) {
      throw ArgumentError("measure: non-finite atom or weight");
    }
    if (weights[i] < 0.0) {
      throw ArgumentError("measure: negative weight " + std::to_string(weights[i]));
    }
    if (weights[i] > 0.0) order.push_back(i);
  }
  if (order.empty()) throw ArgumentError("measure: no atom carries positive weight");

  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return atoms[a] < atoms[b]; });

  atoms_.reserve(order.size());
  weights_.reserve(order.size());
  for (std::size_t i : order) {
    if (!atoms_.empty() && atoms_.back() == atoms[i]) {
      weights_.back() += weights[i];
    } else {
      atoms_.push_back(atoms[i]);
      weights_.push_back(weights[i]);
    }
  }

  const double total = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  if (std::abs(total - 1.0) > kMassTolerance) {
    throw ArgumentError("measure: weights sum to " + std::to_string(total) + ", expected 1");
  }
  // Sums already within rounding of 1 are kept as is, so canonicalizing a
  // canonical measure is the identity.
  const double rounding = 4.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(weights_.size());
  const double scale = std::abs(total - 1.0) <= rounding ? 1.0 : total;
  cumulative_.resize(weights_.size());
  double running = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    weights_[i] /= scale;
    running += weights_[i];
    cumulative_[i] = running;
  }
  cumulative_.back() = 1.0;
}

DiscreteMeasure DiscreteMeasure::dirac(double x) { return DiscreteMeasure({x}, {1.0}); }

double cdf_eval(const DiscreteMeasure& m, double x) {
  const auto atoms = m.atoms();
  const auto k = std::upper_bound(atoms.begin(), atoms.end(), x) - atoms.begin();
  return k == 0 ? 0.0 : m.cumulative()[k - 1];
}

double quantile_eval(const DiscreteMeasure& m, double u) {
  if (!(u > 0.0 && u <= 1.0)) {
    throw DomainError("quantile: level " + std::to_string(u) + " outside (0, 1]");
  }
  const auto cum = m.cumulative();
  const auto k = std::lower_bound(cum.begin(), cum.end(), u) - cum.begin();
  return m.atoms()[k];
}

DiscreteMeasure pushforward(const DiscreteMeasure& m, const MonotoneMap& map) {
  std::vector<double> atoms;
  atoms.reserve(m.size());
  for (double x : m.atoms()) atoms.push_back(map(x));
  return DiscreteMeasure(std::move(atoms), std::vector<double>(m.weights().begin(), m.weights().end()));
}

double wasserstein2_sq(const DiscreteMeasure& m1, const DiscreteMeasure& m2) {
  const auto a1 = m1.atoms(), a2 = m2.atoms();
  const auto c1 = m1.cumulative(), c2 = m2.cumulative();
  std::size_t i = 0, j = 0;
  double prev = 0.0, total = 0.0;
  // Both cumulative sequences end at exactly 1, so the loop ends together.
  while (i < a1.size() && j < a2.size()) {
    const double next = std::min(c1[i], c2[j]);
    const double d = a1[i] - a2[j];
    total += (next - prev) * d * d;
    prev = next;
    if (c1[i] == next) ++i;
    if (c2[j] == next) ++j;
  }
  return total;
}

DiscreteMeasure average_measure(std::span<const DiscreteMeasure> measures) {
  if (measures.empty()) throw ArgumentError("average_measure: empty input");
  const double scale = 1.0 / static_cast<double>(measures.size());
  std::vector<double> atoms, weights;
  for (const auto& m : measures) {
    atoms.insert(atoms.end(), m.atoms().begin(), m.atoms().end());
    for (double w : m.weights()) weights.push_back(w * scale);
  }
  return DiscreteMeasure(std::move(atoms), std::move(weights));
}

}  // namespace otreg
