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

#include <span>
#include <vector>

namespace otreg {

class MonotoneMap;

/// Finitely supported probability measure on the real line, always held in
/// canonical form: atoms strictly increasing, weights positive and summing
/// to one.
///
/// Construction sorts atoms, merges exact duplicates, drops zero weights and
/// renormalizes when the total is within 1e-9 of one. Negative or non-finite
/// input, an empty support, or a total further than 1e-9 from one is
/// rejected with ArgumentError.
class DiscreteMeasure {
 public:
  DiscreteMeasure(std::vector<double> atoms, std::vector<double> weights);

  static DiscreteMeasure dirac(double x);

  std::span<const double> atoms() const noexcept { return atoms_; }
  std::span<const double> weights() const noexcept { return weights_; }
  /// Partial sums of the weights; the last entry is exactly 1.
  std::span<const double> cumulative() const noexcept { return cumulative_; }
  std::size_t size() const noexcept { return atoms_.size(); }

  bool operator==(const DiscreteMeasure&) const = default;

 private:
  std::vector<double> atoms_;
  std::vector<double> weights_;
  std::vector<double> cumulative_;
};

/// Right-continuous distribution function: total weight of atoms <= x.
double cdf_eval(const DiscreteMeasure& m, double x);

/// Left-continuous generalized inverse inf{x : F(x) >= u}, for u in (0, 1].
/// Throws DomainError otherwise.
double quantile_eval(const DiscreteMeasure& m, double u);

/// Law of T(X) for X ~ m. Atoms that land on the same value are merged.
/// Throws DomainError if an atom lies outside T's domain.
DiscreteMeasure pushforward(const DiscreteMeasure& m, const MonotoneMap& map);

/// Exact squared 2-Wasserstein distance, integrating the squared quantile
/// difference over the merged cumulative-weight breakpoints.
double wasserstein2_sq(const DiscreteMeasure& m1, const DiscreteMeasure& m2);

/// Linear average (1/N) sum m_i. Throws ArgumentError on empty input.
DiscreteMeasure average_measure(std::span<const DiscreteMeasure> measures);

}  // namespace otreg
