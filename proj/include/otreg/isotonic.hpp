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

struct WeightedPoint {
  double x = 0.0;
  double y = 0.0;
  double w = 1.0;

  bool operator==(const WeightedPoint&) const = default;
};

struct TieMerge {
  std::vector<WeightedPoint> points;
  /// Sum over merged groups of sum w (y - ybar)^2, the part of the squared
  /// loss no function of x can remove.
  double dispersion = 0.0;
};

/// Sorts by x and replaces each group of equal x by one point carrying the
/// total weight and the weighted mean of y. The result does not depend on
/// the input order. Throws ArgumentError on non-finite fields or w <= 0.
TieMerge merge_ties_with_dispersion(std::span<const WeightedPoint> points);

std::vector<WeightedPoint> merge_ties(std::span<const WeightedPoint> points);

/// Weighted isotonic least squares by pool-adjacent-violators.
///
/// Returns the nondecreasing sequence g minimizing sum w_j (g_j - y_j)^2.
/// Each maximal constant block of g holds the weighted mean of its y's,
/// accumulated as separate sums of w*y and w. Singleton blocks keep y
/// unchanged, so the fit is a fixed point of itself. Requires x strictly
/// increasing and positive finite weights; throws ArgumentError otherwise.
std::vector<double> pava(std::span<const WeightedPoint> points);

}  // namespace otreg
