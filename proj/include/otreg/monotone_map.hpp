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

#include <variant>
#include <vector>

#include "otreg/measure.hpp"

namespace otreg {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  bool contains(double x) const noexcept { return lo <= x && x <= hi; }
  bool operator==(const Interval&) const = default;
};

struct Knot {
  double x = 0.0;
  double t = 0.0;

  bool operator==(const Knot&) const = default;
};

enum class MapMode {
  /// Right-continuous, constant between knots.
  Step,
  /// Piecewise-linear interpolation between knots.
  Linear,
};

/// Nondecreasing real function on a closed interval, given by knots.
/// Both modes extend the extreme knot values as constants up to the ends of
/// the domain.
class MonotoneMap {
 public:
  /// Throws ArgumentError unless knots are nonempty, finite, strictly
  /// increasing in x, inside the domain and nondecreasing in t. Decreases of
  /// at most 1e-12 are rounded away.
  MonotoneMap(Interval domain, std::vector<Knot> knots, MapMode mode);

  static MonotoneMap identity(Interval domain);
  static MonotoneMap constant(Interval domain, double value);

  /// Throws DomainError outside the domain.
  double operator()(double x) const;

  const Interval& domain() const noexcept { return domain_; }
  const std::vector<Knot>& knots() const noexcept { return knots_; }
  MapMode mode() const noexcept { return mode_; }
  double min_value() const noexcept { return knots_.front().t; }
  double max_value() const noexcept { return knots_.back().t; }

  bool operator==(const MonotoneMap&) const = default;

 private:
  Interval domain_;
  std::vector<Knot> knots_;
  MapMode mode_;
};

inline double map_eval(const MonotoneMap& map, double x) { return map(x); }

/// Either a discrete measure or the uniform law on a nondegenerate interval.
class WeightingMeasure {
 public:
  static WeightingMeasure discrete(DiscreteMeasure m);
  static WeightingMeasure uniform(Interval support);

  bool is_uniform() const noexcept { return std::holds_alternative<Interval>(value_); }
  const DiscreteMeasure& measure() const { return std::get<DiscreteMeasure>(value_); }
  const Interval& interval() const { return std::get<Interval>(value_); }

 private:
  explicit WeightingMeasure(std::variant<DiscreteMeasure, Interval> v) : value_(std::move(v)) {}

  std::variant<DiscreteMeasure, Interval> value_;
};

/// Exact integral of (T1 - T2)^2 against q. Throws DomainError when q's
/// support is not covered by both domains.
double l2_distance_sq(const MonotoneMap& t1, const MonotoneMap& t2, const WeightingMeasure& q);

/// Clips the range to [range.lo, range.hi]. Linear maps gain knots where
/// they cross the bounds, so the result equals the pointwise clip.
MonotoneMap clamp_to(const MonotoneMap& map, Interval range);

}  // namespace otreg
