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

#include "otreg/monotone_map.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "otreg/error.hpp"

namespace otreg {

namespace {

constexpr double kMonotoneSlack = 1e-12;

std::string interval_str(Interval i) {
  return "[" + std::to_string(i.lo) + ", " + std::to_string(i.hi) + "]";
}

}  // namespace

MonotoneMap::MonotoneMap(Interval domain, std::vector<Knot> knots, MapMode mode)
    : domain_(domain), knots_(std::move(knots)), mode_(mode) {
  if (!std::isfinite(domain_.lo) || !std::isfinite(domain_.hi) || domain_.lo > domain_.hi) {
    throw ArgumentError("map: invalid domain " + interval_str(domain_));
  }
  if (knots_.empty()) throw ArgumentError("map: no knots");
  for (std::size_t k = 0; k < knots_.size(); ++k) {
    const Knot& kn = knots_[k];
    if (!std::isfinite(kn.x) || !std::isfinite(kn.t)) throw ArgumentError("map: non-finite knot");
    if (!domain_.contains(kn.x)) {
      throw ArgumentError("map: knot " + std::to_string(kn.x) + " outside domain " +
                          interval_str(domain_));
    }
    if (k == 0) continue;
    if (!(kn.x > knots_[k - 1].x)) throw ArgumentError("map: knot locations not strictly increasing");
    if (kn.t < knots_[k - 1].t) {
      if (knots_[k - 1].t - kn.t > kMonotoneSlack) {
        throw ArgumentError("map: values decrease at knot " + std::to_string(k));
      }
      knots_[k].t = knots_[k - 1].t;
    }
  }
}

MonotoneMap MonotoneMap::identity(Interval domain) {
  if (domain.lo == domain.hi) return MonotoneMap(domain, {{domain.lo, domain.lo}}, MapMode::Linear);
  return MonotoneMap(domain, {{domain.lo, domain.lo}, {domain.hi, domain.hi}}, MapMode::Linear);
}

MonotoneMap MonotoneMap::constant(Interval domain, double value) {
  return MonotoneMap(domain, {{domain.lo, value}}, MapMode::Step);
}

double MonotoneMap::operator()(double x) const {
  if (!domain_.contains(x)) {
    throw DomainError("map: " + std::to_string(x) + " outside domain " + interval_str(domain_));
  }
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), x,
                                   [](double v, const Knot& k) { return v < k.x; });
  if (it == knots_.begin()) return knots_.front().t;
  const Knot& left = *(it - 1);
  if (mode_ == MapMode::Step || it == knots_.end()) return left.t;
  const Knot& right = *it;
  const double frac = (x - left.x) / (right.x - left.x);
  return std::min(left.t + (right.t - left.t) * frac, right.t);
}

WeightingMeasure WeightingMeasure::discrete(DiscreteMeasure m) { return WeightingMeasure(std::move(m)); }

WeightingMeasure WeightingMeasure::uniform(Interval support) {
  if (!(support.lo < support.hi) || !std::isfinite(support.lo) || !std::isfinite(support.hi)) {
    throw ArgumentError("uniform weighting: degenerate interval " + interval_str(support));
  }
  return WeightingMeasure(support);
}

namespace {

double l2_discrete(const MonotoneMap& t1, const MonotoneMap& t2, const DiscreteMeasure& q) {
  double total = 0.0;
  const auto atoms = q.atoms();
  const auto weights = q.weights();
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const double d = t1(atoms[i]) - t2(atoms[i]);
    total += weights[i] * d * d;
  }
  return total;
}

// Value of the map on the segment [s, e] as an affine function, returned as
// (value at s, left limit at e). No knot lies strictly inside the segment.
std::pair<double, double> segment_values(const MonotoneMap& map, double s, double e) {
  const double vs = map(s);
  return {vs, map.mode() == MapMode::Step ? vs : map(e)};
}

double l2_uniform(const MonotoneMap& t1, const MonotoneMap& t2, Interval support) {
  std::vector<double> breaks{support.lo, support.hi};
  for (const auto* map : {&t1, &t2}) {
    for (const Knot& k : map->knots()) {
      if (k.x > support.lo && k.x < support.hi) breaks.push_back(k.x);
    }
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  double total = 0.0;
  for (std::size_t s = 0; s + 1 < breaks.size(); ++s) {
    const double a = breaks[s], b = breaks[s + 1];
    const auto [p0, p1] = segment_values(t1, a, b);
    const auto [q0, q1] = segment_values(t2, a, b);
    const double d0 = p0 - q0, d1 = p1 - q1;
    total += (b - a) * (d0 * d0 + d0 * d1 + d1 * d1) / 3.0;
  }
  return total / (support.hi - support.lo);
}

}  // namespace

double l2_distance_sq(const MonotoneMap& t1, const MonotoneMap& t2, const WeightingMeasure& q) {
  if (!q.is_uniform()) return l2_discrete(t1, t2, q.measure());
  const Interval& s = q.interval();
  for (const auto* map : {&t1, &t2}) {
    if (!map->domain().contains(s.lo) || !map->domain().contains(s.hi)) {
      throw DomainError("l2_distance_sq: weighting support " + interval_str(s) +
                        " not covered by map domain " + interval_str(map->domain()));
    }
  }
  return l2_uniform(t1, t2, s);
}

MonotoneMap clamp_to(const MonotoneMap& map, Interval range) {
  if (!(range.lo < range.hi)) throw ArgumentError("clamp_to: degenerate interval " + interval_str(range));
  const auto clip = [&](double t) { return std::clamp(t, range.lo, range.hi); };
  const auto& knots = map.knots();

  std::vector<Knot> out;
  out.reserve(knots.size() + 2);
  for (std::size_t k = 0; k < knots.size(); ++k) {
    out.push_back({knots[k].x, clip(knots[k].t)});
    if (map.mode() != MapMode::Linear || k + 1 == knots.size()) continue;
    const Knot& l = knots[k];
    const Knot& r = knots[k + 1];
    for (double bound : {range.lo, range.hi}) {
      if (l.t < bound && bound < r.t) {
        const double x = l.x + (bound - l.t) * (r.x - l.x) / (r.t - l.t);
        if (x > out.back().x && x < r.x) out.push_back({x, bound});
      }
    }
  }
  return MonotoneMap(map.domain(), std::move(out), map.mode());
}

}  // namespace otreg
