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

#include "otreg/isotonic.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "otreg/error.hpp"

namespace otreg {

namespace {

void check_point(const WeightedPoint& p) {
  if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.w)) {
    throw ArgumentError("isotonic: non-finite point");
  }
  if (!(p.w > 0.0)) throw ArgumentError("isotonic: weight must be positive");
}

struct Block {
  double sum_w;
  double sum_wy;
  double value;
  std::size_t count;
};

}  // namespace

TieMerge merge_ties_with_dispersion(std::span<const WeightedPoint> points) {
  std::vector<WeightedPoint> sorted(points.begin(), points.end());
  for (const auto& p : sorted) check_point(p);
  // Full lexicographic key so the summation order within a tie group is fixed.
  std::sort(sorted.begin(), sorted.end(), [](const WeightedPoint& a, const WeightedPoint& b) {
    return std::tie(a.x, a.y, a.w) < std::tie(b.x, b.y, b.w);
  });

  TieMerge out;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i + 1;
    while (j < sorted.size() && sorted[j].x == sorted[i].x) ++j;
    if (j == i + 1) {
      out.points.push_back(sorted[i]);
    } else {
      double sw = 0.0, swy = 0.0;
      for (std::size_t k = i; k < j; ++k) {
        sw += sorted[k].w;
        swy += sorted[k].w * sorted[k].y;
      }
      const double mean = swy / sw;
      for (std::size_t k = i; k < j; ++k) {
        const double d = sorted[k].y - mean;
        out.dispersion += sorted[k].w * d * d;
      }
      out.points.push_back({sorted[i].x, mean, sw});
    }
    i = j;
  }
  return out;
}

std::vector<WeightedPoint> merge_ties(std::span<const WeightedPoint> points) {
  return merge_ties_with_dispersion(points).points;
}

std::vector<double> pava(std::span<const WeightedPoint> points) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    check_point(points[i]);
    if (i > 0 && !(points[i].x > points[i - 1].x)) {
      throw ArgumentError("pava: locations must be strictly increasing");
    }
  }

  std::vector<Block> stack;
  stack.reserve(points.size());
  for (const auto& p : points) {
    stack.push_back({p.w, p.w * p.y, p.y, 1});
    while (stack.size() > 1 && stack[stack.size() - 2].value > stack.back().value) {
      const Block top = stack.back();
      stack.pop_back();
      Block& prev = stack.back();
      prev.sum_w += top.sum_w;
      prev.sum_wy += top.sum_wy;
      prev.count += top.count;
      prev.value = prev.sum_wy / prev.sum_w;
    }
  }

  std::vector<double> fitted;
  fitted.reserve(points.size());
  for (const auto& b : stack) fitted.insert(fitted.end(), b.count, b.value);
  return fitted;
}

}  // namespace otreg
