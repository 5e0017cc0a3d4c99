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

#include <gtest/gtest.h>

#include "otreg/error.hpp"
#include "otreg/regression.hpp"
#include "test_support.hpp"

using namespace otreg;
using otreg::testing::Rng;

namespace {

RegressionDataset dirac_data(Interval dom, const std::vector<std::pair<double, double>>& xy) {
  std::vector<MeasurePair> pairs;
  for (auto [x, y] : xy) pairs.push_back({DiscreteMeasure::dirac(x), DiscreteMeasure::dirac(y)});
  return RegressionDataset(dom, std::move(pairs));
}

std::vector<double> knot_values(const MonotoneMap& m) {
  std::vector<double> v;
  for (const auto& k : m.knots()) v.push_back(k.t);
  return v;
}

}  // namespace

TEST(RegressionDataset, Validation) {
  EXPECT_THROW(RegressionDataset({0, 1}, {}), ArgumentError);
  EXPECT_THROW(dirac_data({0, 1}, {{1.5, 0}}), ArgumentError);
  EXPECT_THROW(dirac_data({1, 1}, {{1, 0}}), ArgumentError);
}

TEST(Pool, Examples) {
  const auto p1 = pool(dirac_data({0, 1}, {{0.3, 0.7}}));
  EXPECT_EQ(p1.points, (std::vector<WeightedPoint>{{0.3, 0.7, 1}}));
  EXPECT_EQ(p1.constant, 0.0);

  const auto p2 = pool(RegressionDataset(
      {0, 1}, {{DiscreteMeasure({0.2, 0.8}, {0.5, 0.5}), DiscreteMeasure::dirac(3.0)}}));
  EXPECT_EQ(p2.points, (std::vector<WeightedPoint>{{0.2, 3, 0.5}, {0.8, 3, 0.5}}));
  EXPECT_EQ(p2.constant, 0.0);

  const auto p3 = pool(RegressionDataset(
      {0, 1}, {{DiscreteMeasure::dirac(0.0), DiscreteMeasure({0, 2}, {0.5, 0.5})}}));
  EXPECT_EQ(p3.points, (std::vector<WeightedPoint>{{0, 1, 1}}));
  EXPECT_DOUBLE_EQ(p3.constant, 1.0);
}

TEST(Pool, SplitsResponseQuantileAcrossCovariateAtoms) {
  // mu = {0:1/2, 1:1/2}, nu = {0:1/4, 4:3/4}: on (0,1/2] the response
  // quantile is 0 then 4, mean 2 and variance 1/2 * 4 = 2; on (1/2,1] it is 4.
  const auto p = pool(RegressionDataset(
      {0, 1}, {{DiscreteMeasure({0, 1}, {0.5, 0.5}), DiscreteMeasure({0, 4}, {0.25, 0.75})}}));
  EXPECT_EQ(p.points, (std::vector<WeightedPoint>{{0, 2, 0.5}, {1, 4, 0.5}}));
  EXPECT_DOUBLE_EQ(p.constant, 2.0);
}

TEST(Objective, Examples) {
  const Interval dom{0, 1};
  const auto id = MonotoneMap::identity(dom);
  EXPECT_EQ(objective(id, dirac_data(dom, {{0.2, 0.2}, {0.9, 0.9}})), 0.0);
  EXPECT_EQ(objective(id, dirac_data(dom, {{0, 1}})), 0.5);

  const RegressionDataset d(dom, {{DiscreteMeasure::dirac(0.0), DiscreteMeasure({0, 2}, {0.5, 0.5})}});
  EXPECT_DOUBLE_EQ(objective(MonotoneMap::constant(dom, 1.0), d), 0.5);
  EXPECT_DOUBLE_EQ(pool(d).quadratic_form(MonotoneMap::constant(dom, 1.0)) / 2.0, 0.5);
}

TEST(Objective, DomainMismatchIsDomainError) {
  const auto data = dirac_data({0, 2}, {{1.5, 1}});
  EXPECT_THROW(objective(MonotoneMap::identity({0, 1}), data), DomainError);
}

TEST(Fit, Examples) {
  const Interval dom{0, 1};
  const auto violating = fit(dirac_data(dom, {{0, 1}, {1, 0}}), false);
  EXPECT_EQ(knot_values(violating), (std::vector<double>{0.5, 0.5}));
  EXPECT_EQ(violating(0.3), 0.5);

  const auto mono = fit(dirac_data(dom, {{0, 0.1}, {0.5, 0.4}, {1, 0.9}}));
  EXPECT_EQ(mono.mode(), MapMode::Step);
  EXPECT_EQ(mono(0), 0.1);
  EXPECT_EQ(mono(0.5), 0.4);
  EXPECT_EQ(mono(1), 0.9);
  EXPECT_EQ(mono(0.49), 0.1);

  const auto clipped = fit(dirac_data(dom, {{0, -0.5}, {1, 1.5}}));
  EXPECT_EQ(knot_values(clipped), (std::vector<double>{0, 1}));
  EXPECT_EQ(knot_values(fit(dirac_data(dom, {{0, -0.5}, {1, 1.5}}), false)), (std::vector<double>{-0.5, 1.5}));
}

TEST(Risk, Examples) {
  const auto id = MonotoneMap::identity({0, 1});
  const auto half = MonotoneMap::constant({0, 1}, 0.5);
  EXPECT_EQ(risk(id, id, WeightingMeasure::uniform({0, 1})), 0.0);
  EXPECT_NEAR(risk(half, id, WeightingMeasure::uniform({0, 1})), 1.0 / 12.0, 1e-15);
  EXPECT_DOUBLE_EQ(risk(half, id, WeightingMeasure::discrete(DiscreteMeasure({0, 1}, {0.5, 0.5}))), 0.25);
  EXPECT_DOUBLE_EQ(risk(half, id, dirac_data({0, 1}, {{0, 3}, {1, 3}})), 0.25);
}

TEST(RegressionProperties, ReductionIdentity) {
  Rng rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const auto data = otreg::testing::random_general_dataset(rng, otreg::testing::uniform_int(rng, 1, 20), 6, {0, 1});
    const auto problem = pool(data);
    for (std::size_t j = 1; j < problem.points.size(); ++j) EXPECT_LT(problem.points[j - 1].x, problem.points[j].x);
    EXPECT_GE(problem.constant, 0.0);
    for (int m = 0; m < 10; ++m) {
      const auto t = otreg::testing::random_map(rng, {0, 1}, -1, 2);
      const double direct = objective(t, data);
      const double reduced = problem.quadratic_form(t) / (2.0 * data.size());
      EXPECT_NEAR(direct, reduced, 1e-10);
    }
  }
}

TEST(RegressionProperties, FitBeatsRandomCandidates) {
  Rng rng(42);
  for (int trial = 0; trial < 10; ++trial) {
    const auto data = otreg::testing::random_general_dataset(rng, 10, 4, {0, 1});
    const double best_clamped = objective(fit(data), data);
    const double best_free = objective(fit(data, false), data);
    EXPECT_LE(best_free, best_clamped + 1e-15);
    for (int c = 0; c < 300; ++c) {
      const auto in_range = otreg::testing::random_map(rng, {0, 1}, 0, 1, 10);
      EXPECT_LE(best_clamped, objective(in_range, data) + 1e-12);
      const auto wide = otreg::testing::random_map(rng, {0, 1}, -1, 2, 10);
      EXPECT_LE(best_free, objective(wide, data) + 1e-12);
    }
  }
}

TEST(RegressionProperties, DiracFitIsPavaOnPoints) {
  Rng rng(43);
  for (int trial = 0; trial < 50; ++trial) {
    const auto data = otreg::testing::random_dirac_dataset(rng, otreg::testing::uniform_int(rng, 1, 100), {0, 1}, -0.5, 1.5);
    std::vector<WeightedPoint> raw;
    for (const auto& p : data.pairs()) raw.push_back({p.covariate.atoms()[0], p.response.atoms()[0], 1.0});
    const auto merged = merge_ties(raw);
    const auto g = pava(merged);
    const auto unclamped = fit(data, false);
    ASSERT_EQ(unclamped.knots().size(), g.size());
    for (std::size_t j = 0; j < g.size(); ++j) {
      EXPECT_EQ(unclamped.knots()[j].x, merged[j].x);
      EXPECT_EQ(unclamped.knots()[j].t, g[j]);
    }
    const auto clamped = fit(data);
    for (std::size_t j = 0; j < g.size(); ++j) EXPECT_EQ(clamped.knots()[j].t, std::clamp(g[j], 0.0, 1.0));
  }
}

TEST(RegressionProperties, PermutationInvariance) {
  Rng rng(44);
  for (int trial = 0; trial < 30; ++trial) {
    const auto data = otreg::testing::random_dirac_dataset(rng, 60, {0, 1}, 0, 1);
    auto pairs = data.pairs();
    std::shuffle(pairs.begin(), pairs.end(), rng);
    EXPECT_EQ(fit(data), fit(RegressionDataset(data.domain(), pairs)));

    const auto general = otreg::testing::random_general_dataset(rng, 12, 5, {0, 1});
    auto gp = general.pairs();
    std::shuffle(gp.begin(), gp.end(), rng);
    EXPECT_EQ(fit(general), fit(RegressionDataset(general.domain(), gp)));
  }
}
