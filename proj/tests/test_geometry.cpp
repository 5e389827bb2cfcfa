//
// Copyright 2026 The swflow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "swflow/geometry.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "swflow/rng.hpp"

using namespace swflow;

TEST_CASE("one-dimensional directions are signs") {
  const ProjectionSet set = sample_sphere(1, 4, 123);
  REQUIRE(set.dim() == 1);
  REQUIRE(set.count() == 4);
  for (Index j = 0; j < 4; ++j) {
    const double v = set.directions()(0, j);
    CHECK((v == 1.0 || v == -1.0));
  }
}

TEST_CASE("sampled directions are unit vectors") {
  const ProjectionSet set = sample_sphere(3, 1000, 7);
  for (Index j = 0; j < set.count(); ++j)
    CHECK(std::abs(set.directions().col(j).norm() - 1.0) <= 1e-9);
}

TEST_CASE("sampling is bit-reproducible per seed") {
  const ProjectionSet a = sample_sphere(5, 64, 99);
  const ProjectionSet b = sample_sphere(5, 64, 99);
  CHECK(a.directions() == b.directions());
  const ProjectionSet c = sample_sphere(5, 64, 100);
  CHECK(a.directions() != c.directions());
}

TEST_CASE("planar angles are uniform") {
  const Index n = 100000;
  const ProjectionSet set = sample_sphere(2, n, 2024);
  std::vector<double> unit_angles;
  std::vector<int> bins(64, 0);
  for (Index j = 0; j < n; ++j) {
    double angle = std::atan2(set.directions()(1, j), set.directions()(0, j));
    double u = (angle + std::numbers::pi) / (2.0 * std::numbers::pi);
    u = std::min(std::max(u, 0.0), 1.0);
    unit_angles.push_back(u);
    const int b = std::min(static_cast<int>(u * 64.0), 63);
    bins[static_cast<std::size_t>(b)]++;
  }

  // KS test at the 1% level.
  CHECK(oracles::ks_statistic_uniform(unit_angles) < 1.628 / std::sqrt(1e5));

  // Chi-square test with 64 bins at the 1% level; the 0.99 quantile of a
  // chi-square with 63 degrees of freedom is 92.010.
  const double expected = static_cast<double>(n) / 64.0;
  double chi2 = 0.0;
  for (int b : bins) {
    const double diff = static_cast<double>(b) - expected;
    chi2 += diff * diff / expected;
  }
  CHECK(chi2 < 92.01002361413214);
}

TEST_CASE("projection equals per-pair inner products") {
  const Matrix points = normal_matrix(5, 3, substream(4, 0, 0));
  const ProjectionSet set = sample_sphere(3, 7, 11);
  const Matrix proj = project(points, set);
  REQUIRE(proj.rows() == 5);
  REQUIRE(proj.cols() == 7);
  for (Index i = 0; i < 5; ++i)
    for (Index j = 0; j < 7; ++j) {
      double dot = 0.0;
      for (Index t = 0; t < 3; ++t)
        dot += points(i, t) * set.directions()(t, j);
      CHECK(std::abs(proj(i, j) - dot) <= 1e-12);
    }
}

TEST_CASE("projection is linear in the points") {
  const Matrix x = normal_matrix(6, 4, substream(1, 1, 0));
  const Matrix y = normal_matrix(6, 4, substream(1, 2, 0));
  const ProjectionSet set = sample_sphere(4, 9, 5);
  const Matrix lhs = project(2.5 * x - 0.75 * y, set);
  const Matrix rhs = 2.5 * project(x, set) - 0.75 * project(y, set);
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("projections obey the Cauchy-Schwarz bound") {
  const Matrix points = 3.0 * normal_matrix(40, 6, substream(3, 0, 0));
  const ProjectionSet set = sample_sphere(6, 25, 17);
  const Matrix proj = project(points, set);
  for (Index i = 0; i < points.rows(); ++i) {
    const double bound = points.row(i).norm() + 1e-9;
    for (Index j = 0; j < set.count(); ++j)
      CHECK(std::abs(proj(i, j)) <= bound);
  }
}

TEST_CASE("invalid shapes and scales are rejected") {
  CHECK_THROWS_AS(sample_sphere(0, 4, 1), std::invalid_argument);
  CHECK_THROWS_AS(sample_sphere(2, 0, 1), std::invalid_argument);

  Matrix scaled(2, 1);
  scaled << 2.0, 0.0;  // not unit norm
  CHECK_THROWS_AS(ProjectionSet(scaled, 0), std::invalid_argument);

  const ProjectionSet set = sample_sphere(3, 4, 1);
  const Matrix points = Matrix::Zero(5, 2);  // wrong dimension
  CHECK_THROWS_AS(project(points, set), std::invalid_argument);
}

TEST_CASE("column selection keeps the chosen directions") {
  const ProjectionSet set = sample_sphere(3, 10, 21);
  const ProjectionSet sub = set.select({1, 4, 7});
  REQUIRE(sub.count() == 3);
  CHECK(sub.directions().col(0) == set.directions().col(1));
  CHECK(sub.directions().col(1) == set.directions().col(4));
  CHECK(sub.directions().col(2) == set.directions().col(7));
  CHECK_THROWS_AS(set.select({10}), std::invalid_argument);
  CHECK_THROWS_AS(set.select({-1}), std::invalid_argument);
}
