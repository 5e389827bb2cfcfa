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

#include "swflow/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "swflow/geometry.hpp"
#include "swflow/rng.hpp"

using namespace swflow;

namespace {

Vector to_vector(std::initializer_list<double> values) {
  Vector v(static_cast<Index>(values.size()));
  Index i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

MetricConfig eval_config(Index n_theta, double sigma, std::uint64_t seed) {
  MetricConfig config;
  config.n_theta_eval = n_theta;
  config.sigma_eval = sigma;
  config.seed = seed;
  return config;
}

}  // namespace

TEST_CASE("distance from a sample to itself is exactly zero") {
  const Matrix a = normal_matrix(60, 3, substream(4, 0, 0));
  CHECK(sliced_w2(a, a, eval_config(40, 0.0, 9)) == 0.0);
  // Smoothing noise is keyed to the input, so identical inputs receive
  // identical noise and the distance stays exactly zero.
  CHECK(sliced_w2(a, a, eval_config(40, 0.7, 9)) == 0.0);
}

TEST_CASE("one-dimensional point masses recover their separation") {
  Matrix a = Matrix::Zero(50, 1);
  Matrix b = Matrix::Constant(50, 1, 3.0);
  const double d = sliced_w2(a, b, eval_config(8, 0.0, 2));
  CHECK(std::abs(d - 3.0) <= 1e-12);
}

TEST_CASE("estimate is exactly symmetric even when smoothed") {
  const Matrix a = normal_matrix(80, 4, substream(21, 0, 0));
  const Matrix b = 2.0 * normal_matrix(80, 4, substream(22, 0, 0));
  const MetricConfig config = eval_config(64, 0.5, 77);
  const double ab = sliced_w2(a, b, config);
  const double ba = sliced_w2(b, a, config);
  CHECK(ab == ba);
  CHECK(ab > 0.0);
}

TEST_CASE("duplicating every sample point leaves the distance at zero") {
  // Zero up to quantile-interpolation rounding: the shared levels land one
  // ulp away from the duplicated order statistics.
  const Matrix a = normal_matrix(30, 2, substream(31, 0, 0));
  Matrix doubled(60, 2);
  doubled << a, a;
  CHECK(sliced_w2(a, doubled, eval_config(32, 0.0, 5)) <= 1e-12);

  const Vector x = a.col(0);
  Vector xx(60);
  xx << x, x;
  CHECK(w2sq_1d(x, xx) <= 1e-24);
}

TEST_CASE("triangle inequality holds over a shared direction set") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Matrix a = normal_matrix(40, 3, substream(seed, 1, 0));
    const Matrix b =
        normal_matrix(40, 3, substream(seed, 2, 0)) * 1.5;
    const Matrix c =
        normal_matrix(40, 3, substream(seed, 3, 0)).array() + 0.8;
    const MetricConfig config = eval_config(48, 0.0, seed);
    const double ab = sliced_w2(a, b, config);
    const double bc = sliced_w2(b, c, config);
    const double ac = sliced_w2(a, c, config);
    CHECK(ac <= ab + bc + 1e-12);
  }
}

TEST_CASE("smoothing contracts the distance between scaled Gaussians") {
  // Convolving both measures with the same Gaussian shrinks the transport
  // cost between a narrow and a wide Gaussian. Checked at the median over
  // seeds because individual estimates fluctuate.
  int smaller = 0;
  const int trials = 100;
  for (int t = 0; t < trials; ++t) {
    const auto seed = static_cast<std::uint64_t>(t);
    const Matrix a = normal_matrix(256, 2, substream(seed, 10, 0));
    const Matrix b = 3.0 * normal_matrix(256, 2, substream(seed, 11, 0));
    const double plain = sliced_w2(a, b, eval_config(64, 0.0, seed));
    const double smoothed = sliced_w2(a, b, eval_config(64, 1.0, seed));
    if (smoothed < plain) ++smaller;
  }
  CHECK(smaller > trials / 2);
}

TEST_CASE("single-direction estimate matches a hand-rolled projection") {
  const Matrix a = normal_matrix(12, 3, substream(41, 0, 0));
  const Matrix b = normal_matrix(12, 3, substream(42, 0, 0)).array() + 1.0;
  const std::uint64_t seed = 13;
  const double estimate = sliced_w2(a, b, eval_config(1, 0.0, seed));

  const ProjectionSet direction = sample_sphere(3, 1, seed);
  const Vector pa = (a * direction.directions()).col(0);
  const Vector pb = (b * direction.directions()).col(0);
  CHECK(estimate == doctest::Approx(std::sqrt(w2sq_1d(pa, pb))).epsilon(1e-12));
}

TEST_CASE("equal-size transport cost equals the best permutation") {
  std::mt19937 gen(98765);
  std::uniform_int_distribution<int> size_dist(1, 6);
  std::uniform_real_distribution<double> value_dist(-5.0, 5.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = size_dist(gen);
    Vector x(n), y(n);
    for (int i = 0; i < n; ++i) {
      x(i) = value_dist(gen);
      y(i) = value_dist(gen);
    }
    std::vector<double> xs(x.data(), x.data() + n);
    std::vector<double> ys(y.data(), y.data() + n);
    const double oracle = oracles::min_squared_coupling(xs, ys);
    CHECK(std::abs(w2sq_1d(x, y) - oracle) <= 1e-9);
  }
}

TEST_CASE("unequal sizes fall back to quantile levels") {
  // N(0,1)-ish spread against itself at a different sample size should be
  // small; against a shifted copy the shift dominates.
  const Vector x = normal_matrix(2000, 1, substream(51, 0, 0)).col(0);
  const Vector y = normal_matrix(3001, 1, substream(52, 0, 0)).col(0);
  CHECK(w2sq_1d(x, y) < 0.02);
  const Vector shifted = y.array() + 4.0;
  CHECK(std::abs(std::sqrt(w2sq_1d(x, shifted)) - 4.0) < 0.1);
}

TEST_CASE("metric inputs are validated") {
  const Matrix a = Matrix::Zero(4, 2);
  const Matrix b = Matrix::Zero(4, 3);
  CHECK_THROWS_AS(sliced_w2(a, b, eval_config(8, 0.0, 1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(sliced_w2(Matrix(0, 2), a, eval_config(8, 0.0, 1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(sliced_w2(a, a, eval_config(0, 0.0, 1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(sliced_w2(a, a, eval_config(8, -0.5, 1)),
                  std::invalid_argument);
  Matrix bad = a;
  bad(1, 1) = std::nan("");
  CHECK_THROWS_AS(sliced_w2(bad, a, eval_config(8, 0.0, 1)),
                  std::invalid_argument);
}
