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

#include "swflow/rng.hpp"

#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"

using namespace swflow;

TEST_CASE("stream draws are pure functions of key and counter") {
  const RngStream a = substream(42, 7, 3);
  const RngStream b = substream(42, 7, 3);
  for (std::uint64_t c = 0; c < 100; ++c) {
    CHECK(a.word(c) == b.word(c));
    CHECK(a.uniform(c) == b.uniform(c));
    CHECK(a.normal(c) == b.normal(c));
  }
}

TEST_CASE("distinct roles and indices decorrelate streams") {
  const RngStream a = substream(42, 7, 3);
  CHECK(a.word(0) != substream(42, 7, 4).word(0));
  CHECK(a.word(0) != substream(42, 8, 3).word(0));
  CHECK(a.word(0) != substream(43, 7, 3).word(0));
  CHECK(substream(42, 7, 3).key() == derive_seed(42, 7, 3));
}

TEST_CASE("uniform stays strictly inside (0, 1) and looks uniform") {
  const RngStream s = substream(1, 2, 3);
  std::vector<double> draws;
  double sum = 0.0;
  for (std::uint64_t c = 0; c < 100000; ++c) {
    const double u = s.uniform(c);
    CHECK(u > 0.0);
    CHECK(u < 1.0);
    draws.push_back(u);
    sum += u;
  }
  CHECK(std::abs(sum / 1e5 - 0.5) < 0.005);
  // KS test at the 1% level; asymptotic critical value 1.628 / sqrt(n).
  CHECK(oracles::ks_statistic_uniform(draws) < 1.628 / std::sqrt(1e5));
}

TEST_CASE("normal draws have standard moments") {
  const RngStream s = substream(9, 1, 0);
  const Index n = 200000;
  double sum = 0.0, sum_sq = 0.0;
  for (Index c = 0; c < n; ++c) {
    const double z = s.normal(static_cast<std::uint64_t>(c));
    sum += z;
    sum_sq += z * z;
  }
  const double mean = sum / static_cast<double>(n);
  const double var = sum_sq / static_cast<double>(n) - mean * mean;
  CHECK(std::abs(mean) < 0.01);
  CHECK(std::abs(var - 1.0) < 0.02);
}

TEST_CASE("normal_matrix keys entries to their slot") {
  const RngStream s = substream(5, 5, 5);
  const Matrix m = normal_matrix(4, 3, s);
  for (Index i = 0; i < 4; ++i)
    for (Index j = 0; j < 3; ++j)
      CHECK(m(i, j) == s.normal(static_cast<std::uint64_t>(i * 3 + j)));
}

TEST_CASE("uniform_index respects its bound") {
  const RngStream s = substream(11, 0, 0);
  for (std::uint64_t c = 0; c < 1000; ++c) {
    const Index i = s.uniform_index(c, 7);
    CHECK(i >= 0);
    CHECK(i < 7);
  }
  CHECK_THROWS_AS(s.uniform_index(0, 0), std::invalid_argument);
}

TEST_CASE("sample_without_replacement returns sorted distinct indices") {
  const RngStream s = substream(3, 1, 4);
  const std::vector<Index> picked = sample_without_replacement(10, 40, s);
  REQUIRE(picked.size() == 10);
  std::set<Index> seen;
  Index prev = -1;
  for (Index i : picked) {
    CHECK(i >= 0);
    CHECK(i < 40);
    CHECK(i > prev);
    prev = i;
    seen.insert(i);
  }
  CHECK(seen.size() == 10);
}

TEST_CASE("sampling all indices yields the identity") {
  const RngStream s = substream(8, 8, 8);
  const std::vector<Index> all = sample_without_replacement(15, 15, s);
  for (Index i = 0; i < 15; ++i) CHECK(all[static_cast<std::size_t>(i)] == i);
}

TEST_CASE("subsample frequencies are close to uniform") {
  // Each of 20 indices should appear in a 5-of-20 draw with frequency 1/4.
  std::vector<int> counts(20, 0);
  const int trials = 20000;
  for (int t = 0; t < trials; ++t) {
    const RngStream s = substream(77, 1, static_cast<std::uint64_t>(t));
    for (Index i : sample_without_replacement(5, 20, s))
      counts[static_cast<std::size_t>(i)]++;
  }
  for (int c : counts)
    CHECK(std::abs(c / static_cast<double>(trials) - 0.25) < 0.015);
}

TEST_CASE("sample_without_replacement validates its arguments") {
  const RngStream s = substream(0, 0, 0);
  CHECK_THROWS_AS(sample_without_replacement(5, 3, s), std::invalid_argument);
  CHECK_THROWS_AS(sample_without_replacement(-1, 3, s), std::invalid_argument);
}

TEST_CASE("matrix_fingerprint reacts to any change") {
  Matrix m = normal_matrix(6, 4, substream(1, 0, 0));
  const std::uint64_t base = matrix_fingerprint(m);
  CHECK(base == matrix_fingerprint(m));

  Matrix changed = m;
  changed(3, 2) += 1e-15;
  CHECK(matrix_fingerprint(changed) != base);

  // Same data, different shape.
  Matrix reshaped(4, 6);
  for (Index i = 0; i < 6; ++i)
    for (Index j = 0; j < 4; ++j) reshaped(j, i) = m(i, j);
  CHECK(matrix_fingerprint(reshaped) != base);
}
