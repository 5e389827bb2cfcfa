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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace swflow {

double RngStream::uniform(std::uint64_t counter) const {
  // Top 53 bits, offset by half an ulp so the result never hits 0 or 1.
  return (static_cast<double>(word(counter) >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::normal(std::uint64_t counter) const {
  const double u1 = uniform(2 * counter);
  const double u2 = uniform(2 * counter + 1);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

Index RngStream::uniform_index(std::uint64_t counter, Index bound) const {
  if (bound <= 0) throw std::invalid_argument("uniform_index: bound must be positive");
  const Index i = static_cast<Index>(uniform(counter) * static_cast<double>(bound));
  return std::min(i, bound - 1);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t role,
                          std::uint64_t index) {
  std::uint64_t key = mix64(seed + kGoldenGamma);
  key = mix64(key ^ (role + kGoldenGamma));
  key = mix64(key ^ (index + kGoldenGamma));
  return key;
}

RngStream substream(std::uint64_t seed, std::uint64_t role,
                    std::uint64_t index) {
  return RngStream(derive_seed(seed, role, index));
}

Matrix normal_matrix(Index rows, Index cols, const RngStream& stream) {
  Matrix out(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j)
      out(i, j) = stream.normal(static_cast<std::uint64_t>(i * cols + j));
  return out;
}

std::vector<Index> sample_without_replacement(Index m, Index n,
                                              const RngStream& stream) {
  if (m < 0 || n < 0 || m > n)
    throw std::invalid_argument("sample_without_replacement: need 0 <= m <= n");
  std::vector<Index> pool(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
  for (Index k = 0; k < m; ++k) {
    const Index j =
        k + stream.uniform_index(static_cast<std::uint64_t>(k), n - k);
    std::swap(pool[static_cast<std::size_t>(k)], pool[static_cast<std::size_t>(j)]);
  }
  pool.resize(static_cast<std::size_t>(m));
  std::sort(pool.begin(), pool.end());
  return pool;
}

std::uint64_t matrix_fingerprint(const Eigen::Ref<const Matrix>& m) {
  // FNV-1a, 64-bit.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto absorb = [&h](const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= p[i];
      h *= 0x100000001b3ULL;
    }
  };
  const std::uint64_t rows = static_cast<std::uint64_t>(m.rows());
  const std::uint64_t cols = static_cast<std::uint64_t>(m.cols());
  absorb(&rows, sizeof rows);
  absorb(&cols, sizeof cols);
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) {
      const double v = m(i, j);
      absorb(&v, sizeof v);
    }
  return h;
}

}  // namespace swflow
