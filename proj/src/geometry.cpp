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
#include <stdexcept>

#include "swflow/rng.hpp"

namespace swflow {
namespace {

constexpr double kUnitNormTol = 1e-9;
constexpr double kDegenerateNorm = 1e-12;
// Retry budget per column for degenerate Gaussian draws. A single retry has
// probability ~0 already; the budget only bounds the counter layout.
constexpr std::uint64_t kMaxAttempts = 64;

}  // namespace

ProjectionSet::ProjectionSet(Matrix directions, std::uint64_t seed)
    : directions_(std::move(directions)), seed_(seed) {
  if (directions_.rows() < 1 || directions_.cols() < 1)
    throw std::invalid_argument("ProjectionSet: need d >= 1 and n_theta >= 1");
  for (Index j = 0; j < directions_.cols(); ++j) {
    const double norm = directions_.col(j).norm();
    if (!std::isfinite(norm) || std::abs(norm - 1.0) > kUnitNormTol)
      throw std::invalid_argument(
          "ProjectionSet: column " + std::to_string(j) + " is not unit-norm");
  }
}

ProjectionSet ProjectionSet::select(const std::vector<Index>& columns) const {
  if (columns.empty())
    throw std::invalid_argument("ProjectionSet::select: empty column set");
  Matrix sub(dim(), static_cast<Index>(columns.size()));
  for (std::size_t k = 0; k < columns.size(); ++k) {
    const Index j = columns[k];
    if (j < 0 || j >= count())
      throw std::invalid_argument("ProjectionSet::select: column out of range");
    sub.col(static_cast<Index>(k)) = directions_.col(j);
  }
  return ProjectionSet(std::move(sub), seed_);
}

ProjectionSet sample_sphere(Index d, Index n_theta, std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("sample_sphere: d must be >= 1");
  if (n_theta < 1) throw std::invalid_argument("sample_sphere: n_theta must be >= 1");

  const RngStream stream = substream(seed, /*role=*/0x5f3759df, 0);
  Matrix dirs(d, n_theta);
  Vector draw(d);
  for (Index j = 0; j < n_theta; ++j) {
    const std::uint64_t column_base =
        static_cast<std::uint64_t>(j) * kMaxAttempts * static_cast<std::uint64_t>(d);
    for (std::uint64_t attempt = 0; attempt < kMaxAttempts; ++attempt) {
      const std::uint64_t base = column_base + attempt * static_cast<std::uint64_t>(d);
      for (Index i = 0; i < d; ++i)
        draw(i) = stream.normal(base + static_cast<std::uint64_t>(i));
      const double norm = draw.norm();
      if (norm >= kDegenerateNorm) {
        dirs.col(j) = draw / norm;
        break;
      }
    }
  }
  return ProjectionSet(std::move(dirs), seed);
}

Matrix project(const Eigen::Ref<const Matrix>& points,
               const ProjectionSet& directions) {
  if (points.cols() != directions.dim())
    throw std::invalid_argument(
        "project: points have dimension " + std::to_string(points.cols()) +
        ", directions have dimension " + std::to_string(directions.dim()));
  return points * directions.directions();
}

}  // namespace swflow
