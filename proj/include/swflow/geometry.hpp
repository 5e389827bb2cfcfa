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

#ifndef SWFLOW_GEOMETRY_HPP
#define SWFLOW_GEOMETRY_HPP

#include <cstdint>
#include <vector>

#include "swflow/types.hpp"

namespace swflow {

/// A set of unit slicing directions, stored column-wise (d x n_theta) so that
/// each direction's 1D projections are contiguous.
class ProjectionSet {
 public:
  /// Validates that every column is unit-norm within 1e-9.
  ProjectionSet(Matrix directions, std::uint64_t seed);

  const Matrix& directions() const { return directions_; }
  std::uint64_t seed() const { return seed_; }
  Index dim() const { return directions_.rows(); }
  Index count() const { return directions_.cols(); }

  /// Sub-set of directions, in the order given by `columns`.
  ProjectionSet select(const std::vector<Index>& columns) const;

 private:
  Matrix directions_;
  std::uint64_t seed_;
};

/// n_theta i.i.d. directions uniform on the unit sphere in R^d, each a
/// normalized standard Gaussian draw. Deterministic given seed.
ProjectionSet sample_sphere(Index d, Index n_theta, std::uint64_t seed);

/// (n x d) points against (d x k) directions -> (n x k) inner products.
Matrix project(const Eigen::Ref<const Matrix>& points,
               const ProjectionSet& directions);

}  // namespace swflow

#endif  // SWFLOW_GEOMETRY_HPP
