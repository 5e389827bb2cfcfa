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

#ifndef SWFLOW_DATAGEN_HPP_
#define SWFLOW_DATAGEN_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Cholesky>

#include "swflow/types.hpp"

namespace swflow {

// Mixture of Gaussians with positive weights summing to 1 and SPD
// covariances (smallest eigenvalue >= 1e-12). Cholesky factors are cached
// at construction; components are immutable afterwards.
class GaussianMixture {
 public:
  struct Component {
    Vector mean;
    Matrix covariance;
    double weight = 0.0;
  };

  explicit GaussianMixture(std::vector<Component> components);

  Index dim() const { return dim_; }
  Index size() const { return static_cast<Index>(components_.size()); }
  const std::vector<Component>& components() const { return components_; }

  // Mixture probability density at x.
  double density(const Eigen::Ref<const Vector>& x) const;

  // n i.i.d. draws: categorical component pick, then mean + L * z with L the
  // cached Cholesky factor. Deterministic per seed.
  Matrix sample(Index n, std::uint64_t seed) const;

 private:
  std::vector<Component> components_;
  std::vector<Matrix> cholesky_;      // lower factors, one per component
  std::vector<double> log_norm_;      // log of (2*pi)^(-d/2) * det(Sigma)^(-1/2)
  std::vector<double> cum_weights_;   // inclusive prefix sums, last == 1
  Index dim_ = 0;
};

inline Matrix sample_mixture(const GaussianMixture& mixture, Index n,
                             std::uint64_t seed) {
  return mixture.sample(n, seed);
}

// Five equally weighted isotropic components with means equally spaced on a
// centered circle. variance is the per-coordinate variance of each component.
GaussianMixture five_gaussian_ring(double radius = 6.0, double variance = 0.25);

// Point cloud with a record of whether every row was scaled to unit norm.
struct Dataset {
  Matrix rows;
  bool normalized = false;
};

// Scales each row to unit Euclidean norm. Rows with norm below 1e-12 are
// rejected (the direction of a near-zero row is meaningless).
Dataset normalize_rows(const Eigen::Ref<const Matrix>& rows);

// Reads a headerless CSV of decimal floats, one sample per row. Rejects
// ragged rows, non-finite or unparsable values, and empty files, reporting
// the 1-based line. If expect_dim > 0 the column count must match. The
// normalized flag is set when every row norm is within 1e-9 of 1.
Dataset load_dataset(const std::string& path, Index expect_dim = 0);

// Writes the matrix in the same CSV format at 17 significant digits so a
// save/load round trip is bit-faithful.
void save_dataset(const std::string& path, const Eigen::Ref<const Matrix>& rows);

// Density value t such that {x : density(x) >= t} holds the given
// probability mass, estimated from n_samples Monte Carlo draws.
double level_set_threshold(const GaussianMixture& mixture, double mass,
                           Index n_samples, std::uint64_t seed);

// Fraction of rows whose mixture density is >= threshold.
double fraction_inside(const GaussianMixture& mixture,
                       const Eigen::Ref<const Matrix>& points,
                       double threshold);

// (x, y, density) triples on a regular grid over [lo, hi]^2, row-major in y
// then x. Requires a 2D mixture.
struct GridPoint {
  double x = 0.0;
  double y = 0.0;
  double density = 0.0;
};
std::vector<GridPoint> density_grid(const GaussianMixture& mixture, double lo,
                                    double hi, Index resolution);

}  // namespace swflow

#endif  // SWFLOW_DATAGEN_HPP_
