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

#ifndef SWFLOW_MECHANISM_HPP
#define SWFLOW_MECHANISM_HPP

#include <cstdint>

#include "swflow/types.hpp"

namespace swflow {

/// Gaussian smoothing noise applied to projected data.
/// sigma == 0 selects the non-private path (perturb becomes the identity).
struct SmoothingParams {
  double sigma = 0.0;
  std::uint64_t seed = 0;
};

/// projected + Z, with Z i.i.d. N(0, sigma^2) keyed to (seed, row, column).
/// Bit-exact identity when sigma == 0; deterministic given seed.
Matrix perturb(const Eigen::Ref<const Matrix>& projected,
               const SmoothingParams& params);

/// Standard-normal inverse CDF (rational approximation, relative error well
/// below 1e-8 over (0, 1)).
double normal_quantile(double p);

/// High-probability bound on the squared Frobenius distance between the
/// random projections of two datasets differing in one unit-norm row:
///
///   w(n_theta, delta) = n_theta / d
///                     + (Phi^{-1}(1 - delta) / d) * sqrt(2 n_theta (d-1) / (d+2))
///
/// Valid for n_theta > 30 (concentration regime) and delta in (0, 0.5);
/// d must be >= 2.
double sensitivity_bound(Index n_theta, double delta, Index d);

/// Whether the l2 sensitivity fed to the Gaussian mechanism is sqrt(w)
/// (w bounds a squared Frobenius norm; default) or w itself.
enum class SensitivityReading { kSqrtW, kW };

/// Smallest noise level sigma = c * Delta / epsilon making the projection
/// mechanism (epsilon, delta)-DP, with c = sqrt(2 ln(1.25/delta)) plus a
/// 1e-6 margin for the strict inequality, and
/// Delta = norm_factor * sqrt(w(n_theta, delta)) under the default reading.
/// norm_factor is 2 for unit-normalized inputs (adjacent rows can be
/// antipodal on the sphere), 1 when the raw rows already differ by at most 1.
double sigma_for_epsilon(double epsilon, double delta, Index n_theta, Index d,
                         double norm_factor,
                         SensitivityReading reading = SensitivityReading::kSqrtW);

}  // namespace swflow

#endif  // SWFLOW_MECHANISM_HPP
