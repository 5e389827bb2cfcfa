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

#ifndef SWFLOW_METRICS_HPP_
#define SWFLOW_METRICS_HPP_

#include <cstdint>

#include "swflow/types.hpp"

namespace swflow {

struct MetricConfig {
  Index n_theta_eval = 500;  // Monte Carlo directions
  double sigma_eval = 0.0;   // smoothing noise std (0 for the plain distance)
  std::uint64_t seed = 0;
};

// Squared 2-Wasserstein distance between two 1D samples, coupled at
// min(n, m) evenly spaced quantile levels. At equal sizes this is exactly
// the sorted (monotone) coupling.
double w2sq_1d(const Eigen::Ref<const Vector>& x,
               const Eigen::Ref<const Vector>& y);

// Monte Carlo sliced 2-Wasserstein distance between the rows of a and b:
// average of per-direction 1D squared distances over sampled unit
// directions, square-rooted. With sigma_eval > 0 both projected samples are
// perturbed by Gaussian noise whose stream is keyed to the input's content
// hash, which makes the estimate exactly symmetric in (a, b) for a fixed
// config. Evaluation noise is independent of any flow noise.
double sliced_w2(const Eigen::Ref<const Matrix>& a,
                 const Eigen::Ref<const Matrix>& b,
                 const MetricConfig& config);

}  // namespace swflow

#endif  // SWFLOW_METRICS_HPP_
