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

#ifndef SWFLOW_OT1D_HPP
#define SWFLOW_OT1D_HPP

#include "swflow/types.hpp"

namespace swflow {

/// Empirical 1D distribution backed by its sorted sample array.
///
/// The CDF places mass at midpoint plotting positions p_i = (i - 0.5) / m on
/// the i-th order statistic and interpolates linearly between adjacent order
/// statistics; queries below the minimum return 0 and above the maximum
/// return 1. The inverse CDF is the generalized inverse under the same
/// convention, clamped to the extreme order statistics for u outside
/// [0.5/m, 1 - 0.5/m]. Both maps are monotone non-decreasing, and
/// inverse_cdf(cdf(z)) == z for z strictly between distinct order statistics.
class QuantileTable {
 public:
  /// Stable-sorts a copy of `samples`. Rejects empty or non-finite input.
  explicit QuantileTable(const Eigen::Ref<const Vector>& samples);

  double cdf(double z) const;
  double inverse_cdf(double u) const;

  Index size() const { return sorted_.size(); }
  double min() const { return sorted_(0); }
  double max() const { return sorted_(sorted_.size() - 1); }
  const Vector& sorted() const { return sorted_; }

 private:
  Vector sorted_;
};

inline QuantileTable build_quantile_table(const Eigen::Ref<const Vector>& samples) {
  return QuantileTable(samples);
}

/// Derivative of the Kantorovich potential for the pair (source, target):
/// psi'(z) = z - F_target^{-1}(F_source(z)). The displacement z - psi'(z)
/// is the 1D optimal transport map pushing source onto target.
double potential_derivative(double z, const QuantileTable& source,
                            const QuantileTable& target);

}  // namespace swflow

#endif  // SWFLOW_OT1D_HPP
