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

#include "swflow/ot1d.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace swflow {

QuantileTable::QuantileTable(const Eigen::Ref<const Vector>& samples) {
  if (samples.size() < 1)
    throw std::invalid_argument("QuantileTable: empty sample array");
  if (!samples.allFinite())
    throw std::invalid_argument("QuantileTable: non-finite sample value");
  sorted_ = samples;
  std::stable_sort(sorted_.data(), sorted_.data() + sorted_.size());
}

double QuantileTable::cdf(double z) const {
  const Index m = sorted_.size();
  if (z < sorted_(0)) return 0.0;
  if (z > sorted_(m - 1)) return 1.0;

  // Last index i with sorted_(i) <= z. At a tied value this lands on the
  // right edge of the vertical CDF segment.
  const double* begin = sorted_.data();
  const double* end = begin + m;
  const Index i = static_cast<Index>(std::upper_bound(begin, end, z) - begin) - 1;

  const double md = static_cast<double>(m);
  if (sorted_(i) == z || i == m - 1)
    return (static_cast<double>(i) + 0.5) / md;

  const double t = (z - sorted_(i)) / (sorted_(i + 1) - sorted_(i));
  return (static_cast<double>(i) + 0.5 + t) / md;
}

double QuantileTable::inverse_cdf(double u) const {
  if (!(u >= 0.0 && u <= 1.0))
    throw std::invalid_argument("inverse_cdf: u must lie in [0, 1]");
  const Index m = sorted_.size();
  const double md = static_cast<double>(m);
  const double pos = u * md - 0.5;  // position in order-statistic units
  if (pos <= 0.0) return sorted_(0);
  if (pos >= md - 1.0) return sorted_(m - 1);
  const double floor_pos = std::floor(pos);
  const Index j = static_cast<Index>(floor_pos);
  const double t = pos - floor_pos;
  return sorted_(j) + t * (sorted_(j + 1) - sorted_(j));
}

double potential_derivative(double z, const QuantileTable& source,
                            const QuantileTable& target) {
  return z - target.inverse_cdf(source.cdf(z));
}

}  // namespace swflow
