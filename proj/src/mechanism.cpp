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

#include "swflow/mechanism.hpp"

#include <cmath>
#include <stdexcept>

#include "swflow/errors.hpp"
#include "swflow/rng.hpp"

namespace swflow {
namespace {

constexpr std::uint64_t kPerturbRole = 0x70657274;  // stream tag
constexpr double kStrictMargin = 1e-6;

}  // namespace

Matrix perturb(const Eigen::Ref<const Matrix>& projected,
               const SmoothingParams& params) {
  if (!(params.sigma >= 0.0))
    throw std::invalid_argument("perturb: sigma must be >= 0");
  if (!projected.allFinite())
    throw std::invalid_argument("perturb: non-finite entry in input");
  if (params.sigma == 0.0) return projected;
  const RngStream stream = substream(params.seed, kPerturbRole, 0);
  return projected +
         params.sigma * normal_matrix(projected.rows(), projected.cols(), stream);
}

// Wichura's algorithm AS 241 (PPND16).
double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("normal_quantile: p must lie in (0, 1)");

  const double q = p - 0.5;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                 6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
               1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
             1.3314166789178437745e+2) * r + 3.3871328727963666080e0) /
           (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                 3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
               5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
             4.2313330701600911252e+1) * r + 1.0);
  }

  double r = (q < 0.0) ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double value;
  if (r <= 5.0) {
    r -= 1.6;
    value = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
                3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
              4.63033784615654529590e0) * r + 1.42343711074968357734e0) /
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
              2.05319162663775882187e0) * r + 1.0);
  } else {
    r -= 5.0;
    value = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
              5.46378491116411436990e0) * r + 6.65790464350110377720e0) /
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                  1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
              5.99832206555887937690e-1) * r + 1.0);
  }
  return (q < 0.0) ? -value : value;
}

double sensitivity_bound(Index n_theta, double delta, Index d) {
  if (n_theta <= 30)
    throw UnsupportedRegimeError(
        "sensitivity_bound: requires n_theta > 30 (concentration regime), got " +
        std::to_string(n_theta));
  if (!(delta > 0.0 && delta < 0.5))
    throw std::invalid_argument(
        "sensitivity_bound: delta must lie in (0, 0.5)");
  if (d < 2) throw std::invalid_argument("sensitivity_bound: d must be >= 2");

  const double nt = static_cast<double>(n_theta);
  const double dd = static_cast<double>(d);
  const double z = normal_quantile(1.0 - delta);
  return nt / dd + (z / dd) * std::sqrt(2.0 * nt * (dd - 1.0) / (dd + 2.0));
}

double sigma_for_epsilon(double epsilon, double delta, Index n_theta, Index d,
                         double norm_factor, SensitivityReading reading) {
  if (!(epsilon > 0.0))
    throw std::invalid_argument("sigma_for_epsilon: epsilon must be positive");
  if (!(norm_factor > 0.0))
    throw std::invalid_argument("sigma_for_epsilon: norm_factor must be positive");
  const double w = sensitivity_bound(n_theta, delta, d);
  const double c = std::sqrt(2.0 * std::log(1.25 / delta)) + kStrictMargin;
  const double sensitivity =
      norm_factor * (reading == SensitivityReading::kSqrtW ? std::sqrt(w) : w);
  return c * sensitivity / epsilon;
}

}  // namespace swflow
