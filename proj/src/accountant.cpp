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

#include "swflow/accountant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace swflow {

double amplification_gamma(double step_size, double lambda, bool* no_diffusion) {
  if (!(step_size > 0.0))
    throw std::invalid_argument("amplification_gamma: step_size must be positive");
  if (lambda < 0.0)
    throw std::invalid_argument("amplification_gamma: lambda must be >= 0");
  if (no_diffusion != nullptr) *no_diffusion = (lambda == 0.0);
  if (lambda == 0.0) return 1.0;
  return std::min(1.0, std::sqrt(step_size / (2.0 * lambda)));
}

const std::vector<double>& rdp_alpha_grid() {
  static const std::vector<double> grid = {
      1.25, 1.5,  1.75, 2.0,  2.5,  3.0,   4.0,   5.0,   6.0,   8.0,   10.0,
      12.0, 16.0, 20.0, 24.0, 32.0, 48.0,  64.0,  96.0,  128.0, 256.0, 512.0};
  return grid;
}

double per_event_epsilon(double sigma, double sensitivity, double delta) {
  if (sigma < 0.0)
    throw std::invalid_argument("per_event_epsilon: sigma must be >= 0");
  if (!(sensitivity > 0.0))
    throw std::invalid_argument("per_event_epsilon: sensitivity must be positive");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("per_event_epsilon: delta must lie in (0, 1)");
  if (sigma == 0.0) return std::numeric_limits<double>::infinity();
  return std::sqrt(2.0 * std::log(1.25 / delta)) * sensitivity / sigma;
}

void PrivacyLedger::add(const MechanismEvent& event) {
  if (!(event.sigma > 0.0))
    throw std::invalid_argument("PrivacyLedger: event sigma must be positive");
  if (!(event.sensitivity > 0.0))
    throw std::invalid_argument(
        "PrivacyLedger: event sensitivity must be positive");
  if (!(event.delta_local > 0.0 && event.delta_local < 1.0))
    throw std::invalid_argument("PrivacyLedger: event delta must lie in (0, 1)");
  if (!(event.gamma > 0.0 && event.gamma <= 1.0))
    throw std::invalid_argument("PrivacyLedger: event gamma must lie in (0, 1]");
  events_.push_back(event);
}

double PrivacyLedger::event_rdp(const MechanismEvent& event, double alpha) {
  if (!(alpha > 1.0))
    throw std::invalid_argument("event_rdp: alpha must exceed 1");
  if (event.sensitivity == 0.0) return 0.0;
  if (event.sigma == 0.0) return std::numeric_limits<double>::infinity();
  const double ratio = event.sensitivity / event.sigma;
  return alpha * ratio * ratio / 2.0;
}

ComposedPrivacy PrivacyLedger::compose(double target_delta) const {
  if (!(target_delta > 0.0 && target_delta < 1.0))
    throw std::invalid_argument("compose: target_delta must lie in (0, 1)");

  ComposedPrivacy out;
  out.delta_rdp = target_delta;
  for (const MechanismEvent& event : events_)
    out.delta_amplified_sum += event.gamma * event.delta_local;
  if (events_.empty()) return out;

  double best = std::numeric_limits<double>::infinity();
  for (double alpha : rdp_alpha_grid()) {
    double rdp = 0.0;
    for (const MechanismEvent& event : events_) rdp += event_rdp(event, alpha);
    const double eps = rdp + std::log(1.0 / target_delta) / (alpha - 1.0);
    best = std::min(best, eps);
  }
  out.epsilon = best;
  return out;
}

}  // namespace swflow
