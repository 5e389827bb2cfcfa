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

#ifndef SWFLOW_ACCOUNTANT_HPP_
#define SWFLOW_ACCOUNTANT_HPP_

#include <vector>

#include "swflow/types.hpp"

namespace swflow {

// One Gaussian-mechanism release recorded by a flow run.
struct MechanismEvent {
  Index iteration = 0;       // flow iteration at which the release happened
  double sigma = 0.0;        // noise scale of the Gaussian mechanism
  double sensitivity = 0.0;  // l2 sensitivity of the released statistic
  double delta_local = 0.0;  // per-event delta before amplification
  double gamma = 1.0;        // diffusion amplification factor applied to delta
};

// Composition result. epsilon is the (epsilon, delta_rdp)-DP guarantee
// obtained through Renyi-DP composition; delta_amplified_sum tracks the
// diffusion-amplified per-event deltas, which accumulate separately from
// the delta spent in the RDP-to-DP conversion.
struct ComposedPrivacy {
  double epsilon = 0.0;
  double delta_rdp = 0.0;
  double delta_amplified_sum = 0.0;
};

// Noise running through the particle update shrinks each event's delta by
// gamma = min(1, sqrt(h / (2 * lambda))). With lambda == 0 there is no
// diffusion and no amplification (gamma == 1); *no_diffusion reports that
// case when non-null.
double amplification_gamma(double step_size, double lambda,
                           bool* no_diffusion = nullptr);

// Classical Gaussian-mechanism epsilon at a given delta:
// sqrt(2 * log(1.25 / delta)) * sensitivity / sigma.
// sigma == 0 returns +infinity.
double per_event_epsilon(double sigma, double sensitivity, double delta);

// Fixed Renyi orders scanned during composition.
const std::vector<double>& rdp_alpha_grid();

// Append-only log of mechanism releases. Recorded events must describe a
// real release: sigma > 0, sensitivity > 0, delta_local in (0, 1).
class PrivacyLedger {
 public:
  void add(const MechanismEvent& event);

  const std::vector<MechanismEvent>& events() const { return events_; }
  Index size() const { return static_cast<Index>(events_.size()); }

  // Renyi-DP guarantee of a Gaussian release at order alpha:
  // alpha * sensitivity^2 / (2 * sigma^2).
  static double event_rdp(const MechanismEvent& event, double alpha);

  // Composes all events into an (epsilon, target_delta) guarantee by
  // summing per-event RDP at each order in rdp_alpha_grid() and converting
  // with epsilon(alpha) = rdp(alpha) + log(1 / target_delta) / (alpha - 1),
  // then taking the minimum over the grid. An empty ledger composes to
  // epsilon == 0. An event with sigma == 0 and positive sensitivity makes
  // epsilon infinite.
  ComposedPrivacy compose(double target_delta) const;

 private:
  std::vector<MechanismEvent> events_;
};

}  // namespace swflow

#endif  // SWFLOW_ACCOUNTANT_HPP_
