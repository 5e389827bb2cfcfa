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

#ifndef SWFLOW_FLOW_HPP_
#define SWFLOW_FLOW_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "swflow/accountant.hpp"
#include "swflow/geometry.hpp"
#include "swflow/mechanism.hpp"
#include "swflow/ot1d.hpp"
#include "swflow/types.hpp"

namespace swflow {

// Resampling draws fresh directions every iteration and pays one mechanism
// event per iteration; presampled draws one direction set up front, releases
// the noisy target projections once, and iterates free of further cost.
enum class FlowVariant { kResampling, kPresampled };

enum class InitKind { kStandardGaussian, kUniformBall };

struct FlowConfig {
  Index dim = 2;
  Index n_particles = 1000;
  Index n_theta = 200;   // projection directions per iteration (or in total
                         // for the presampled variant)
  Index m_theta = 0;     // presampled variant: directions used per iteration,
                         // drawn without replacement; 0 selects n_theta
  Index k_steps = 200;
  double h = 1.0;        // Euler-Maruyama step size
  double lambda = 0.0;   // diffusion weight; noise std per step is
                         // sqrt(2 * lambda * h)
  double sigma = 0.0;    // projection smoothing / mechanism noise std
  double delta = 1e-5;   // per-event delta recorded in the ledger
  double norm_factor = 2.0;  // sensitivity factor; 2 for unit-norm rows
  FlowVariant variant = FlowVariant::kResampling;
  InitKind init = InitKind::kStandardGaussian;
  double init_radius = 1.0;  // ball radius when init == kUniformBall
  std::uint64_t seed = 0;
  // Unset defaults to clipping exactly when sigma > 0, the regime whose
  // sensitivity analysis assumes bounded drift.
  std::optional<bool> clip_drift;
  // Private runs must present unit-norm target rows; disable only for
  // non-sensitive toy data.
  bool require_normalized = true;
  // Iterations at which to keep a particle copy; empty selects
  // {0, 1, 10, 50, 100, k_steps}.
  std::vector<Index> snapshots;

  bool effective_clip() const { return clip_drift.value_or(sigma > 0.0); }
  Index effective_m_theta() const { return m_theta == 0 ? n_theta : m_theta; }

  // The snapshot iterations actually recorded: configured (or default) list
  // restricted to [0, k_steps], sorted, deduplicated.
  std::vector<Index> snapshot_plan() const;

  // Throws std::invalid_argument on any broken field invariant.
  void validate() const;
};

struct ParticleCloud {
  Matrix positions;     // n x d
  Index iteration = 0;  // flow step this cloud belongs to
};

struct FlowTrajectory {
  std::vector<ParticleCloud> snapshots;  // strictly increasing iterations
  ParticleCloud last;                    // iteration == k_steps
};

struct FlowResult {
  FlowTrajectory trajectory;
  PrivacyLedger ledger;
};

// Transport drift toward the target: projects particles on each direction,
// adds the given per-(particle, direction) noise, builds the per-direction
// source quantile tables from those noisy projections, and averages the 1D
// displacement inverse_cdf(target_j, cdf(source_j, p)) - p against the
// directions. clip rescales any drift row of norm > 1 to norm 1. Permuting
// particle rows together with noise rows permutes the output bit-exactly.
Matrix drift(const ParticleCloud& particles,
             const std::vector<QuantileTable>& target_tables,
             const ProjectionSet& directions,
             const Eigen::Ref<const Matrix>& projection_noise, bool clip);

// Same, drawing the projection noise from smoothing (std sigma, stream from
// the smoothing seed, entry (i, j) keyed to particle i and direction j).
Matrix drift(const ParticleCloud& particles,
             const std::vector<QuantileTable>& target_tables,
             const ProjectionSet& directions, const SmoothingParams& smoothing,
             bool clip);

// One Euler-Maruyama step: positions + h * drift + sqrt(2 * lambda * h) * G
// with the given standard Gaussian matrix G; increments the iteration.
ParticleCloud em_step(const ParticleCloud& particles,
                      const Eigen::Ref<const Matrix>& drift_matrix, double h,
                      double lambda, const Eigen::Ref<const Matrix>& gaussian);

// Same, drawing G from the seed. With lambda == 0 no noise is drawn and the
// update is exactly positions + h * drift.
ParticleCloud em_step(const ParticleCloud& particles,
                      const Eigen::Ref<const Matrix>& drift_matrix, double h,
                      double lambda, std::uint64_t seed);

// Initial cloud at iteration 0 drawn per config.init.
ParticleCloud init_particles(const FlowConfig& config);

// Resampling variant: per iteration, fresh directions, one noisy release of
// the target projections (one ledger event when sigma > 0), drift, EM step.
FlowResult run_dpswflow_r(const Eigen::Ref<const Matrix>& target,
                          const FlowConfig& config);

// Presampled variant: one direction set and one noisy target release up
// front (at most one ledger event), then per iteration a without-replacement
// subsample of m_theta directions with fresh particle noise only.
FlowResult run_dpswflow(const Eigen::Ref<const Matrix>& target,
                        const FlowConfig& config);

// Dispatches on config.variant.
FlowResult run_flow(const Eigen::Ref<const Matrix>& target,
                    const FlowConfig& config);

// The ledger a run with this config would produce, without running it:
// one event per iteration for the resampling variant, a single up-front
// event for the presampled variant, none when sigma == 0.
PrivacyLedger projected_ledger(const FlowConfig& config);

}  // namespace swflow

#endif  // SWFLOW_FLOW_HPP_
