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

#include "swflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "swflow/errors.hpp"
#include "swflow/rng.hpp"

namespace swflow {
namespace {

constexpr double kUnitRowTol = 1e-9;

// Stream roles. One derived seed per (role, iteration) keeps every noise
// source independent and individually reproducible.
constexpr std::uint64_t kRoleInit = 0x696e6974;
constexpr std::uint64_t kRoleInitRadius = 0x69726164;
constexpr std::uint64_t kRoleDirections = 0x64697273;
constexpr std::uint64_t kRoleTargetNoise = 0x74676e7a;
constexpr std::uint64_t kRoleParticleNoise = 0x70746e7a;
constexpr std::uint64_t kRoleEmNoise = 0x656d6e7a;
constexpr std::uint64_t kRoleSubsample = 0x73756273;

void check_target(const Eigen::Ref<const Matrix>& target,
                  const FlowConfig& config) {
  if (target.rows() < 1)
    throw std::invalid_argument("run_flow: target must have at least one row");
  if (target.cols() != config.dim)
    throw std::invalid_argument(
        "run_flow: target dimension " + std::to_string(target.cols()) +
        " does not match config.dim " + std::to_string(config.dim));
  if (!target.allFinite())
    throw std::invalid_argument("run_flow: non-finite entry in target");
  if (config.sigma > 0.0 && config.require_normalized) {
    for (Index i = 0; i < target.rows(); ++i)
      if (std::abs(target.row(i).norm() - 1.0) > kUnitRowTol)
        throw PreconditionError(
            "run_flow: private target row " + std::to_string(i) +
            " is not unit-normalized; normalize the data or clear "
            "require_normalized for non-sensitive input");
  }
}

// Event template for the run; sensitivity evaluated only when needed so
// non-private runs never hit the n_theta/d regime restrictions.
MechanismEvent make_event(const FlowConfig& config, Index iteration) {
  MechanismEvent event;
  event.iteration = iteration;
  event.sigma = config.sigma;
  event.sensitivity =
      config.norm_factor *
      std::sqrt(sensitivity_bound(config.n_theta, config.delta, config.dim));
  event.delta_local = config.delta;
  event.gamma = amplification_gamma(config.h, config.lambda);
  return event;
}

std::vector<QuantileTable> build_tables(const Eigen::Ref<const Matrix>& proj) {
  std::vector<QuantileTable> tables;
  tables.reserve(static_cast<std::size_t>(proj.cols()));
  for (Index j = 0; j < proj.cols(); ++j) tables.emplace_back(proj.col(j));
  return tables;
}

}  // namespace

std::vector<Index> FlowConfig::snapshot_plan() const {
  std::vector<Index> plan =
      snapshots.empty() ? std::vector<Index>{0, 1, 10, 50, 100, k_steps}
                        : snapshots;
  plan.erase(std::remove_if(plan.begin(), plan.end(),
                            [this](Index k) { return k < 0 || k > k_steps; }),
             plan.end());
  std::sort(plan.begin(), plan.end());
  plan.erase(std::unique(plan.begin(), plan.end()), plan.end());
  return plan;
}

void FlowConfig::validate() const {
  if (dim < 1) throw std::invalid_argument("FlowConfig: dim must be >= 1");
  if (n_particles < 1)
    throw std::invalid_argument("FlowConfig: n_particles must be >= 1");
  if (n_theta < 1)
    throw std::invalid_argument("FlowConfig: n_theta must be >= 1");
  const Index m = effective_m_theta();
  if (m < 1 || m > n_theta)
    throw std::invalid_argument(
        "FlowConfig: m_theta must lie in [1, n_theta]");
  if (k_steps < 1)
    throw std::invalid_argument("FlowConfig: k_steps must be >= 1");
  if (!(h > 0.0)) throw std::invalid_argument("FlowConfig: h must be positive");
  if (!(lambda >= 0.0))
    throw std::invalid_argument("FlowConfig: lambda must be >= 0");
  if (!(sigma >= 0.0))
    throw std::invalid_argument("FlowConfig: sigma must be >= 0");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("FlowConfig: delta must lie in (0, 1)");
  if (!(norm_factor > 0.0))
    throw std::invalid_argument("FlowConfig: norm_factor must be positive");
  if (init == InitKind::kUniformBall && !(init_radius > 0.0))
    throw std::invalid_argument("FlowConfig: init_radius must be positive");
}

Matrix drift(const ParticleCloud& particles,
             const std::vector<QuantileTable>& target_tables,
             const ProjectionSet& directions,
             const Eigen::Ref<const Matrix>& projection_noise, bool clip) {
  const Index n = particles.positions.rows();
  const Index d = particles.positions.cols();
  const Index k = directions.count();
  if (n < 1) throw std::invalid_argument("drift: empty particle cloud");
  if (!particles.positions.allFinite())
    throw std::invalid_argument("drift: non-finite particle position");
  if (directions.dim() != d)
    throw std::invalid_argument("drift: direction dimension mismatch");
  if (static_cast<Index>(target_tables.size()) != k)
    throw std::invalid_argument(
        "drift: need one target table per direction, got " +
        std::to_string(target_tables.size()) + " for " + std::to_string(k));
  if (projection_noise.rows() != n || projection_noise.cols() != k)
    throw std::invalid_argument("drift: noise shape mismatch");

  const Matrix proj = project(particles.positions, directions) + projection_noise;

  Matrix coeff(n, k);
  for (Index j = 0; j < k; ++j) {
    const QuantileTable source(proj.col(j));
    for (Index i = 0; i < n; ++i) {
      const double p = proj(i, j);
      coeff(i, j) = target_tables[static_cast<std::size_t>(j)].inverse_cdf(
                        source.cdf(p)) -
                    p;
    }
  }

  // Fixed-order rank-1 accumulation: each output row is the same sum in the
  // same order no matter where the row sits, so row permutations of
  // (positions, noise) permute the result bit-exactly.
  Matrix velocity = Matrix::Zero(n, d);
  for (Index j = 0; j < k; ++j)
    velocity.noalias() += coeff.col(j) * directions.directions().col(j).transpose();
  velocity /= static_cast<double>(k);

  if (clip) {
    for (Index i = 0; i < n; ++i) {
      const double norm = velocity.row(i).norm();
      if (norm > 1.0) velocity.row(i) /= norm;
    }
  }
  return velocity;
}

Matrix drift(const ParticleCloud& particles,
             const std::vector<QuantileTable>& target_tables,
             const ProjectionSet& directions, const SmoothingParams& smoothing,
             bool clip) {
  const Index n = particles.positions.rows();
  const Index k = directions.count();
  Matrix noise = Matrix::Zero(n, k);
  // Same stream convention as perturb(): noise entry (i, j) belongs to
  // particle i and direction j.
  noise = perturb(noise, smoothing);
  return drift(particles, target_tables, directions, noise, clip);
}

ParticleCloud em_step(const ParticleCloud& particles,
                      const Eigen::Ref<const Matrix>& drift_matrix, double h,
                      double lambda, const Eigen::Ref<const Matrix>& gaussian) {
  if (!(h > 0.0)) throw std::invalid_argument("em_step: h must be positive");
  if (!(lambda >= 0.0))
    throw std::invalid_argument("em_step: lambda must be >= 0");
  if (drift_matrix.rows() != particles.positions.rows() ||
      drift_matrix.cols() != particles.positions.cols())
    throw std::invalid_argument("em_step: drift shape mismatch");
  if (gaussian.rows() != particles.positions.rows() ||
      gaussian.cols() != particles.positions.cols())
    throw std::invalid_argument("em_step: noise shape mismatch");
  if (!drift_matrix.allFinite())
    throw std::invalid_argument("em_step: non-finite drift entry");

  ParticleCloud out;
  out.positions = particles.positions + h * drift_matrix;
  if (lambda > 0.0)
    out.positions += std::sqrt(2.0 * lambda * h) * gaussian;
  out.iteration = particles.iteration + 1;
  return out;
}

ParticleCloud em_step(const ParticleCloud& particles,
                      const Eigen::Ref<const Matrix>& drift_matrix, double h,
                      double lambda, std::uint64_t seed) {
  const Index n = particles.positions.rows();
  const Index d = particles.positions.cols();
  const Matrix gaussian =
      lambda > 0.0 ? normal_matrix(n, d, substream(seed, kRoleEmNoise, 0))
                   : Matrix::Zero(n, d);
  return em_step(particles, drift_matrix, h, lambda, gaussian);
}

ParticleCloud init_particles(const FlowConfig& config) {
  config.validate();
  ParticleCloud cloud;
  cloud.iteration = 0;
  const RngStream stream = substream(config.seed, kRoleInit, 0);
  cloud.positions = normal_matrix(config.n_particles, config.dim, stream);
  if (config.init == InitKind::kUniformBall) {
    const RngStream radial = substream(config.seed, kRoleInitRadius, 0);
    const double inv_dim = 1.0 / static_cast<double>(config.dim);
    for (Index i = 0; i < config.n_particles; ++i) {
      double norm = cloud.positions.row(i).norm();
      if (norm < 1e-12) {
        cloud.positions.row(i).setZero();
        cloud.positions(i, 0) = 1.0;
        norm = 1.0;
      }
      const double u = radial.uniform(static_cast<std::uint64_t>(i));
      cloud.positions.row(i) *=
          config.init_radius * std::pow(u, inv_dim) / norm;
    }
  }
  return cloud;
}

FlowResult run_dpswflow_r(const Eigen::Ref<const Matrix>& target,
                          const FlowConfig& config) {
  config.validate();
  if (config.variant != FlowVariant::kResampling)
    throw std::invalid_argument(
        "run_dpswflow_r: config.variant must be the resampling variant");
  check_target(target, config);

  const bool clip = config.effective_clip();
  FlowResult result;
  ParticleCloud cloud = init_particles(config);

  const std::vector<Index> plan = config.snapshot_plan();
  auto keep = [&](const ParticleCloud& c) {
    if (std::binary_search(plan.begin(), plan.end(), c.iteration))
      result.trajectory.snapshots.push_back(c);
  };
  keep(cloud);

  for (Index k = 1; k <= config.k_steps; ++k) {
    const ProjectionSet dirs =
        sample_sphere(config.dim, config.n_theta,
                      derive_seed(config.seed, kRoleDirections,
                                  static_cast<std::uint64_t>(k)));
    const Matrix noisy_target =
        perturb(project(target, dirs),
                {config.sigma, derive_seed(config.seed, kRoleTargetNoise,
                                           static_cast<std::uint64_t>(k))});
    if (config.sigma > 0.0) result.ledger.add(make_event(config, k));

    const std::vector<QuantileTable> tables = build_tables(noisy_target);
    const Matrix velocity =
        drift(cloud, tables, dirs,
              SmoothingParams{config.sigma,
                              derive_seed(config.seed, kRoleParticleNoise,
                                          static_cast<std::uint64_t>(k))},
              clip);
    cloud = em_step(cloud, velocity, config.h, config.lambda,
                    derive_seed(config.seed, kRoleEmNoise,
                                static_cast<std::uint64_t>(k)));
    keep(cloud);
  }
  result.trajectory.last = cloud;
  return result;
}

FlowResult run_dpswflow(const Eigen::Ref<const Matrix>& target,
                        const FlowConfig& config) {
  config.validate();
  if (config.variant != FlowVariant::kPresampled)
    throw std::invalid_argument(
        "run_dpswflow: config.variant must be the presampled variant");
  check_target(target, config);

  const bool clip = config.effective_clip();
  const Index m_theta = config.effective_m_theta();
  FlowResult result;
  ParticleCloud cloud = init_particles(config);

  const std::vector<Index> plan = config.snapshot_plan();
  auto keep = [&](const ParticleCloud& c) {
    if (std::binary_search(plan.begin(), plan.end(), c.iteration))
      result.trajectory.snapshots.push_back(c);
  };
  keep(cloud);

  // The single target release: all n_theta directions, one noise draw.
  const ProjectionSet dirs = sample_sphere(
      config.dim, config.n_theta, derive_seed(config.seed, kRoleDirections, 0));
  const Matrix noisy_target =
      perturb(project(target, dirs),
              {config.sigma, derive_seed(config.seed, kRoleTargetNoise, 0)});
  if (config.sigma > 0.0) result.ledger.add(make_event(config, 0));
  const std::vector<QuantileTable> tables = build_tables(noisy_target);

  for (Index k = 1; k <= config.k_steps; ++k) {
    const std::vector<Index> chosen = sample_without_replacement(
        m_theta, config.n_theta,
        substream(config.seed, kRoleSubsample, static_cast<std::uint64_t>(k)));
    const ProjectionSet sub_dirs = dirs.select(chosen);
    std::vector<QuantileTable> sub_tables;
    sub_tables.reserve(chosen.size());
    for (Index j : chosen)
      sub_tables.push_back(tables[static_cast<std::size_t>(j)]);

    const Matrix velocity =
        drift(cloud, sub_tables, sub_dirs,
              SmoothingParams{config.sigma,
                              derive_seed(config.seed, kRoleParticleNoise,
                                          static_cast<std::uint64_t>(k))},
              clip);
    cloud = em_step(cloud, velocity, config.h, config.lambda,
                    derive_seed(config.seed, kRoleEmNoise,
                                static_cast<std::uint64_t>(k)));
    keep(cloud);
  }
  result.trajectory.last = cloud;
  return result;
}

FlowResult run_flow(const Eigen::Ref<const Matrix>& target,
                    const FlowConfig& config) {
  return config.variant == FlowVariant::kResampling
             ? run_dpswflow_r(target, config)
             : run_dpswflow(target, config);
}

PrivacyLedger projected_ledger(const FlowConfig& config) {
  config.validate();
  PrivacyLedger ledger;
  if (config.sigma == 0.0) return ledger;
  if (config.variant == FlowVariant::kResampling) {
    for (Index k = 1; k <= config.k_steps; ++k)
      ledger.add(make_event(config, k));
  } else {
    ledger.add(make_event(config, 0));
  }
  return ledger;
}

}  // namespace swflow
