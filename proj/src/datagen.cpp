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

#include "swflow/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "swflow/errors.hpp"
#include "swflow/rng.hpp"

namespace swflow {
namespace {

constexpr double kMinEigenvalue = 1e-12;
constexpr double kWeightTol = 1e-12;
constexpr double kZeroRowTol = 1e-12;
constexpr double kUnitRowTol = 1e-9;
constexpr std::uint64_t kRolePick = 0x7069636b;
constexpr std::uint64_t kRoleGauss = 0x676d6978;

}  // namespace

GaussianMixture::GaussianMixture(std::vector<Component> components)
    : components_(std::move(components)) {
  if (components_.empty())
    throw std::invalid_argument("GaussianMixture: needs at least one component");
  dim_ = components_[0].mean.size();
  if (dim_ < 1)
    throw std::invalid_argument("GaussianMixture: component mean is empty");

  double weight_sum = 0.0;
  for (std::size_t k = 0; k < components_.size(); ++k) {
    const Component& c = components_[k];
    const std::string tag = "GaussianMixture component " + std::to_string(k);
    if (c.mean.size() != dim_)
      throw std::invalid_argument(tag + ": mean dimension mismatch");
    if (!(c.weight > 0.0))
      throw std::invalid_argument(tag + ": weight must be positive");
    if (c.covariance.rows() != dim_ || c.covariance.cols() != dim_)
      throw std::invalid_argument(tag + ": covariance shape mismatch");
    if (!c.covariance.allFinite() || !c.mean.allFinite())
      throw std::invalid_argument(tag + ": non-finite entry");
    if ((c.covariance - c.covariance.transpose()).cwiseAbs().maxCoeff() > 1e-9)
      throw std::invalid_argument(tag + ": covariance not symmetric");

    Eigen::SelfAdjointEigenSolver<Matrix> eigen(c.covariance);
    if (eigen.info() != Eigen::Success ||
        eigen.eigenvalues().minCoeff() < kMinEigenvalue)
      throw std::invalid_argument(
          tag + ": covariance not positive definite (smallest eigenvalue < 1e-12)");

    Eigen::LLT<Matrix> llt(c.covariance);
    if (llt.info() != Eigen::Success)
      throw std::invalid_argument(tag + ": Cholesky factorization failed");
    Matrix lower = llt.matrixL();
    cholesky_.push_back(lower);

    double log_det_half = 0.0;
    for (Index i = 0; i < dim_; ++i) log_det_half += std::log(lower(i, i));
    log_norm_.push_back(-0.5 * static_cast<double>(dim_) *
                            std::log(2.0 * std::numbers::pi) -
                        log_det_half);

    weight_sum += c.weight;
    cum_weights_.push_back(weight_sum);
  }
  if (std::abs(weight_sum - 1.0) > kWeightTol)
    throw std::invalid_argument("GaussianMixture: weights must sum to 1");
  cum_weights_.back() = 1.0;
}

double GaussianMixture::density(const Eigen::Ref<const Vector>& x) const {
  if (x.size() != dim_)
    throw std::invalid_argument("GaussianMixture::density: dimension mismatch");
  double value = 0.0;
  for (std::size_t k = 0; k < components_.size(); ++k) {
    const Vector centered = x - components_[k].mean;
    const Vector solved =
        cholesky_[k].triangularView<Eigen::Lower>().solve(centered);
    value += components_[k].weight *
             std::exp(log_norm_[k] - 0.5 * solved.squaredNorm());
  }
  return value;
}

Matrix GaussianMixture::sample(Index n, std::uint64_t seed) const {
  if (n < 1)
    throw std::invalid_argument("GaussianMixture::sample: n must be >= 1");
  const RngStream pick = substream(seed, kRolePick, 0);
  const RngStream gauss = substream(seed, kRoleGauss, 0);
  Matrix out(n, dim_);
  Vector z(dim_);
  for (Index i = 0; i < n; ++i) {
    const double u = pick.uniform(static_cast<std::uint64_t>(i));
    const auto it =
        std::lower_bound(cum_weights_.begin(), cum_weights_.end(), u);
    const std::size_t k = static_cast<std::size_t>(
        std::min<std::ptrdiff_t>(it - cum_weights_.begin(),
                                 static_cast<std::ptrdiff_t>(size()) - 1));
    for (Index t = 0; t < dim_; ++t)
      z(t) = gauss.normal(static_cast<std::uint64_t>(i * dim_ + t));
    out.row(i) =
        (components_[k].mean + cholesky_[k] * z).transpose();
  }
  return out;
}

GaussianMixture five_gaussian_ring(double radius, double variance) {
  if (!(radius > 0.0))
    throw std::invalid_argument("five_gaussian_ring: radius must be positive");
  std::vector<GaussianMixture::Component> components;
  for (int k = 0; k < 5; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / 5.0;
    GaussianMixture::Component c;
    c.mean = Vector(2);
    c.mean << radius * std::cos(angle), radius * std::sin(angle);
    c.covariance = variance * Matrix::Identity(2, 2);
    c.weight = 0.2;
    components.push_back(std::move(c));
  }
  return GaussianMixture(std::move(components));
}

Dataset normalize_rows(const Eigen::Ref<const Matrix>& rows) {
  if (rows.rows() < 1 || rows.cols() < 1)
    throw std::invalid_argument("normalize_rows: empty matrix");
  if (!rows.allFinite())
    throw std::invalid_argument("normalize_rows: non-finite entry");
  Dataset out;
  out.rows = rows;
  for (Index i = 0; i < rows.rows(); ++i) {
    const double norm = out.rows.row(i).norm();
    if (norm < kZeroRowTol)
      throw std::invalid_argument("normalize_rows: row " + std::to_string(i) +
                                  " has near-zero norm");
    out.rows.row(i) /= norm;
  }
  out.normalized = true;
  return out;
}

Dataset load_dataset(const std::string& path, Index expect_dim) {
  std::ifstream file(path);
  if (!file)
    throw ParseError(path, 0, "cannot open file");

  std::vector<std::vector<double>> parsed;
  std::string line;
  Index width = -1;
  std::size_t line_number = 0;
  std::size_t blank_since = 0;  // run of blank lines; only legal at EOF
  while (std::getline(file, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) {
      if (blank_since == 0) blank_since = line_number;
      continue;
    }
    if (blank_since != 0)
      throw ParseError(path, blank_since, "blank line inside dataset");

    std::vector<double> row;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      std::string cell = line.substr(
          start, comma == std::string::npos ? std::string::npos : comma - start);
      const std::size_t first = cell.find_first_not_of(" \t");
      if (first == std::string::npos)
        throw ParseError(path, line_number, "empty value");
      const std::size_t last = cell.find_last_not_of(" \t");
      cell = cell.substr(first, last - first + 1);

      char* end = nullptr;
      const double value = std::strtod(cell.c_str(), &end);
      if (end != cell.c_str() + cell.size())
        throw ParseError(path, line_number, "unparsable value '" + cell + "'");
      if (!std::isfinite(value))
        throw ParseError(path, line_number, "non-finite value '" + cell + "'");
      row.push_back(value);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }

    if (width < 0) {
      width = static_cast<Index>(row.size());
      if (expect_dim > 0 && width != expect_dim)
        throw ParseError(path, line_number,
                         "expected " + std::to_string(expect_dim) +
                             " columns, found " + std::to_string(width));
    } else if (static_cast<Index>(row.size()) != width) {
      throw ParseError(path, line_number,
                       "row width " + std::to_string(row.size()) +
                           " differs from first row width " +
                           std::to_string(width));
    }
    parsed.push_back(std::move(row));
  }
  if (parsed.empty()) throw ParseError(path, line_number, "empty dataset");

  Dataset out;
  out.rows.resize(static_cast<Index>(parsed.size()), width);
  for (std::size_t i = 0; i < parsed.size(); ++i)
    for (Index j = 0; j < width; ++j)
      out.rows(static_cast<Index>(i), j) = parsed[i][static_cast<std::size_t>(j)];
  out.normalized = true;
  for (Index i = 0; i < out.rows.rows(); ++i)
    if (std::abs(out.rows.row(i).norm() - 1.0) > kUnitRowTol) {
      out.normalized = false;
      break;
    }
  return out;
}

void save_dataset(const std::string& path,
                  const Eigen::Ref<const Matrix>& rows) {
  if (rows.rows() < 1 || rows.cols() < 1)
    throw std::invalid_argument("save_dataset: empty matrix");
  std::ofstream file(path);
  if (!file)
    throw std::invalid_argument("save_dataset: cannot open '" + path + "'");
  char buffer[64];
  for (Index i = 0; i < rows.rows(); ++i) {
    for (Index j = 0; j < rows.cols(); ++j) {
      std::snprintf(buffer, sizeof(buffer), "%.17g", rows(i, j));
      if (j > 0) file << ',';
      file << buffer;
    }
    file << '\n';
  }
  if (!file)
    throw std::runtime_error("save_dataset: write failed for '" + path + "'");
}

double level_set_threshold(const GaussianMixture& mixture, double mass,
                           Index n_samples, std::uint64_t seed) {
  if (!(mass > 0.0 && mass < 1.0))
    throw std::invalid_argument("level_set_threshold: mass must lie in (0, 1)");
  if (n_samples < 1)
    throw std::invalid_argument("level_set_threshold: n_samples must be >= 1");
  const Matrix draws = mixture.sample(n_samples, seed);
  std::vector<double> densities(static_cast<std::size_t>(n_samples));
  for (Index i = 0; i < n_samples; ++i)
    densities[static_cast<std::size_t>(i)] =
        mixture.density(draws.row(i).transpose());
  std::sort(densities.begin(), densities.end());
  // Rank so that a fraction `mass` of draws sits at or above the threshold.
  const auto rank = static_cast<std::size_t>(std::min<double>(
      std::max(0.0, std::floor((1.0 - mass) * static_cast<double>(n_samples))),
      static_cast<double>(n_samples - 1)));
  return densities[rank];
}

double fraction_inside(const GaussianMixture& mixture,
                       const Eigen::Ref<const Matrix>& points,
                       double threshold) {
  if (points.rows() < 1)
    throw std::invalid_argument("fraction_inside: empty point set");
  Index inside = 0;
  for (Index i = 0; i < points.rows(); ++i)
    if (mixture.density(points.row(i).transpose()) >= threshold) ++inside;
  return static_cast<double>(inside) / static_cast<double>(points.rows());
}

std::vector<GridPoint> density_grid(const GaussianMixture& mixture, double lo,
                                    double hi, Index resolution) {
  if (mixture.dim() != 2)
    throw std::invalid_argument("density_grid: mixture must be 2D");
  if (!(hi > lo))
    throw std::invalid_argument("density_grid: hi must exceed lo");
  if (resolution < 2)
    throw std::invalid_argument("density_grid: resolution must be >= 2");
  std::vector<GridPoint> grid;
  grid.reserve(static_cast<std::size_t>(resolution * resolution));
  const double step = (hi - lo) / static_cast<double>(resolution - 1);
  Vector point(2);
  for (Index iy = 0; iy < resolution; ++iy) {
    for (Index ix = 0; ix < resolution; ++ix) {
      GridPoint g;
      g.x = lo + step * static_cast<double>(ix);
      g.y = lo + step * static_cast<double>(iy);
      point << g.x, g.y;
      g.density = mixture.density(point);
      grid.push_back(g);
    }
  }
  return grid;
}

}  // namespace swflow
