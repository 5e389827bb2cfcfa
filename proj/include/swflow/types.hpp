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

#ifndef SWFLOW_TYPES_HPP
#define SWFLOW_TYPES_HPP

#include <Eigen/Dense>

#include <cstdint>

namespace swflow {

template <typename T>
using MatrixX = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <typename T>
using VectorX = Eigen::Matrix<T, Eigen::Dynamic, 1>;

using Matrix = MatrixX<double>;
using Vector = VectorX<double>;
using Index = Eigen::Index;

/// Content fingerprint of a dense matrix (FNV-1a over dimensions and the
/// row-major byte stream). Used to key per-input noise streams and to stamp
/// dataset identity into run manifests.
std::uint64_t matrix_fingerprint(const Eigen::Ref<const Matrix>& m);

}  // namespace swflow

#endif  // SWFLOW_TYPES_HPP
