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

#ifndef SWFLOW_RNG_HPP
#define SWFLOW_RNG_HPP

#include <cstdint>
#include <vector>

#include "swflow/types.hpp"

namespace swflow {

/// SplitMix64 finalizer. mix64(seed + n * kGoldenGamma) is the n-th output of
/// the SplitMix64 generator, which gives every stream O(1) random access.
constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// A stateless, counter-indexed random stream. Every draw is a pure function
/// of (key, counter), so concurrent or out-of-order evaluation cannot change
/// results. Streams for distinct roles of one run are derived from the run
/// seed via substream().
class RngStream {
 public:
  explicit RngStream(std::uint64_t key) : key_(key) {}

  std::uint64_t key() const { return key_; }

  std::uint64_t word(std::uint64_t counter) const {
    return mix64(key_ + (counter + 1) * kGoldenGamma);
  }

  /// Uniform draw in the open interval (0, 1).
  double uniform(std::uint64_t counter) const;

  /// Standard normal draw (Box-Muller); consumes counters 2c and 2c+1.
  double normal(std::uint64_t counter) const;

  /// Uniform integer in [0, bound). bound must be positive.
  Index uniform_index(std::uint64_t counter, Index bound) const;

 private:
  std::uint64_t key_;
};

/// Key of the (seed, role, index) stream; usable as a fresh seed for a
/// component that derives its own substreams.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t role,
                          std::uint64_t index = 0);

/// Derives the stream for (seed, role, index). Distinct roles and indices give
/// statistically independent streams.
RngStream substream(std::uint64_t seed, std::uint64_t role,
                    std::uint64_t index = 0);

/// rows x cols matrix of i.i.d. standard normals; entry (i, j) uses normal
/// counter i * cols + j, so entry noise is keyed to its (row, column) slot.
Matrix normal_matrix(Index rows, Index cols, const RngStream& stream);

/// Draws m distinct indices from {0, .., n-1} (partial Fisher-Yates),
/// returned sorted ascending.
std::vector<Index> sample_without_replacement(Index m, Index n,
                                              const RngStream& stream);

}  // namespace swflow

#endif  // SWFLOW_RNG_HPP
