// Copyright 2026 The fpdyn Authors
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

#ifndef FPDYN_RANDOM_H_
#define FPDYN_RANDOM_H_

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace fpdyn {

// SplitMix64 finaliser. Every stream used anywhere in the project is derived
// from one 64-bit seed as Rng(SplitSeed(seed, stream_id)), so runs replay
// exactly regardless of how work is scheduled.
inline uint64_t SplitMix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline uint64_t SplitSeed(uint64_t seed, uint64_t stream) {
  return SplitMix64(seed ^ SplitMix64(stream + 0x632BE59BD9B4E019ULL));
}

using Rng = std::mt19937_64;

inline double Uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Uniform point on the (n-1)-simplex (flat Dirichlet).
inline Eigen::VectorXd SampleSimplex(Rng& rng, int n) {
  std::exponential_distribution<double> exp(1.0);
  Eigen::VectorXd x(n);
  for (int k = 0; k < n; ++k) x[k] = exp(rng);
  return x / x.sum();
}

// Entries i.i.d. uniform on [lo, hi].
inline Eigen::MatrixXd SampleMatrix(Rng& rng, int rows, int cols,
                                    double lo = -1.0, double hi = 1.0) {
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = Uniform(rng, lo, hi);
  return m;
}

}  // namespace fpdyn

#endif  // FPDYN_RANDOM_H_
