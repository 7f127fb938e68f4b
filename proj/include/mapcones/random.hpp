// Copyright 2026 The mapcones Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MAPCONES_RANDOM_HPP
#define MAPCONES_RANDOM_HPP

#include <cstdint>
#include <random>

#include "mapcones/bipartite.hpp"

namespace mapcones {

// All randomness in the library flows through an explicitly seeded engine.
using Rng = std::mt19937_64;

inline Vector gaussian_vector(Rng& rng, int n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(n);
  for (int i = 0; i < n; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = cplx(re, im);
  }
  return v;
}

inline Matrix gaussian_matrix(Rng& rng, int rows, int cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = cplx(re, im);
    }
  return m;
}

inline Vector random_unit_vector(Rng& rng, int n) {
  Vector v = gaussian_vector(rng, n);
  return v / v.norm();
}

/// (G + G^dagger) / 2 with G complex Gaussian.
inline Matrix random_hermitian(Rng& rng, int n) {
  const Matrix g = gaussian_matrix(rng, n, n);
  return 0.5 * (g + g.adjoint());
}

/// Sum of `rank` Gaussian dyads; rank is exact with probability one.
inline Matrix random_matrix_of_rank(Rng& rng, int d, int rank) {
  Matrix m = Matrix::Zero(d, d);
  for (int r = 0; r < rank; ++r) m += gaussian_vector(rng, d) * gaussian_vector(rng, d).adjoint();
  return m;
}

/// Orthonormal columns spanning a Gaussian random subspace.
inline Matrix random_isometry(Rng& rng, int n, int k) {
  Eigen::HouseholderQR<Matrix> qr(gaussian_matrix(rng, n, k));
  return qr.householderQ() * Matrix::Identity(n, k);
}

inline double uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

}  // namespace mapcones

#endif  // MAPCONES_RANDOM_HPP
