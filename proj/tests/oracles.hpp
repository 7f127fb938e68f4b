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

// Test-only reference computations. Nothing here calls the reshuffle,
// superoperator or see-saw code paths it is used to check.

#ifndef MAPCONES_TESTS_ORACLES_HPP
#define MAPCONES_TESTS_ORACLES_HPP

#include <functional>
#include <limits>

#include "mapcones/bipartite.hpp"
#include "mapcones/random.hpp"

namespace oracle {

using mapcones::cplx;
using mapcones::Matrix;
using mapcones::Vector;
using LinearMap = std::function<Matrix(const Matrix&)>;

inline Matrix unit(int d, int i, int j) {
  Matrix e = Matrix::Zero(d, d);
  e(i, j) = 1.0;
  return e;
}

/// sum_ij e_ij (x) f(e_ij), straight from the definition.
inline Matrix choi_by_definition(const LinearMap& f, int d) {
  Matrix c = Matrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) c += mapcones::kron(unit(d, i, j), f(unit(d, i, j)));
  return c;
}

/// Entry (i*d + j, k*d + l) of the superoperator is f(e_kl)(i, j).
inline Matrix super_by_definition(const LinearMap& f, int d) {
  Matrix s(d * d, d * d);
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) {
      const Matrix y = f(unit(d, k, l));
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) s(i * d + j, k * d + l) = y(i, j);
    }
  return s;
}

/// Partial transpose on B via X = sum X_{ij,kl} e_ik (x) e_jl -> sum X_{ij,kl} e_ik (x) e_lj.
inline Matrix partial_transpose_by_units(const Matrix& x, int da, int db) {
  Matrix out = Matrix::Zero(x.rows(), x.cols());
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j)
      for (int k = 0; k < da; ++k)
        for (int l = 0; l < db; ++l)
          out += x(i * db + j, k * db + l) * mapcones::kron(unit(da, i, k), unit(db, l, j));
  return out;
}

/// Smallest <psi|C|psi> seen over `samples` random unit vectors of Schmidt rank <= k.
inline double sampled_min(const Matrix& c, int d, int k, int samples, std::uint64_t seed) {
  mapcones::Rng rng(seed);
  double best = std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    Vector psi = Vector::Zero(d * d);
    for (int l = 0; l < k; ++l) {
      const Vector u = mapcones::gaussian_vector(rng, d);
      const Vector v = mapcones::gaussian_vector(rng, d);
      for (int i = 0; i < d; ++i) psi.segment(i * d, d) += u(i) * v;
    }
    psi.normalize();
    best = std::min(best, (psi.adjoint() * c * psi)(0, 0).real());
  }
  return best;
}

}  // namespace oracle

#endif  // MAPCONES_TESTS_ORACLES_HPP
