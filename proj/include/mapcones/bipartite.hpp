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

/**
 * @file    bipartite.hpp
 * @brief   Dense complex matrices and vectors on C^dA (x) C^dB.
 *
 * Basis convention used by the whole library: e_i (x) e_j has index
 * i * dB + j (first factor slow). Matrix elements X_{ij,kl} therefore live at
 * row i * dB + j, column k * dB + l.
 */

#ifndef MAPCONES_BIPARTITE_HPP
#define MAPCONES_BIPARTITE_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "mapcones/error.hpp"

namespace mapcones {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Max-entry tolerance for Hermiticity checks.
inline constexpr double kHermitianTol = 1e-10;
/// Relative threshold for Schmidt rank and numerical matrix rank.
inline constexpr double kRankTol = 1e-8;

struct Dims {
  int a = 0;
  int b = 0;
  friend bool operator==(const Dims&, const Dims&) = default;
};

enum class Subsystem { A, B };

inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double hermiticity_defect(const Matrix& m) {
  return max_abs(m - m.adjoint());
}

/// Tolerance scaled by the magnitude of the matrix, never below `tol`.
inline double scaled_tol(const Matrix& m, double tol) {
  return tol * std::max(1.0, max_abs(m));
}

/// Square complex matrix with optional bipartite structure.
class MatrixOp {
 public:
  MatrixOp() = default;

  explicit MatrixOp(Matrix m, std::optional<Dims> dims = std::nullopt)
      : m_(std::move(m)), dims_(dims) {
    if (m_.rows() != m_.cols()) {
      throw Error(ErrorCode::DimMismatch,
                  "matrix is " + std::to_string(m_.rows()) + "x" + std::to_string(m_.cols()));
    }
    if (dims_ && (dims_->a <= 0 || dims_->b <= 0 || dims_->a * dims_->b != m_.rows())) {
      throw Error(ErrorCode::DimMismatch, "bipartite dims do not multiply to matrix size");
    }
  }

  static MatrixOp identity(int n, std::optional<Dims> dims = std::nullopt) {
    return MatrixOp(Matrix::Identity(n, n), dims);
  }

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  const std::optional<Dims>& dims() const { return dims_; }

  MatrixOp with_dims(Dims dims) const { return MatrixOp(m_, dims); }

  Dims require_dims() const {
    if (!dims_) throw Error(ErrorCode::MissingDims, "operator has no bipartite dims");
    return *dims_;
  }

  bool is_hermitian(double tol = kHermitianTol) const {
    return hermiticity_defect(m_) <= scaled_tol(m_, tol);
  }

 private:
  Matrix m_;
  std::optional<Dims> dims_;
};

/// Vector on C^dA (x) C^dB, amplitudes[i * dB + j] is the e_i (x) e_j component.
class BipartiteVector {
 public:
  BipartiteVector() = default;

  BipartiteVector(int da, int db, Vector amplitudes)
      : da_(da), db_(db), amps_(std::move(amplitudes)) {
    if (da_ <= 0 || db_ <= 0 || amps_.size() != static_cast<Eigen::Index>(da_) * db_) {
      throw Error(ErrorCode::DimMismatch, "amplitude count must equal dA * dB");
    }
  }

  int da() const { return da_; }
  int db() const { return db_; }
  const Vector& amplitudes() const { return amps_; }
  double norm() const { return amps_.norm(); }

  /// Coefficient matrix M with M(i, j) = amplitude on e_i (x) e_j.
  Matrix coefficients() const {
    Matrix m(da_, db_);
    for (int i = 0; i < da_; ++i)
      for (int j = 0; j < db_; ++j) m(i, j) = amps_(i * db_ + j);
    return m;
  }

  static BipartiteVector from_coefficients(const Matrix& m) {
    const int da = static_cast<int>(m.rows());
    const int db = static_cast<int>(m.cols());
    Vector v(static_cast<Eigen::Index>(da) * db);
    for (int i = 0; i < da; ++i)
      for (int j = 0; j < db; ++j) v(i * db + j) = m(i, j);
    return BipartiteVector(da, db, std::move(v));
  }

  BipartiteVector normalized() const { return BipartiteVector(da_, db_, amps_ / amps_.norm()); }

 private:
  int da_ = 0;
  int db_ = 0;
  Vector amps_;
};

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline BipartiteVector product_vector(const Vector& u, const Vector& v) {
  Vector out(u.size() * v.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) out.segment(i * v.size(), v.size()) = u(i) * v;
  return BipartiteVector(static_cast<int>(u.size()), static_cast<int>(v.size()), std::move(out));
}

/// Unnormalized sum_i e_i (x) e_i.
inline BipartiteVector max_entangled(int d) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(d) * d);
  for (int i = 0; i < d; ++i) v(i * d + i) = 1.0;
  return BipartiteVector(d, d, std::move(v));
}

/// |v><v| carrying the vector's bipartite dims.
inline MatrixOp projector(const BipartiteVector& v) {
  return MatrixOp(v.amplitudes() * v.amplitudes().adjoint(), Dims{v.da(), v.db()});
}

/// Flip operator e_i (x) e_j -> e_j (x) e_i on C^d (x) C^d.
inline MatrixOp swap_operator(int d) {
  Matrix m = Matrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(j * d + i, i * d + j) = 1.0;
  return MatrixOp(std::move(m), Dims{d, d});
}

/// Count of singular values above tol * sigma_max.
inline int numerical_rank(const Matrix& m, double tol = kRankTol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  return static_cast<int>((s.array() > tol * s(0)).count());
}

struct SchmidtDecomposition {
  std::vector<double> coefficients;  // descending
  std::vector<Vector> left_vectors;
  std::vector<Vector> right_vectors;
  int rank = 0;

  /// sum_l c_l u_l (x) v_l
  BipartiteVector reconstruct() const {
    const auto da = left_vectors.front().size();
    const auto db = right_vectors.front().size();
    Vector v = Vector::Zero(da * db);
    for (std::size_t l = 0; l < coefficients.size(); ++l)
      v += coefficients[l] * product_vector(left_vectors[l], right_vectors[l]).amplitudes();
    return BipartiteVector(static_cast<int>(da), static_cast<int>(db), std::move(v));
  }
};

/// Schmidt decomposition via the SVD of the coefficient matrix. All
/// min(dA, dB) terms are returned; `rank` counts those above tol * c_max.
inline SchmidtDecomposition schmidt_decompose(const BipartiteVector& v, double tol = kRankTol) {
  if (v.norm() < 1e-14) throw Error(ErrorCode::ZeroVector, "cannot decompose a zero vector");
  if (!(tol > 0)) throw Error(ErrorCode::BadParam, "tolerance must be positive");
  Eigen::JacobiSVD<Matrix> svd(v.coefficients(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  SchmidtDecomposition out;
  for (Eigen::Index l = 0; l < s.size(); ++l) {
    out.coefficients.push_back(s(l));
    out.left_vectors.push_back(svd.matrixU().col(l));
    // M = U S V^dagger, so the right factor of term l is conj(V_l).
    out.right_vectors.push_back(svd.matrixV().col(l).conjugate());
    if (s(l) > tol * s(0)) ++out.rank;
  }
  return out;
}

inline int schmidt_rank(const BipartiteVector& v, double tol = kRankTol) {
  return schmidt_decompose(v, tol).rank;
}

/// Transpose on one tensor factor. For subsystem B:
/// result_{ij,kl} = X_{il,kj}; for A: result_{ij,kl} = X_{kj,il}.
inline MatrixOp partial_transpose(const MatrixOp& x, Subsystem sub = Subsystem::B) {
  const Dims dims = x.require_dims();
  const int da = dims.a, db = dims.b;
  const Matrix& in = x.matrix();
  Matrix out(in.rows(), in.cols());
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j)
      for (int k = 0; k < da; ++k)
        for (int l = 0; l < db; ++l) {
          const int row = i * db + j, col = k * db + l;
          out(row, col) = sub == Subsystem::B ? in(i * db + l, k * db + j)
                                              : in(k * db + j, i * db + l);
        }
  return MatrixOp(std::move(out), dims);
}

namespace detail {
inline int require_square_of(const Matrix& m, int d) {
  if (d <= 0 || m.rows() != static_cast<Eigen::Index>(d) * d) {
    throw Error(ErrorCode::DimMismatch,
                "expected a " + std::to_string(d * d) + "x" + std::to_string(d * d) + " matrix");
  }
  return d;
}
}  // namespace detail

/// Superoperator -> Choi ordering: output_{ij,kl} = input_{jl,ik}.
inline MatrixOp reshuffle(const MatrixOp& m, int d) {
  detail::require_square_of(m.matrix(), d);
  const Matrix& in = m.matrix();
  Matrix out(in.rows(), in.cols());
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) out(i * d + j, k * d + l) = in(j * d + l, i * d + k);
  return MatrixOp(std::move(out), Dims{d, d});
}

/// Inverse of reshuffle: output_{jl,ik} = input_{ij,kl}.
inline MatrixOp unreshuffle(const MatrixOp& c, int d) {
  detail::require_square_of(c.matrix(), d);
  const Matrix& in = c.matrix();
  Matrix out(in.rows(), in.cols());
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) out(j * d + l, i * d + k) = in(i * d + j, k * d + l);
  return MatrixOp(std::move(out));
}

struct EigenSystem {
  Eigen::VectorXd values;  // ascending
  Matrix vectors;          // orthonormal columns
};

inline EigenSystem hermitian_eig(const Matrix& x, double tol = kHermitianTol) {
  if (x.rows() != x.cols()) throw Error(ErrorCode::DimMismatch, "matrix is not square");
  if (hermiticity_defect(x) > scaled_tol(x, tol)) {
    throw Error(ErrorCode::NotHermitian,
                "max |X - X^dagger| = " + std::to_string(hermiticity_defect(x)));
  }
  const Matrix h = 0.5 * (x + x.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  return {es.eigenvalues(), es.eigenvectors()};
}

inline EigenSystem hermitian_eig(const MatrixOp& x, double tol = kHermitianTol) {
  return hermitian_eig(x.matrix(), tol);
}

inline double min_eigenvalue(const Matrix& x, double tol = kHermitianTol) {
  return hermitian_eig(x, tol).values(0);
}

/// Tr(a b) for Hermitian a, b.
inline double hs_inner(const MatrixOp& a, const MatrixOp& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimMismatch, "hs_inner on different sizes");
  if (!a.is_hermitian() || !b.is_hermitian())
    throw Error(ErrorCode::NotHermitian, "hs_inner needs Hermitian arguments");
  // Tr(a^dagger b) = sum conj(a_ij) b_ij
  return (a.matrix().conjugate().cwiseProduct(b.matrix())).sum().real();
}

/// Nearest matrix (Frobenius) with every eigenvalue >= floor.
inline Matrix clip_spectrum(const Matrix& h, double floor = 0.0) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h + h.adjoint()));
  Eigen::VectorXd vals = es.eigenvalues().cwiseMax(floor);
  return es.eigenvectors() * vals.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace mapcones

#endif  // MAPCONES_BIPARTITE_HPP
