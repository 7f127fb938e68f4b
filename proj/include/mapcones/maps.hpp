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
 * @file    maps.hpp
 * @brief   Linear maps on d x d matrices in superoperator, Choi and Kraus form.
 *
 * A map Phi is stored as its d^2 x d^2 superoperator S with
 * Phi(e_kl) = sum_ij S_{ij,kl} e_ij, i.e. S acts on the row-major
 * vectorization of its argument. The Choi matrix is
 * C = sum_ij e_ij (x) Phi(e_ij), obtained from S by reshuffling.
 */

#ifndef MAPCONES_MAPS_HPP
#define MAPCONES_MAPS_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mapcones/bipartite.hpp"
#include "mapcones/random.hpp"

namespace mapcones {

class MapRep {
 public:
  MapRep() = default;

  MapRep(int d, Matrix super) : d_(d), super_(std::move(super)) {
    if (d_ <= 0 || super_.rows() != static_cast<Eigen::Index>(d_) * d_ ||
        super_.cols() != super_.rows()) {
      throw Error(ErrorCode::DimMismatch, "superoperator must be d^2 x d^2");
    }
  }

  int d() const { return d_; }
  const Matrix& super() const { return super_; }

  bool is_hermiticity_preserving(double tol = kHermitianTol) const {
    return reshuffle(MatrixOp(super_), d_).is_hermitian(tol);
  }

 private:
  int d_ = 0;
  Matrix super_;
};

struct KrausSet {
  std::vector<Matrix> operators;
  int rank_bound = 0;
};

inline int kraus_rank_bound(const std::vector<Matrix>& ops, double tol = kRankTol) {
  int bound = 0;
  for (const auto& a : ops) bound = std::max(bound, numerical_rank(a, tol));
  return bound;
}

inline KrausSet make_kraus_set(std::vector<Matrix> ops, double tol = kRankTol) {
  const int bound = kraus_rank_bound(ops, tol);
  return KrausSet{std::move(ops), bound};
}

namespace detail {
inline Vector vec_rows(const Matrix& x) {
  const auto n = x.rows();
  Vector v(n * x.cols());
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j) v(i * x.cols() + j) = x(i, j);
  return v;
}

inline Matrix unvec_rows(const Vector& v, int d) {
  Matrix x(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) x(i, j) = v(i * d + j);
  return x;
}

inline void require_same_d(const MapRep& a, const MapRep& b) {
  if (a.d() != b.d()) throw Error(ErrorCode::DimMismatch, "maps act on different dimensions");
}

inline int sqrt_dim(int n) {
  const int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
  if (d * d != n) throw Error(ErrorCode::DimMismatch, std::to_string(n) + " is not a square");
  return d;
}
}  // namespace detail

/// Phi(x). Call it qualified: std::apply is otherwise found through ADL on
/// std::complex and fails to instantiate.
inline Matrix apply(const MapRep& phi, const Matrix& x) {
  if (x.rows() != phi.d() || x.cols() != phi.d())
    throw Error(ErrorCode::DimMismatch, "argument is not d x d");
  return detail::unvec_rows(phi.super() * detail::vec_rows(x), phi.d());
}

inline MatrixOp apply(const MapRep& phi, const MatrixOp& x) {
  return MatrixOp(mapcones::apply(phi, x.matrix()));
}

inline MatrixOp choi(const MapRep& phi) {
  return reshuffle(MatrixOp(phi.super()), phi.d());
}

inline MapRep map_from_choi(const MatrixOp& c) {
  const int d = detail::sqrt_dim(c.dim());
  if (!c.is_hermitian()) throw Error(ErrorCode::NotHermitian, "Choi matrix is not Hermitian");
  return MapRep(d, unreshuffle(c, d).matrix());
}

/// phi o psi
inline MapRep compose(const MapRep& phi, const MapRep& psi) {
  detail::require_same_d(phi, psi);
  return MapRep(phi.d(), phi.super() * psi.super());
}

/// Adjoint with respect to the Hilbert-Schmidt product Tr(x^dagger y).
inline MapRep adjoint(const MapRep& phi) {
  return MapRep(phi.d(), phi.super().adjoint());
}

/// t o phi
inline MapRep co(const MapRep& phi) {
  const int d = phi.d();
  Matrix out(phi.super().rows(), phi.super().cols());
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out.row(i * d + j) = phi.super().row(j * d + i);
  return MapRep(d, std::move(out));
}

inline MapRep identity_map(int d) {
  return MapRep(d, Matrix::Identity(d * d, d * d));
}

inline MapRep transpose_map(int d) {
  Matrix s = Matrix::Zero(d * d, d * d);
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) s(l * d + k, k * d + l) = 1.0;
  return MapRep(d, std::move(s));
}

inline MapRep zero_map(int d) { return MapRep(d, Matrix::Zero(d * d, d * d)); }

/// Ad_a : x -> a^dagger x a
inline MapRep ad(const Matrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::DimMismatch, "Kraus operator is not square");
  const int d = static_cast<int>(a.rows());
  Matrix s(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) s(i * d + j, k * d + l) = std::conj(a(k, i)) * a(l, j);
  return MapRep(d, std::move(s));
}

inline MapRep ad(const MatrixOp& a) { return ad(a.matrix()); }

inline MapRep from_kraus(const std::vector<Matrix>& ops) {
  if (ops.empty()) throw Error(ErrorCode::EmptyList, "no Kraus operators");
  const auto d = ops.front().rows();
  Matrix s = Matrix::Zero(d * d, d * d);
  for (const auto& a : ops) {
    if (a.rows() != d || a.cols() != d)
      throw Error(ErrorCode::DimMismatch, "Kraus operators differ in size");
    s += ad(a).super();
  }
  return MapRep(static_cast<int>(d), std::move(s));
}

inline MapRep from_kraus(const KrausSet& set) { return from_kraus(set.operators); }

/// Canonical Kraus form from the Choi spectrum: a_l = sqrt(lambda_l) times the
/// conjugated devectorized eigenvector, for lambda_l > tol * lambda_max.
inline KrausSet kraus_decompose(const MapRep& phi, double tol = kRankTol) {
  const auto es = hermitian_eig(choi(phi));
  const int n = static_cast<int>(es.values.size());
  const double lmax = std::max(es.values(n - 1), 0.0);
  if (es.values(0) < -tol * std::max(1.0, lmax)) {
    throw Error(ErrorCode::NotCompletelyPositive,
                "Choi matrix has eigenvalue " + std::to_string(es.values(0)));
  }
  std::vector<Matrix> ops;
  for (int l = n - 1; l >= 0; --l) {
    if (!(es.values(l) > tol * lmax)) break;
    // Choi(Ad_a) = |alpha><alpha| with alpha_{ij} = conj(a_ij).
    ops.push_back(std::sqrt(es.values(l)) *
                  detail::unvec_rows(es.vectors.col(l), phi.d()).conjugate());
  }
  if (ops.empty()) ops.push_back(Matrix::Zero(phi.d(), phi.d()));
  return make_kraus_set(std::move(ops));
}

/// x -> Tr(x) 1 - c x
inline MapRep reduction_family(int d, double c) {
  if (d < 2) throw Error(ErrorCode::BadParam, "reduction family needs d >= 2");
  Matrix s = Matrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) s(i * d + i, k * d + k) += 1.0;
  s -= c * Matrix::Identity(d * d, d * d);
  return MapRep(d, std::move(s));
}

/// x -> (1 - p) x + p Tr(x) 1 / d
inline MapRep depolarizing(int d, double p) {
  Matrix s = (1.0 - p) * Matrix::Identity(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) s(i * d + i, k * d + k) += p / d;
  return MapRep(d, std::move(s));
}

/// `n_ops` Kraus operators, each a sum of `k` Gaussian dyads.
inline KrausSet random_rank_bounded_kraus(int d, int k, int n_ops, std::uint64_t seed) {
  if (k < 1 || k > d) throw Error(ErrorCode::BadRank, "Kraus rank bound must be in [1, d]");
  if (n_ops < 1) throw Error(ErrorCode::EmptyList, "need at least one Kraus operator");
  Rng rng(seed);
  std::vector<Matrix> ops;
  for (int i = 0; i < n_ops; ++i) ops.push_back(random_matrix_of_rank(rng, d, k) / std::sqrt(d));
  return make_kraus_set(std::move(ops));
}

inline MapRep random_cp_map(int d, int k, int n_ops, std::uint64_t seed) {
  return from_kraus(random_rank_bounded_kraus(d, k, n_ops, seed));
}

/// Hermiticity-preserving map with a random Hermitian Choi matrix.
inline MapRep random_hp_map(int d, std::uint64_t seed) {
  Rng rng(seed);
  return MapRep(d, unreshuffle(MatrixOp(random_hermitian(rng, d * d)), d).matrix());
}

/// Block matrix [Psi(|psi_i><psi_j|)]_{ij} on C^k (x) C^d.
inline MatrixOp block_action(const MapRep& psi, const std::vector<Vector>& psis) {
  const int d = psi.d();
  const int k = static_cast<int>(psis.size());
  if (k < 1 || k > d) throw Error(ErrorCode::DimMismatch, "need between 1 and d vectors");
  for (const auto& v : psis)
    if (v.size() != d) throw Error(ErrorCode::DimMismatch, "vector length differs from d");
  Matrix out(k * d, k * d);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      out.block(i * d, j * d, d, d) = mapcones::apply(psi, Matrix(psis[i] * psis[j].adjoint()));
  return MatrixOp(std::move(out), Dims{k, d});
}

enum class CompositionOrder {
  MapAfterAd,  ///< Psi o Ad_a
  AdAfterMap,  ///< Ad_a o Psi
};

namespace detail {
// Kraus operators of Psi o Ad_a, built from the block matrix of Psi on the
// right singular vectors of a.
inline std::vector<Matrix> kraus_of_map_after_ad(const Matrix& a, const MapRep& psi, int k,
                                                 double tol) {
  const int d = psi.d();
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  int r = 0;
  if (s(0) > 0.0)
    while (r < s.size() && s(r) > tol * s(0)) ++r;
  if (r > k) {
    throw Error(ErrorCode::RankTooHigh,
                "operator has numerical rank " + std::to_string(r) + " > " + std::to_string(k));
  }
  if (r == 0) return {Matrix::Zero(d, d)};

  // a = sum_i |u_i><psi_i| with psi_i = s_i v_i, so
  // a^dagger x a = sum_ij <u_i|x|u_j> |psi_i><psi_j|.
  std::vector<Vector> psis;
  for (int i = 0; i < r; ++i) psis.push_back(s(i) * svd.matrixV().col(i));
  const MatrixOp block = block_action(psi, psis);
  const auto es = hermitian_eig(block);
  const int n = static_cast<int>(es.values.size());
  const double lmax = std::max(es.values(n - 1), 0.0);
  if (es.values(0) < -tol * std::max(1.0, lmax)) {
    throw Error(ErrorCode::BlockNotPSD,
                "block matrix has eigenvalue " + std::to_string(es.values(0)) + "; map is not " +
                    std::to_string(r) + "-positive");
  }
  std::vector<Matrix> ops;
  for (int l = n - 1; l >= 0 && es.values(l) > tol * lmax; --l) {
    const Vector xi = std::sqrt(es.values(l)) * es.vectors.col(l);
    Matrix c = Matrix::Zero(d, d);
    for (int j = 0; j < r; ++j) c += svd.matrixU().col(j) * xi.segment(j * d, d).adjoint();
    ops.push_back(std::move(c));
  }
  if (ops.empty()) ops.push_back(Matrix::Zero(d, d));
  return ops;
}
}  // namespace detail

/// Kraus operators of rank <= k for the composition of a k-positive map with
/// Ad_a, rank(a) <= k. Throws BlockNotPSD when the block matrix of psi on the
/// singular vectors of a is not PSD, which refutes k-positivity of psi.
inline KrausSet compose_certified(const Matrix& a, const MapRep& psi, int k,
                                  double tol = kRankTol,
                                  CompositionOrder order = CompositionOrder::MapAfterAd) {
  if (a.rows() != psi.d() || a.cols() != psi.d())
    throw Error(ErrorCode::DimMismatch, "operator and map dimensions differ");
  if (order == CompositionOrder::MapAfterAd)
    return make_kraus_set(detail::kraus_of_map_after_ad(a, psi, k, tol), tol);
  // (Ad_a o Psi)^dagger = Psi^dagger o Ad_{a^dagger}; Ad_c^dagger = Ad_{c^dagger}.
  auto ops = detail::kraus_of_map_after_ad(a.adjoint(), adjoint(psi), k, tol);
  for (auto& c : ops) c = c.adjoint().eval();
  return make_kraus_set(std::move(ops), tol);
}

inline KrausSet compose_certified(const MatrixOp& a, const MapRep& psi, int k,
                                  double tol = kRankTol,
                                  CompositionOrder order = CompositionOrder::MapAfterAd) {
  return compose_certified(a.matrix(), psi, k, tol, order);
}

/// (1 (x) phi)(x) for x on C^m (x) C^d, computed block by block: the (i,k)
/// d x d block of x is sent through phi.
inline MatrixOp apply_id_tensor(const MapRep& phi, const MatrixOp& x) {
  const Dims dims = x.require_dims();
  if (dims.b != phi.d()) throw Error(ErrorCode::DimMismatch, "second factor differs from d");
  const int d = phi.d();
  Matrix out(x.dim(), x.dim());
  for (int i = 0; i < dims.a; ++i)
    for (int k = 0; k < dims.a; ++k)
      out.block(i * d, k * d, d, d) = mapcones::apply(phi, Matrix(x.matrix().block(i * d, k * d, d, d)));
  return MatrixOp(std::move(out), dims);
}

/// Max-entry distance between superoperators.
inline double map_distance(const MapRep& a, const MapRep& b) {
  detail::require_same_d(a, b);
  return max_abs(a.super() - b.super());
}

}  // namespace mapcones

#endif  // MAPCONES_MAPS_HPP
