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
 * @file    witness.hpp
 * @brief   Entanglement witnesses, Schmidt-number detection on states, and the
 *          isotropic / Werner state families used to scan thresholds.
 */

#ifndef MAPCONES_WITNESS_HPP
#define MAPCONES_WITNESS_HPP

#include <cmath>
#include <cstdio>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mapcones/bipartite.hpp"
#include "mapcones/certify.hpp"
#include "mapcones/maps.hpp"
#include "mapcones/random.hpp"

namespace mapcones {

inline constexpr double kStateTol = 1e-9;

class Witness {
 public:
  Witness(MatrixOp op, int k_level, std::string provenance)
      : op_(std::move(op)), k_level_(k_level), provenance_(std::move(provenance)) {
    op_.require_dims();
    if (!op_.is_hermitian()) throw Error(ErrorCode::NotHermitian, "witness is not Hermitian");
    if (k_level_ < 1) throw Error(ErrorCode::BadK, "witness level must be >= 1");
  }

  const MatrixOp& op() const { return op_; }
  int k_level() const { return k_level_; }
  const std::string& provenance() const { return provenance_; }

 private:
  MatrixOp op_;
  int k_level_;
  std::string provenance_;
};

struct DetectionResult {
  double min_eigenvalue = 0.0;
  bool fired = false;
  std::string detector_id;
  int implied_lower_bound = 1;
};

/// Throws NotAState unless rho is Hermitian, PSD and unit trace (within kStateTol).
inline void require_state(const MatrixOp& rho) {
  if (!rho.is_hermitian()) throw Error(ErrorCode::NotAState, "density matrix is not Hermitian");
  const double tr = rho.matrix().trace().real();
  if (std::abs(tr - 1.0) > kStateTol)
    throw Error(ErrorCode::NotAState, "trace is " + std::to_string(tr));
  const double lmin = min_eigenvalue(rho.matrix());
  if (lmin < -kStateTol) throw Error(ErrorCode::NotAState, "eigenvalue " + std::to_string(lmin));
}

/// Tr(W rho)
inline double expectation(const Witness& w, const MatrixOp& rho) {
  if (w.op().dim() != rho.dim() || (rho.dims() && *rho.dims() != *w.op().dims()))
    throw Error(ErrorCode::DimMismatch, "witness and state sizes differ");
  require_state(rho);
  return (w.op().matrix().cwiseProduct(rho.matrix().transpose())).sum().real();
}

inline Witness witness_from_map(const MapRep& psi, int k_level,
                                std::string provenance = "choi-of-map") {
  return Witness(choi(psi), k_level, std::move(provenance));
}

/// Evaluates (1 (x) detector)(rho). Firing proves Schmidt number >= k + 1
/// when the detector is k-positive; silence proves nothing.
inline DetectionResult detect_schmidt_number(const MatrixOp& rho, const Detector& detector,
                                             double tol = 1e-9) {
  require_state(rho);
  const Dims dims = rho.require_dims();
  // Clip tiny negative eigenvalues so the detector sees a genuine state.
  const MatrixOp clipped(clip_spectrum(rho.matrix(), 0.0), dims);
  DetectionResult out;
  out.detector_id = detector.id;
  out.min_eigenvalue = detector_min_eigenvalue(clipped, detector.map);
  out.fired = out.min_eigenvalue < -tol;
  out.implied_lower_bound = out.fired ? detector.k_level + 1 : 1;
  return out;
}

/// F P+ + (1 - F)(1 - P+)/(d^2 - 1) with P+ the normalized maximally entangled projector.
inline MatrixOp isotropic_state(int d, double fidelity) {
  if (d < 2) throw Error(ErrorCode::BadParam, "isotropic state needs d >= 2");
  if (!(fidelity >= 0.0 && fidelity <= 1.0)) throw Error(ErrorCode::BadParam, "F must be in [0, 1]");
  const Matrix p = projector(max_entangled(d)).matrix() / static_cast<double>(d);
  const Matrix id = Matrix::Identity(d * d, d * d);
  return MatrixOp(fidelity * p + (1.0 - fidelity) * (id - p) / static_cast<double>(d * d - 1),
                  Dims{d, d});
}

/// (e_1 (x) e_2 - e_2 (x) e_1) / sqrt(2)
inline BipartiteVector singlet() {
  Vector v = Vector::Zero(4);
  v(1) = 1.0 / std::sqrt(2.0);
  v(2) = -1.0 / std::sqrt(2.0);
  return BipartiteVector(2, 2, std::move(v));
}

/// Two-qubit Werner state p |singlet><singlet| + (1 - p) 1/4.
inline MatrixOp werner_state(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::BadParam, "p must be in [0, 1]");
  return MatrixOp(p * projector(singlet()).matrix() + (1.0 - p) * Matrix::Identity(4, 4) / 4.0,
                  Dims{2, 2});
}

/// Convex mixture of `terms` random pure states of Schmidt rank exactly k.
inline MatrixOp random_k_separable_state(int d, int k, int terms, std::uint64_t seed) {
  if (k < 1 || k > d) throw Error(ErrorCode::BadRank, "Schmidt rank must be in [1, d]");
  Rng rng(seed);
  Matrix rho = Matrix::Zero(d * d, d * d);
  double total = 0.0;
  for (int t = 0; t < terms; ++t) {
    const Matrix u = random_isometry(rng, d, k);
    const Matrix v = random_isometry(rng, d, k);
    Matrix coeffs = Matrix::Zero(d, d);
    for (int l = 0; l < k; ++l) coeffs += (0.1 + uniform01(rng)) * u.col(l) * v.col(l).transpose();
    const Vector psi = BipartiteVector::from_coefficients(coeffs).amplitudes().normalized();
    const double w = 0.05 + uniform01(rng);
    rho += w * psi * psi.adjoint();
    total += w;
  }
  return MatrixOp(rho / total, Dims{d, d});
}

enum class FamilyKind { Isotropic, Werner, Reduction };

struct Family {
  FamilyKind kind = FamilyKind::Isotropic;
  int d = 2;
};

/// "isotropic:<d>", "reduction:<d>" or "werner".
inline Family parse_family(std::string_view spec) {
  if (spec == "werner") return {FamilyKind::Werner, 2};
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) throw Error(ErrorCode::BadFamily, std::string(spec));
  const std::string_view name = spec.substr(0, colon);
  const std::string digits(spec.substr(colon + 1));
  int d = 0;
  try {
    std::size_t used = 0;
    d = std::stoi(digits, &used);
    if (used != digits.size()) throw Error(ErrorCode::BadFamily, std::string(spec));
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::BadFamily, std::string(spec));
  }
  if (d < 2) throw Error(ErrorCode::BadFamily, "family dimension must be >= 2");
  if (name == "isotropic") return {FamilyKind::Isotropic, d};
  if (name == "reduction") return {FamilyKind::Reduction, d};
  throw Error(ErrorCode::BadFamily, std::string(spec));
}

struct ScanRow {
  double param = 0.0;
  double min_eig = 0.0;
  bool fired = false;
};

/// Evaluate one family member per grid point. Isotropic: detector
/// reduction(d, 1/k) on rho_F. Werner: partial transpose spectrum (k unused).
/// Reduction: see-saw best value at level k on 1 - c |Psi+><Psi+|.
inline std::vector<ScanRow> threshold_scan(const Family& family, int k,
                                           const std::vector<double>& grid, double tol = 1e-9,
                                           const SeesawOpts& opts = {}) {
  if (!std::is_sorted(grid.begin(), grid.end()))
    throw Error(ErrorCode::BadParam, "grid must be sorted");
  std::vector<ScanRow> rows;
  rows.reserve(grid.size());
  switch (family.kind) {
    case FamilyKind::Isotropic: {
      if (k < 1 || k >= family.d) throw Error(ErrorCode::BadK, "isotropic scan needs 1 <= k < d");
      const Detector det{reduction_family(family.d, 1.0 / k), k, "reduction"};
      for (double f : grid) {
        const auto r = detect_schmidt_number(isotropic_state(family.d, f), det, tol);
        rows.push_back({f, r.min_eigenvalue, r.fired});
      }
      break;
    }
    case FamilyKind::Werner:
      for (double p : grid) {
        const double m = min_eigenvalue(partial_transpose(werner_state(p)).matrix());
        rows.push_back({p, m, m < -tol});
      }
      break;
    case FamilyKind::Reduction: {
      if (k < 1 || k > family.d) throw Error(ErrorCode::BadK, "reduction scan needs 1 <= k <= d");
      for (double c : grid) {
        const auto cert = k_block_positive_certify(choi(reduction_family(family.d, c)), k, opts);
        rows.push_back({c, cert.value, cert.violated()});
      }
      break;
    }
  }
  return rows;
}

/// Index of the first row whose `fired` differs from the first row, or -1.
inline int first_flip(const std::vector<ScanRow>& rows) {
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].fired != rows.front().fired) return static_cast<int>(i);
  return -1;
}

inline std::string format_g17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string scan_to_csv(const std::vector<ScanRow>& rows) {
  std::string out = "param,min_eig,fired\n";
  for (const auto& r : rows)
    out += format_g17(r.param) + "," + format_g17(r.min_eig) + "," + (r.fired ? "1" : "0") + "\n";
  return out;
}

/// Bisection for the sign change of the Werner partial-transpose minimum.
inline double werner_ppt_boundary(double tol = 1e-13) {
  auto pt_min = [](double p) { return min_eigenvalue(partial_transpose(werner_state(p)).matrix()); };
  double lo = 0.0, hi = 1.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (pt_min(mid) < 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace mapcones

#endif  // MAPCONES_WITNESS_HPP
