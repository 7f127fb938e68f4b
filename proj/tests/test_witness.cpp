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

#include "mapcones/witness.hpp"

#include <cmath>

#include "gtest/gtest.h"

#include "oracles.hpp"

using namespace mapcones;

namespace {

template <typename F>
void expect_error(ErrorCode code, F&& f) {
  try {
    f();
    ADD_FAILURE() << "expected " << to_string(code);
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), code) << err.what();
  }
}

std::vector<double> grid(double lo, double hi, int steps) {
  std::vector<double> g;
  for (int i = 0; i < steps; ++i) g.push_back(lo + (hi - lo) * i / (steps - 1));
  return g;
}

}  // namespace

TEST(expectation, examples) {
  const Witness id(MatrixOp::identity(9, Dims{3, 3}), 1, "identity");
  EXPECT_NEAR(expectation(id, isotropic_state(3, 0.7)), 1.0, 1e-14);

  // Oracle: Tr(W rho) as a plain matrix trace; closed form 1 - d F / k.
  for (int d = 2; d <= 3; ++d)
    for (int k = 1; k < d; ++k)
      for (double f : {0.1, 0.5, 0.9}) {
        const Matrix w = Matrix::Identity(d * d, d * d) - projector(max_entangled(d)).matrix() / k;
        const MatrixOp rho = isotropic_state(d, f);
        const double direct = (w * rho.matrix()).trace().real();
        const double got = expectation(Witness(MatrixOp(w, Dims{d, d}), k, "w"), rho);
        ASSERT_NEAR(got, direct, 1e-13);
        ASSERT_NEAR(got, 1.0 - d * f / k, 1e-13);
      }

  const Witness red = witness_from_map(reduction_family(2, 1.0), 1, "reduction");
  // The witness 1 - |Psi+><Psi+| sees Psi+; the singlet is orthogonal to it.
  const MatrixOp bell(Matrix(projector(max_entangled(2)).matrix() / 2.0), Dims{2, 2});
  EXPECT_NEAR(expectation(red, bell), -1.0, 1e-15);
  EXPECT_NEAR(expectation(red, projector(singlet())), 1.0, 1e-15);
  expect_error(ErrorCode::NotAState, [&] { expectation(id, MatrixOp(Matrix(2.0 * Matrix::Identity(9, 9)), Dims{3, 3})); });
  expect_error(ErrorCode::NotAState, [&] { expectation(red, swap_operator(2)); });
}

TEST(witness, construction) {
  Matrix bad = Matrix::Zero(4, 4);
  bad(0, 1) = 1.0;
  expect_error(ErrorCode::NotHermitian, [&] { Witness(MatrixOp(bad, Dims{2, 2}), 1, "bad"); });
  expect_error(ErrorCode::BadK, [] { Witness(MatrixOp::identity(4, Dims{2, 2}), 0, "bad"); });

  const Witness w = witness_from_map(reduction_family(2, 1.0), 1);
  EXPECT_LE(max_abs(w.op().matrix() - (Matrix::Identity(4, 4) - projector(max_entangled(2)).matrix())), 1e-15);
  EXPECT_EQ(w.k_level(), 1);
  const Witness p = witness_from_map(identity_map(3), 3);
  EXPECT_LE(max_abs(p.op().matrix() - projector(max_entangled(3)).matrix()), 1e-15);

  // Level-2 witness from reduction(3, 1/2) is 2-block positive but not PSD.
  const Witness w2 = witness_from_map(reduction_family(3, 0.5), 2);
  EXPECT_GE(k_block_positive_certify(w2.op(), 2).value, -1e-9);
  EXPECT_LT(min_eigenvalue(w2.op().matrix()), 0.0);
}

TEST(detect, examples) {
  const Detector det{reduction_family(3, 0.5), 2, "reduction:k=2"};
  const DetectionResult r = detect_schmidt_number(isotropic_state(3, 0.9), det);
  EXPECT_TRUE(r.fired);
  EXPECT_EQ(r.implied_lower_bound, 3);
  // Oracle: (1 (x) Psi)(rho_F) has min eigenvalue (1 - F d / k) / d for the
  // isotropic family with Psi = reduction(d, 1/k); here d = 3, k = 2.
  EXPECT_NEAR(r.min_eigenvalue, (1.0 - 0.9 * 3 / 2) / 3.0, 1e-12);

  const MatrixOp mixed(Matrix(Matrix::Identity(9, 9) / 9.0), Dims{3, 3});
  for (const auto& d : default_detector_bank(3)) EXPECT_FALSE(detect_schmidt_number(mixed, d).fired);

  const MatrixOp prod = projector(product_vector(Vector::Unit(2, 0), Vector::Unit(2, 0)));
  EXPECT_FALSE(detect_schmidt_number(prod, Detector{reduction_family(2, 1.0), 1, "r"}).fired);
}

TEST(isotropic_state, examples) {
  EXPECT_LE(max_abs(isotropic_state(3, 1.0 / 9.0).matrix() - Matrix::Identity(9, 9) / 9.0), 1e-15);
  EXPECT_LE(max_abs(isotropic_state(3, 1.0).matrix() - projector(max_entangled(3)).matrix() / 3.0), 1e-15);
  const Matrix pplus = projector(max_entangled(3)).matrix() / 3.0;
  EXPECT_NEAR((pplus * isotropic_state(3, 0.5).matrix()).trace().real(), 0.5, 1e-15);
  EXPECT_NEAR(isotropic_state(4, 0.3).matrix().trace().real(), 1.0, 1e-14);
  expect_error(ErrorCode::BadParam, [] { isotropic_state(3, 1.5); });
}

TEST(werner_state, examples) {
  EXPECT_LE(max_abs(werner_state(0.0).matrix() - Matrix::Identity(4, 4) / 4.0), 1e-15);
  EXPECT_LE(max_abs(werner_state(1.0).matrix() - projector(singlet()).matrix()), 1e-15);
  // Oracle: PT spectrum min (1 - 3p) / 4.
  for (double p : {0.0, 0.2, 1.0 / 3.0, 0.5, 1.0})
    EXPECT_NEAR(min_eigenvalue(partial_transpose(werner_state(p)).matrix()), (1.0 - 3.0 * p) / 4.0, 1e-14);
  EXPECT_NEAR(werner_ppt_boundary(), 1.0 / 3.0, 1e-9);
}

TEST(threshold_scan, isotropic_flips) {
  for (int d = 2; d <= 3; ++d)
    for (int k = 1; k < d; ++k) {
      const auto rows = threshold_scan({FamilyKind::Isotropic, d}, k, grid(0.0, 1.0, 101));
      const int i = first_flip(rows);
      ASSERT_GT(i, 0);
      EXPECT_FALSE(rows[static_cast<std::size_t>(i - 1)].fired);
      EXPECT_LE(rows[static_cast<std::size_t>(i - 1)].param, static_cast<double>(k) / d + 1e-12);
      EXPECT_GE(rows[static_cast<std::size_t>(i)].param, static_cast<double>(k) / d - 1e-12);
      EXPECT_LE(rows[static_cast<std::size_t>(i)].param - static_cast<double>(k) / d, 0.01 + 1e-12);
      for (std::size_t j = static_cast<std::size_t>(i); j < rows.size(); ++j) EXPECT_TRUE(rows[j].fired);
    }
}

TEST(threshold_scan, reduction_and_werner) {
  const auto red = threshold_scan(parse_family("reduction:3"), 2, grid(0.3, 0.7, 41));
  const int i = first_flip(red);
  ASSERT_GT(i, 0);
  EXPECT_LT(red[static_cast<std::size_t>(i - 1)].param, 0.5 + 1e-12);
  EXPECT_GT(red[static_cast<std::size_t>(i)].param, 0.5 - 1e-12);

  const auto iso = threshold_scan(parse_family("isotropic:3"), 1, grid(0.2, 0.5, 31));
  const int j = first_flip(iso);
  ASSERT_GT(j, 0);
  EXPECT_LE(iso[static_cast<std::size_t>(j - 1)].param, 1.0 / 3.0 + 1e-12);
  EXPECT_GE(iso[static_cast<std::size_t>(j)].param, 1.0 / 3.0 - 1e-12);

  const auto w = threshold_scan(parse_family("werner"), 1, grid(0.0, 1.0, 11));
  for (const auto& r : w) EXPECT_NEAR(r.min_eig, (1.0 - 3.0 * r.param) / 4.0, 1e-14);
  EXPECT_EQ(first_flip(w), 4);

  expect_error(ErrorCode::BadParam, [] { threshold_scan(parse_family("werner"), 1, {0.5, 0.1}); });
  expect_error(ErrorCode::BadK, [] { threshold_scan(parse_family("isotropic:3"), 3, {0.5}); });
}

TEST(threshold_scan, csv_format) {
  const std::vector<ScanRow> rows = {{0.1, -0.25, true}, {1.0 / 3.0, 0.5, false}};
  EXPECT_EQ(scan_to_csv(rows), "param,min_eig,fired\n0.10000000000000001,-0.25,1\n0.33333333333333331,0.5,0\n");
}

TEST(parse_family, examples_and_errors) {
  EXPECT_EQ(parse_family("werner").kind, FamilyKind::Werner);
  const Family iso = parse_family("isotropic:4");
  EXPECT_EQ(iso.kind, FamilyKind::Isotropic);
  EXPECT_EQ(iso.d, 4);
  EXPECT_EQ(parse_family("reduction:3").kind, FamilyKind::Reduction);
  for (const char* bad : {"foo", "isotropic", "isotropic:", "isotropic:x", "isotropic:1", "bogus:3"})
    expect_error(ErrorCode::BadFamily, [&] { parse_family(bad); });
}

TEST(soundness, k_separable_states_never_trigger_level_k_detectors) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const int k = 1 + static_cast<int>(s % 2);
    const MatrixOp rho = random_k_separable_state(3, k, 1 + static_cast<int>(s % 6), s);
    for (const auto& det : default_detector_bank(3)) {
      if (det.k_level < k) continue;
      ASSERT_FALSE(detect_schmidt_number(rho, det).fired) << "seed " << s << " " << det.id;
    }
  }
}

TEST(random_k_separable_state, is_a_state) {
  const MatrixOp rho = random_k_separable_state(3, 2, 4, 1);
  EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-14);
  EXPECT_GE(min_eigenvalue(rho.matrix()), -1e-14);
  expect_error(ErrorCode::BadRank, [] { random_k_separable_state(3, 4, 1, 1); });
}
