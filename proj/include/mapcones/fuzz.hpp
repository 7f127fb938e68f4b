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
 * @file    fuzz.hpp
 * @brief   Seeded invariant batteries. Instance i of a run uses seed + i, so
 *          every recorded failure can be replayed on its own.
 */

#ifndef MAPCONES_FUZZ_HPP
#define MAPCONES_FUZZ_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "mapcones/certify.hpp"
#include "mapcones/maps.hpp"
#include "mapcones/serialize.hpp"

namespace mapcones {

struct FuzzConfig {
  std::uint64_t seed = 42;
  int d = 3;
  int k = 2;
};

struct FuzzFailure {
  std::uint64_t seed = 0;
  std::string message;
};

struct FuzzSummary {
  std::string suite;
  int n = 0;
  int passed = 0;
  int failed = 0;
  double max_error = 0.0;
  std::vector<FuzzFailure> failures;
};

/// Convex combination w * (random CP map) + (1 - w) * reduction(d, 1/k): a
/// k-positive map by construction.
inline MapRep random_k_positive_map(int d, int k, Rng& rng) {
  const double w = uniform01(rng);
  const std::uint64_t cp_seed = rng();
  const int n_ops = 1 + static_cast<int>(rng() % 3);
  const Matrix s = w * random_cp_map(d, d, n_ops, cp_seed).super() +
                   (1.0 - w) * reduction_family(d, 1.0 / k).super();
  return MapRep(d, s);
}

namespace detail {

struct CaseResult {
  bool ok = true;
  double error = 0.0;
  std::string message;
};

// <Phi, Psi> >= 0 for Phi in S_k (rank-bounded Kraus) and Psi in P_k.
inline CaseResult fuzz_duality(std::uint64_t seed, const FuzzConfig& cfg) {
  Rng rng(seed);
  const MapRep phi = random_cp_map(cfg.d, cfg.k, 1 + static_cast<int>(rng() % 4), rng());
  const MapRep psi = random_k_positive_map(cfg.d, cfg.k, rng);
  const double pairing = dual_pairing(phi, psi);
  CaseResult r;
  r.error = std::max(0.0, -pairing);
  r.ok = pairing >= -1e-9;
  if (!r.ok) r.message = "pairing " + std::to_string(pairing);
  return r;
}

// Rank-bounded Kraus form of Psi o Ad_a (and Ad_a o Psi), and the level-k
// reduction detector stays silent on its Choi matrix.
inline CaseResult fuzz_composition(std::uint64_t seed, const FuzzConfig& cfg) {
  Rng rng(seed);
  const int rank = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(cfg.k));
  const Matrix a = random_matrix_of_rank(rng, cfg.d, rank);
  const MapRep psi = random_k_positive_map(cfg.d, cfg.k, rng);
  CaseResult r;
  for (auto order : {CompositionOrder::MapAfterAd, CompositionOrder::AdAfterMap}) {
    const KrausSet set = compose_certified(a, psi, cfg.k, kRankTol, order);
    const MapRep target = order == CompositionOrder::MapAfterAd ? compose(psi, ad(a)) : compose(ad(a), psi);
    const double err = map_distance(from_kraus(set), target);
    r.error = std::max(r.error, err);
    if (set.rank_bound > cfg.k) {
      r.ok = false;
      r.message = "Kraus rank " + std::to_string(set.rank_bound);
    }
    if (err > 1e-9) {
      r.ok = false;
      r.message = "reconstruction error " + std::to_string(err);
    }
    const MatrixOp c = choi(target);
    const double m = detector_min_eigenvalue(c, reduction_family(cfg.d, 1.0 / cfg.k));
    if (cfg.k < cfg.d && m < -1e-9 * std::max(1.0, max_abs(c.matrix()))) {
      r.ok = false;
      r.message = "detector fired with " + std::to_string(m);
    }
  }
  return r;
}

inline CaseResult fuzz_bijection(std::uint64_t seed, const FuzzConfig&) {
  const int d = 2 + static_cast<int>(seed % 3);
  const MapRep phi = random_hp_map(d, seed);
  const MatrixOp c = choi(phi);
  CaseResult r;
  r.error = std::max(map_distance(map_from_choi(c), phi), max_abs(choi(map_from_choi(c)).matrix() - c.matrix()));
  r.ok = r.error <= 1e-13;
  if (!r.ok) r.message = "round trip error " + std::to_string(r.error);
  return r;
}

inline CaseResult fuzz_adjoint(std::uint64_t seed, const FuzzConfig&) {
  Rng rng(seed);
  const int d = 2 + static_cast<int>(rng() % 3);
  const MapRep phi = random_hp_map(d, rng());
  const MatrixOp x(random_hermitian(rng, d)), y(random_hermitian(rng, d));
  const double lhs = hs_inner(mapcones::apply(phi, x), y);
  const double rhs = hs_inner(x, mapcones::apply(adjoint(phi), y));
  CaseResult r;
  r.error = std::abs(lhs - rhs);
  r.ok = r.error <= 1e-10 * std::max(1.0, std::abs(lhs));
  if (!r.ok) r.message = "pairing mismatch " + std::to_string(r.error);
  return r;
}

}  // namespace detail

inline const std::vector<std::string>& fuzz_suites() {
  static const std::vector<std::string> names = {"duality", "composition", "bijection", "adjoint"};
  return names;
}

inline FuzzSummary run_fuzz(std::string_view suite, int n, const FuzzConfig& cfg = {}) {
  if (n < 1) throw Error(ErrorCode::BadParam, "n must be >= 1");
  std::function<detail::CaseResult(std::uint64_t, const FuzzConfig&)> body;
  if (suite == "duality") body = detail::fuzz_duality;
  else if (suite == "composition") body = detail::fuzz_composition;
  else if (suite == "bijection") body = detail::fuzz_bijection;
  else if (suite == "adjoint") body = detail::fuzz_adjoint;
  else throw Error(ErrorCode::BadParam, "unknown fuzz suite \"" + std::string(suite) + "\"");
  if (cfg.k < 1 || cfg.k > cfg.d) throw Error(ErrorCode::BadK, "k must be in [1, d]");

  FuzzSummary sum;
  sum.suite = std::string(suite);
  sum.n = n;
  for (int i = 0; i < n; ++i) {
    const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(i);
    detail::CaseResult r;
    try {
      r = body(seed, cfg);
    } catch (const Error& e) {
      r.ok = false;
      r.message = e.what();
    }
    sum.max_error = std::max(sum.max_error, r.error);
    if (r.ok) {
      ++sum.passed;
    } else {
      ++sum.failed;
      sum.failures.push_back({seed, r.message});
    }
  }
  return sum;
}

inline json to_json(const FuzzSummary& s) {
  json failures = json::array();
  for (const auto& f : s.failures) failures.push_back(json{{"seed", f.seed}, {"message", f.message}});
  return json{{"suite", s.suite},         {"n", s.n},
              {"passed", s.passed},       {"failed", s.failed},
              {"max_error", s.max_error}, {"failures", std::move(failures)}};
}

}  // namespace mapcones

#endif  // MAPCONES_FUZZ_HPP
