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
 * @file    serialize.hpp
 * @brief   JSON forms of matrices, maps, Kraus sets, certificates and reports.
 *
 * Matrix:      {"dim": n, "dims": [dA, dB] | null, "re": [[...]], "im": [[...]]}
 * Map:         the matrix form of the superoperator plus "repr": "super"
 * Kraus set:   {"kraus": [matrix, ...]}
 * Vector:      {"dA": .., "dB": .., "re": [...], "im": [...]}
 */

#ifndef MAPCONES_SERIALIZE_HPP
#define MAPCONES_SERIALIZE_HPP

#include <string>
#include <vector>

#include "json.hpp"

#include "mapcones/bipartite.hpp"
#include "mapcones/certify.hpp"
#include "mapcones/maps.hpp"

namespace mapcones {

using json = nlohmann::json;

namespace detail {
[[noreturn]] inline void parse_fail(const std::string& what) { throw Error(ErrorCode::Parse, what); }

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_fail(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

inline double number(const json& j) {
  if (!j.is_number()) parse_fail("expected a number");
  return j.get<double>();
}
}  // namespace detail

inline json to_json(const Matrix& m, const std::optional<Dims>& dims = std::nullopt) {
  json re = json::array(), im = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json rr = json::array(), ri = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      rr.push_back(m(i, j).real());
      ri.push_back(m(i, j).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  json out;
  out["dim"] = m.rows();
  out["dims"] = dims ? json::array({dims->a, dims->b}) : json(nullptr);
  out["re"] = std::move(re);
  out["im"] = std::move(im);
  return out;
}

inline json to_json(const MatrixOp& x) { return to_json(x.matrix(), x.dims()); }

inline MatrixOp matrix_from_json(const json& j) {
  const json& jdim = detail::field(j, "dim");
  if (!jdim.is_number_integer() || jdim.get<long long>() <= 0) detail::parse_fail("bad \"dim\"");
  const auto n = static_cast<Eigen::Index>(jdim.get<long long>());
  const json& re = detail::field(j, "re");
  const json& im = detail::field(j, "im");
  if (!re.is_array() || !im.is_array() || static_cast<Eigen::Index>(re.size()) != n ||
      static_cast<Eigen::Index>(im.size()) != n)
    detail::parse_fail("\"re\"/\"im\" must be dim x dim arrays");
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const json& rr = re[static_cast<std::size_t>(i)];
    const json& ri = im[static_cast<std::size_t>(i)];
    if (!rr.is_array() || !ri.is_array() || static_cast<Eigen::Index>(rr.size()) != n ||
        static_cast<Eigen::Index>(ri.size()) != n)
      detail::parse_fail("row " + std::to_string(i) + " has the wrong length");
    for (Eigen::Index c = 0; c < n; ++c)
      m(i, c) = cplx(detail::number(rr[static_cast<std::size_t>(c)]),
                     detail::number(ri[static_cast<std::size_t>(c)]));
  }
  std::optional<Dims> dims;
  if (j.contains("dims") && !j.at("dims").is_null()) {
    const json& jd = j.at("dims");
    if (!jd.is_array() || jd.size() != 2 || !jd[0].is_number_integer() || !jd[1].is_number_integer())
      detail::parse_fail("\"dims\" must be [dA, dB] or null");
    dims = Dims{jd[0].get<int>(), jd[1].get<int>()};
  }
  try {
    return MatrixOp(std::move(m), dims);
  } catch (const Error& e) {
    detail::parse_fail(e.what());
  }
}

inline json to_json(const MapRep& phi) {
  json out = to_json(phi.super());
  out["repr"] = "super";
  return out;
}

inline json to_json(const KrausSet& set) {
  json ops = json::array();
  for (const auto& a : set.operators) ops.push_back(to_json(a));
  return json{{"kraus", std::move(ops)}};
}

inline KrausSet kraus_from_json(const json& j) {
  const json& arr = detail::field(j, "kraus");
  if (!arr.is_array()) detail::parse_fail("\"kraus\" must be an array");
  std::vector<Matrix> ops;
  for (const auto& m : arr) ops.push_back(matrix_from_json(m).matrix());
  return make_kraus_set(std::move(ops));
}

/// Map from any of the accepted input shapes: a superoperator ("repr":
/// "super"), a Kraus list, or an operator which is read as a Choi matrix.
inline MapRep map_from_json(const json& j) {
  if (!j.is_object()) detail::parse_fail("expected a JSON object");
  if (j.contains("kraus")) return from_kraus(kraus_from_json(j));
  const MatrixOp m = matrix_from_json(j);
  const std::string repr = j.contains("repr") && j.at("repr").is_string()
                               ? j.at("repr").get<std::string>()
                               : std::string("choi");
  const int d = detail::sqrt_dim(m.dim());
  if (repr == "super") return MapRep(d, m.matrix());
  if (repr == "choi") return map_from_choi(m);
  detail::parse_fail("unknown repr \"" + repr + "\"");
}

inline json to_json(const BipartiteVector& v) {
  json re = json::array(), im = json::array();
  for (Eigen::Index i = 0; i < v.amplitudes().size(); ++i) {
    re.push_back(v.amplitudes()(i).real());
    im.push_back(v.amplitudes()(i).imag());
  }
  return json{{"dA", v.da()}, {"dB", v.db()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

inline BipartiteVector vector_from_json(const json& j) {
  const json& jda = detail::field(j, "dA");
  const json& jdb = detail::field(j, "dB");
  if (!jda.is_number_integer() || !jdb.is_number_integer()) detail::parse_fail("\"dA\"/\"dB\" must be integers");
  const int da = jda.get<int>();
  const int db = jdb.get<int>();
  const json& re = detail::field(j, "re");
  const json& im = detail::field(j, "im");
  if (!re.is_array() || !im.is_array() || re.size() != im.size())
    detail::parse_fail("vector \"re\"/\"im\" mismatch");
  Vector v(static_cast<Eigen::Index>(re.size()));
  for (std::size_t i = 0; i < re.size(); ++i) v(static_cast<Eigen::Index>(i)) = cplx(detail::number(re[i]), detail::number(im[i]));
  try {
    return BipartiteVector(da, db, std::move(v));
  } catch (const Error& e) {
    detail::parse_fail(e.what());
  }
}

inline json to_json(const Certificate& c) {
  json out;
  out["verdict"] = std::string(to_string(c.verdict));
  out["k"] = c.k;
  out["value"] = c.value;
  out["detail"] = c.detail;
  out["restarts_used"] = c.restarts_used;
  out["witness"] = c.witness ? to_json(*c.witness) : json(nullptr);
  if (c.crosscheck_value) out["crosscheck_value"] = *c.crosscheck_value;
  return out;
}

inline json to_json(const SchmidtBounds& b) {
  return json{{"lower", b.lower},
              {"upper", b.upper},
              {"lower_evidence", b.lower_evidence},
              {"upper_evidence", b.upper_evidence}};
}

inline json to_json(const ConeReport& r) {
  json out;
  out["d"] = r.d;
  json pk = json::array(), cpk = json::array();
  for (const auto& c : r.p_k) pk.push_back(to_json(c));
  for (const auto& c : r.co_p_k) cpk.push_back(to_json(c));
  out["p_k"] = std::move(pk);
  out["co_p_k"] = std::move(cpk);
  out["cp"] = r.cp;
  out["cp_certificate"] = to_json(r.cp_certificate);
  out["ccp"] = r.ccp;
  out["ccp_certificate"] = to_json(r.ccp_certificate);
  out["s_bounds"] = r.s_bounds ? to_json(*r.s_bounds) : json(nullptr);
  out["co_s_bounds"] = r.co_s_bounds ? to_json(*r.co_s_bounds) : json(nullptr);
  json km = json::array();
  for (const auto& f : r.km_flags)
    km.push_back(json{{"k", f.k},
                      {"m", f.m},
                      {"positive", std::string(to_string(f.positive))},
                      {"superpositive", std::string(to_string(f.superpositive))}});
  out["km_flags"] = std::move(km);
  out["dec_certificate"] = to_json(r.dec_certificate);
  return out;
}

}  // namespace mapcones

#endif  // MAPCONES_SERIALIZE_HPP
