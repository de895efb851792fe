#pragma once

#include <cmath>
#include <string>

#include "midpoint_lab/constructions/candidate.hpp"

namespace mlab {

/// d+1 points in euclidean d-space: a regular simplex scaled by sqrt(2d/(d-1)),
/// so that every pairwise sum has length 2. For d = 1 the pair {4, -2}.
inline MSetCandidate mset_l2_simplex(std::size_t d) {
  if (d < 1) throw std::invalid_argument("mset_l2_simplex: d must be >= 1");
  Provenance prov{"l2simplex", {{"d", std::to_string(d)}}};
  if (d == 1) return make_candidate(std::vector<VecD>{VecD{4.0}, VecD{-2.0}}, NormOracle::lp(1, 2), prov, 1.0);

  // Unit vectors with pairwise inner product -1/d: Cholesky rows of the Gram
  // matrix of the first d, and the negated sum as the last one.
  const double dd = static_cast<double>(d);
  MatrixD l(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    double s = 1.0;
    for (std::size_t k = 0; k < j; ++k) s -= l(j, k) * l(j, k);
    l(j, j) = std::sqrt(s);
    for (std::size_t i = j + 1; i < d; ++i) {
      double t = -1.0 / dd;
      for (std::size_t k = 0; k < j; ++k) t -= l(i, k) * l(j, k);
      l(i, j) = t / l(j, j);
    }
  }
  const double s = std::sqrt(2 * dd / (dd - 1));
  std::vector<VecD> pts;
  VecD last(d);
  for (std::size_t i = 0; i < d; ++i) {
    VecD v = l.row(i);
    last -= v;
    pts.push_back(s * v);
  }
  pts.push_back(s * last);
  return make_candidate(std::move(pts), NormOracle::lp(d, 2), prov, s - 1);
}

/// 2d−1 points for the sup norm: 2e_i + e_d, −2e_i + e_d (i < d) and −3e_d.
/// `literal_first_axis` uses −2e_1 + e_d for every second-family point instead.
inline MSetCandidate mset_linf(std::size_t d, bool literal_first_axis = false) {
  if (d < 2) throw std::invalid_argument("mset_linf: d must be >= 2");
  std::vector<VecQ> pts;
  const VecQ ed = unit_vector<Rational>(d, d - 1);
  for (std::size_t i = 0; i + 1 < d; ++i) pts.push_back(unit_vector<Rational>(d, i, Rational(2)) + ed);
  for (std::size_t i = 0; i + 1 < d; ++i)
    pts.push_back(unit_vector<Rational>(d, literal_first_axis ? 0 : i, Rational(-2)) + ed);
  pts.push_back(unit_vector<Rational>(d, d - 1, Rational(-3)));
  Provenance prov{"linf", {{"d", std::to_string(d)}}};
  if (literal_first_axis) prov.params["reading"] = "first_axis";
  return make_candidate(std::move(pts), NormOracle::lp(d, std::numeric_limits<double>::infinity()), prov, 1.0);
}

}  // namespace mlab
