#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "midpoint_lab/core/linalg.hpp"

namespace mlab {

struct GramRefutation {
  bool refuted = false;
  std::string reason;
  VecD lambda;                    // affine dependence, max |λ_j| = 1
  double S = 0;                   // Σ λ_i |z_i|², z = x / 2
  std::vector<double> identity_residuals;  // λ_j(4|z_j|² − 1) − S
  double max_identity_residual = 0;
  double gap = 0;                 // max_j |λ_j(4|z_j|² − 1)|; zero for a genuine M-set
  double max_pair_residual = 0;   // max | |x_i + x_j| − 2 |
};

/// Euclidean refutation of a (d+2)-point M-set in R^d.
///
/// With z = x/2, |z_i + z_j| = 1 and an affine dependence Σλ_i z_i = 0, Σλ_i = 0,
/// every j satisfies λ_j(4|z_j|² − 1) = S. Summing over j gives (m − 4)S = 0, so
/// for m != 4 the left sides all vanish and every z_j with λ_j != 0 has length
/// 1/2, i.e. |x_j| = 1. A configuration is refuted when either the identities
/// fail (it is not an M-set) or the gap is positive (points of norm > 1).
inline GramRefutation l2_gram_refute(const std::vector<VecD>& points, std::size_t d, double tol = 1e-6) {
  if (points.size() != d + 2) throw std::invalid_argument("l2_gram_refute: need exactly d + 2 points");
  if (d == 2) throw std::invalid_argument("l2_gram_refute: the identity is vacuous for d = 2 (m = 4)");
  for (const auto& p : points)
    if (p.dim() != d) throw std::invalid_argument("l2_gram_refute: dimension mismatch");
  const std::size_t m = points.size();
  GramRefutation out;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      out.max_pair_residual = std::max(out.max_pair_residual, std::fabs(norm2(points[i] + points[j]) - 2));

  MatrixD a(d + 1, m);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < d; ++i) a(i, j) = points[j][i] / 2;
    a(d, j) = 1;
  }
  auto ns = nullspace(a, 1e-12);
  if (ns.empty()) throw std::logic_error("l2_gram_refute: no affine dependence found");
  out.lambda = ns.front() / max_abs(ns.front());

  std::vector<double> sq(m);
  for (std::size_t j = 0; j < m; ++j) {
    sq[j] = dot(points[j], points[j]) / 4;
    out.S += out.lambda[j] * sq[j];
  }
  for (std::size_t j = 0; j < m; ++j) {
    const double lhs = out.lambda[j] * (4 * sq[j] - 1);
    out.identity_residuals.push_back(lhs - out.S);
    out.max_identity_residual = std::max(out.max_identity_residual, std::fabs(lhs - out.S));
    out.gap = std::max(out.gap, std::fabs(lhs));
  }
  if (out.max_identity_residual > tol) {
    out.refuted = true;
    out.reason = "pairwise-sum identities fail (max residual " + std::to_string(out.max_identity_residual) + ")";
  } else if (out.gap > tol) {
    out.refuted = true;
    out.reason = "identities force unit-length points but some |x_j| differ from 1 (gap " +
                 std::to_string(out.gap) + ")";
  } else {
    out.reason = "no contradiction at this tolerance";
  }
  return out;
}

}  // namespace mlab
