#pragma once
// Independent reference computations used only by the tests.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "midpoint_lab/core/vector.hpp"

namespace oracle {

using mlab::VecD;

inline double lp_norm(const VecD& x, double p) {
  double s = 0, m = 0;
  for (double v : x) m = std::max(m, std::fabs(v));
  if (std::isinf(p)) return m;
  if (m == 0) return 0;
  for (double v : x) s += std::pow(std::fabs(v) / m, p);
  return m * std::pow(s, 1 / p);
}

inline double euclid(const VecD& x) { return lp_norm(x, 2); }

inline std::vector<VecD> cube_vertices(std::size_t d) {
  std::vector<VecD> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    VecD v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = (mask >> i & 1) ? 1.0 : -1.0;
    out.push_back(v);
  }
  return out;
}

inline std::size_t binomial(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Determinant by cofactor expansion (small matrices only).
inline double det(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  if (n == 1) return a[0][0];
  double s = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<double>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<double> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(a[r][k]);
      minor.push_back(row);
    }
    s += (c % 2 ? -1 : 1) * a[0][c] * det(minor);
  }
  return s;
}

/// Brute-force facet count of a 3-polytope: planes through vertex triples with all points on one side.
inline std::size_t facet_planes_3d(const std::vector<VecD>& pts, double eps = 1e-9) {
  std::vector<std::pair<VecD, double>> planes;
  const std::size_t n = pts.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c) {
        VecD u = pts[b] - pts[a], v = pts[c] - pts[a];
        VecD nrm{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
        double len = euclid(nrm);
        if (len < eps) continue;
        nrm = nrm / len;
        double off = mlab::dot(nrm, pts[a]);
        int pos = 0, neg = 0;
        for (const auto& p : pts) {
          double s = mlab::dot(nrm, p) - off;
          if (s > eps) ++pos;
          if (s < -eps) ++neg;
        }
        if (pos && neg) continue;
        if (pos) {
          nrm = -nrm;
          off = -off;
        }
        bool seen = false;
        for (const auto& [q, o] : planes)
          if (euclid(q - nrm) < 1e-7 && std::fabs(o - off) < 1e-7) seen = true;
        if (!seen) planes.push_back({nrm, off});
      }
  return planes.size();
}

}  // namespace oracle

namespace oracle {

/// Supporting planes (unit normal, offset) of a full-dimensional 3-polytope, by brute force.
inline std::vector<std::pair<VecD, double>> facet_plane_list_3d(const std::vector<VecD>& pts, double eps = 1e-9) {
  std::vector<std::pair<VecD, double>> planes;
  const std::size_t n = pts.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c) {
        VecD u = pts[b] - pts[a], v = pts[c] - pts[a];
        VecD nrm{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
        const double len = euclid(nrm);
        if (len < eps) continue;
        nrm = nrm / len;
        double off = mlab::dot(nrm, pts[a]);
        int pos = 0, neg = 0;
        for (const auto& p : pts) {
          const double s = mlab::dot(nrm, p) - off;
          pos += s > eps;
          neg += s < -eps;
        }
        if (pos && neg) continue;
        if (pos) {
          nrm = -nrm;
          off = -off;
        }
        bool seen = false;
        for (const auto& [q, o] : planes) seen = seen || (euclid(q - nrm) < 1e-7 && std::fabs(o - off) < 1e-7);
        if (!seen) planes.push_back({nrm, off});
      }
  return planes;
}

/// Segment [a, b] lies in the boundary iff both endpoints share a supporting plane.
inline bool share_plane(const std::vector<std::pair<VecD, double>>& planes, const VecD& a, const VecD& b,
                        double eps = 1e-9) {
  for (const auto& [q, o] : planes)
    if (std::fabs(mlab::dot(q, a) - o) < eps && std::fabs(mlab::dot(q, b) - o) < eps) return true;
  return false;
}

}  // namespace oracle
