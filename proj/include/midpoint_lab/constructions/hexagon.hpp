#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "midpoint_lab/constructions/candidate.hpp"
#include "midpoint_lab/core/linalg.hpp"

namespace mlab {

/// Planar convex closed curve {p : g(p) = 1} given by a convex gauge-like
/// function g on plane coordinates, with an interior point (g < 1).
struct PlaneCurve {
  std::function<double(const VecD&)> g;
  VecD interior{0.0, 0.0};
};

/// Affinely regular hexagon m ± u, m ± w, m ± (w − u) inscribed in a curve.
struct HexagonInscription {
  VecD m, u, w;
  std::vector<VecD> vertices;  // m+u, m+w, m+w−u, m−u, m−w, m−w+u
  std::vector<double> residuals;
  double max_residual = 0;
  int restarts_used = 0;
};

class HexagonFailure : public std::runtime_error {
 public:
  HexagonFailure(const std::string& what, double best) : std::runtime_error(what), best_residual(best) {}
  double best_residual;
};

namespace detail {

inline std::vector<VecD> hexagon_vertices(const VecD& m, const VecD& u, const VecD& w) {
  return {m + u, m + w, m + w - u, m - u, m - w, m - w + u};
}

inline void fill_residuals(HexagonInscription& h, const std::function<double(const VecD&)>& g) {
  h.vertices = hexagon_vertices(h.m, h.u, h.w);
  h.residuals.clear();
  h.max_residual = 0;
  for (const auto& v : h.vertices) {
    h.residuals.push_back(g(v) - 1);
    h.max_residual = std::max(h.max_residual, std::fabs(h.residuals.back()));
  }
}

// Parameter t > 0 with g(c + t dir) = 1 (g(c) < 1, g convex and coercive).
inline double ray_shoot(const std::function<double(const VecD&)>& g, const VecD& c, const VecD& dir) {
  double hi = 1;
  for (int i = 0; g(c + hi * dir) < 1; ++i) {
    hi *= 2;
    if (i > 200) throw std::runtime_error("ray_shoot: curve is unbounded in this direction");
  }
  double lo = 0;
  for (int i = 0; i < 200 && hi - lo > 1e-16 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (g(c + mid * dir) < 1 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Best-fit ellipse {m + A z : |z| <= 1} from the area moments of a ray-shot polygon.
inline std::pair<VecD, MatrixD> fit_ellipse(const PlaneCurve& curve, int samples = 96) {
  std::vector<VecD> poly;
  for (int k = 0; k < samples; ++k) {
    const double a = 2 * std::numbers::pi * k / samples;
    VecD dir{std::cos(a), std::sin(a)};
    poly.push_back(curve.interior + ray_shoot(curve.g, curve.interior, dir) * dir);
  }
  double area = 0;
  VecD first(2);
  MatrixD second(2, 2);
  const VecD& o = curve.interior;
  for (int k = 0; k < samples; ++k) {
    const VecD& p = poly[k];
    const VecD& q = poly[(k + 1) % samples];
    const double ta = 0.5 * ((p[0] - o[0]) * (q[1] - o[1]) - (p[1] - o[1]) * (q[0] - o[0]));
    area += ta;
    first += ta / 3 * (o + p + q);
    VecD s = o + p + q;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        second(i, j) += ta / 12 * (o[i] * o[j] + p[i] * p[j] + q[i] * q[j] + s[i] * s[j]);
  }
  VecD m = first / area;
  MatrixD cov(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) cov(i, j) = second(i, j) / area - m[i] * m[j];
  // For a uniform ellipse the covariance is A Aᵀ / 4.
  MatrixD a(2, 2);
  a(0, 0) = std::sqrt(cov(0, 0));
  a(1, 0) = cov(1, 0) / a(0, 0);
  a(1, 1) = std::sqrt(std::max(1e-300, cov(1, 1) - a(1, 0) * a(1, 0)));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) a(i, j) *= 2;
  return {m, a};
}

inline double polygon_area_of(const PlaneCurve& curve, int samples = 96) {
  double area = 0;
  VecD prev;
  for (int k = 0; k <= samples; ++k) {
    const double a = 2 * std::numbers::pi * k / samples;
    VecD dir{std::cos(a), std::sin(a)};
    VecD p = ray_shoot(curve.g, curve.interior, dir) * dir;
    if (k > 0) area += 0.5 * (prev[0] * p[1] - prev[1] * p[0]);
    prev = p;
  }
  return area;
}

}  // namespace detail

struct HexagonConfig {
  int restarts = 32;
  int max_iters = 300;
  double tolerance = 1e-12;  // target max |g − 1| on the six vertices
  double accept = 1e-8;      // best residual still accepted after all restarts
};

/// Inscribes an affinely regular hexagon by Levenberg–Marquardt on the six
/// equations g(vertex) = 1 in the six unknowns (m, u, w), seeded from the
/// affine image of the regular hexagon in the best-fit ellipse. Restarts rotate
/// the seed; solutions whose area is tiny relative to the curve are rejected.
inline HexagonInscription hexagon_in_curve(const PlaneCurve& curve, const HexagonConfig& cfg = {}) {
  const auto [m0, a] = detail::fit_ellipse(curve);
  const double curve_area = detail::polygon_area_of(curve);
  const double scale = std::sqrt(std::fabs(curve_area));

  auto residual = [&](const VecD& z) {
    VecD m{z[0], z[1]}, u{z[2], z[3]}, w{z[4], z[5]};
    auto vs = detail::hexagon_vertices(m, u, w);
    VecD r(6);
    for (int k = 0; k < 6; ++k) r[k] = curve.g(vs[k]) - 1;
    return r;
  };
  auto sq = [](const VecD& r) { return dot(r, r); };

  HexagonInscription best;
  best.max_residual = std::numeric_limits<double>::infinity();
  for (int k = 0; k < cfg.restarts; ++k) {
    const double alpha = (std::numbers::pi / 3) * (k + 0.5) / cfg.restarts;
    VecD u0{std::cos(alpha), std::sin(alpha)};
    VecD w0{std::cos(alpha + std::numbers::pi / 3), std::sin(alpha + std::numbers::pi / 3)};
    VecD z{m0[0], m0[1], 0, 0, 0, 0};
    VecD au = a * u0, aw = a * w0;
    z[2] = au[0], z[3] = au[1], z[4] = aw[0], z[5] = aw[1];

    VecD r = residual(z);
    double mu = 1e-3;
    for (int it = 0; it < cfg.max_iters && max_abs(r) > cfg.tolerance; ++it) {
      MatrixD jac(6, 6);
      for (int c = 0; c < 6; ++c) {
        const double h = 1e-7 * std::max(scale, std::fabs(z[c]));
        VecD zp = z, zm = z;
        zp[c] += h;
        zm[c] -= h;
        VecD rp = residual(zp), rm = residual(zm);
        for (int q = 0; q < 6; ++q) jac(q, c) = (rp[q] - rm[q]) / (2 * h);
      }
      MatrixD jt = jac.transposed();
      MatrixD jtj = jt * jac;
      VecD grad = jt * r;
      bool improved = false;
      for (int tries = 0; tries < 20 && !improved; ++tries) {
        MatrixD lhs = jtj;
        for (int c = 0; c < 6; ++c) lhs(c, c) += mu * (1 + jtj(c, c));
        auto sol = solve_linear(lhs, VecD(-grad), 1e-300);
        if (sol.singular) {
          mu *= 10;
          continue;
        }
        VecD zn = z + sol.x;
        VecD rn = residual(zn);
        if (sq(rn) < sq(r)) {
          z = zn;
          r = rn;
          mu = std::max(mu / 5, 1e-15);
          improved = true;
        } else {
          mu *= 8;
        }
      }
      if (!improved) break;
    }
    HexagonInscription h;
    h.m = VecD{z[0], z[1]};
    h.u = VecD{z[2], z[3]};
    h.w = VecD{z[4], z[5]};
    h.restarts_used = k + 1;
    detail::fill_residuals(h, curve.g);
    const double hex_area = 3 * std::fabs(h.u[0] * h.w[1] - h.u[1] * h.w[0]);
    if (hex_area < 0.05 * std::fabs(curve_area)) continue;  // collapsed solution
    if (h.max_residual < best.max_residual) best = h;
    if (best.max_residual <= cfg.tolerance) break;
  }
  if (!(best.max_residual <= cfg.accept))
    throw HexagonFailure("hexagon inscription did not converge; best residual " +
                             format_double(best.max_residual),
                         best.max_residual);
  return best;
}

struct Hexagon2D {
  MSetCandidate candidate;
  HexagonInscription hexagon;
};

/// Three-point M-set {2x, 2y, 2z} with x + y + z = 0 for a 2-dimensional norm.
/// Hexagon centred at 0: u is the unit point in direction θ, and w is the unit
/// point at angle φ ∈ (θ, θ + π) with gauge(w − u) = 1, found by bisection.
inline Hexagon2D mset_2d(const NormOracle& norm, double theta = 0, const ToleranceBudget& tol = {}) {
  if (norm.dim() != 2) throw std::invalid_argument("mset_2d: norm must be 2-dimensional");
  auto unit_at = [&](double ang) {
    VecD d{std::cos(ang), std::sin(ang)};
    return VecD(d / norm.gauge(d));
  };
  const VecD u = unit_at(theta);
  double lo = theta, hi = theta + std::numbers::pi;
  for (int i = 0; i < 200 && hi - lo > 1e-17; ++i) {
    const double mid = 0.5 * (lo + hi);
    (norm.gauge(unit_at(mid) - u) < 1 ? lo : hi) = mid;
  }
  const VecD w = unit_at(0.5 * (lo + hi));
  Hexagon2D out{make_candidate(std::vector<VecD>{2.0 * u, -2.0 * w, 2.0 * (w - u)}, norm,
                               Provenance{"hexagon2d", {{"theta", format_double(theta)}}}, 1.0),
                {}};
  out.hexagon.m = VecD(2);
  out.hexagon.u = u;
  out.hexagon.w = w;
  detail::fill_residuals(out.hexagon, [&](const VecD& p) { return norm.gauge(p); });
  if (out.hexagon.max_residual > tol.eq_tol)
    throw HexagonFailure("mset_2d: bisection residual too large", out.hexagon.max_residual);
  return out;
}

struct AnyDim3 {
  MSetCandidate candidate;
  HexagonInscription hexagon;
  VecD x, functional, y;
  VecD b1, b2;
};

/// Four-point M-set {y+2a, y+2b, y+2c, −3y} for any 3-dimensional norm.
/// x is a unit point with supporting functional g, the sphere is sliced by
/// λx + ker g, and an affinely regular hexagon with centre y and generators
/// a, b, c (a + b + c = 0) is inscribed in the slice.
inline AnyDim3 mset_any_3d(const NormOracle& norm, double lambda = 0.5,
                           VecD direction = VecD{1.0, 0.31, 0.17}, const HexagonConfig& cfg = {}) {
  if (norm.dim() != 3) throw std::invalid_argument("mset_any_3d: norm must be 3-dimensional");
  if (!(lambda > 1.0 / 3 && lambda < 1)) throw std::invalid_argument("mset_any_3d: need 1/3 < lambda < 1");
  AnyDim3 out{make_candidate(std::vector<VecD>{}, norm, {}, 0), {}, {}, {}, {}, {}, {}};
  out.x = direction / norm.gauge(direction);
  out.functional = norm.gauge_with_gradient(out.x).gradient;
  // Orthonormal basis of ker g.
  auto ns = nullspace(MatrixD::from_rows({out.functional}), 1e-12);
  if (ns.size() != 2) throw std::runtime_error("mset_any_3d: degenerate supporting functional");
  out.b1 = ns[0] / norm2(ns[0]);
  VecD t = ns[1] - dot(ns[1], out.b1) * out.b1;
  out.b2 = t / norm2(t);
  const VecD base = lambda * out.x;
  auto lift = [&](const VecD& p) { return VecD(base + p[0] * out.b1 + p[1] * out.b2); };
  PlaneCurve curve{[&](const VecD& p) { return norm.gauge(lift(p)); }, VecD{0.0, 0.0}};
  if (curve.g(curve.interior) >= 1) throw std::runtime_error("mset_any_3d: slice has empty interior");
  out.hexagon = hexagon_in_curve(curve, cfg);

  out.y = lift(out.hexagon.m);
  const VecD a = out.hexagon.u[0] * out.b1 + out.hexagon.u[1] * out.b2;
  const VecD w = out.hexagon.w[0] * out.b1 + out.hexagon.w[1] * out.b2;
  const VecD b = -w, c = w - a;
  std::vector<VecD> pts{out.y + 2.0 * a, out.y + 2.0 * b, out.y + 2.0 * c, -3.0 * out.y};
  double min_g = std::numeric_limits<double>::infinity();
  for (const auto& p : pts) min_g = std::min(min_g, norm.gauge(p));
  out.candidate = make_candidate(std::move(pts), norm,
                                 Provenance{"any3d", {{"lambda", format_double(lambda)}}}, min_g - 1);
  return out;
}

}  // namespace mlab
