#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "midpoint_lab/core/linalg.hpp"

namespace mlab {

/// Convex polygon living in a 2-flat of R^n, stored in the plane's own
/// coordinates with counterclockwise vertex order.
template <class T>
struct PlanePolygon {
  Vec<T> origin;
  Vec<T> u, v;  // plane basis
  std::vector<Vec<T>> vertices_2d;

  Vec<T> to_ambient(const Vec<T>& q) const { return origin + q[0] * u + q[1] * v; }

  std::vector<Vec<T>> ambient_vertices() const {
    std::vector<Vec<T>> out;
    for (const auto& q : vertices_2d) out.push_back(to_ambient(q));
    return out;
  }

  /// Fewer than three vertices: a point or a segment.
  bool is_degenerate() const { return vertices_2d.size() < 3; }
};

template <class T>
T cross2(const Vec<T>& a, const Vec<T>& b) {
  return a[0] * b[1] - a[1] * b[0];
}

template <class T>
T signed_area2(const std::vector<Vec<T>>& poly) {
  T s(0);
  for (std::size_t i = 0; i < poly.size(); ++i)
    s += cross2(poly[i], poly[(i + 1) % poly.size()]);
  return s;
}

template <class T>
T polygon_area(const PlanePolygon<T>& p) {
  return abs_of(T(signed_area2(p.vertices_2d) / T(2)));
}

/// Area centroid in plane coordinates (vertex average for degenerate polygons).
template <class T>
Vec<T> polygon_centroid_2d(const std::vector<Vec<T>>& poly) {
  T a2 = signed_area2(poly);
  if (poly.size() < 3 || sign_of(a2, 0.0) == 0) {
    Vec<T> c(2);
    for (const auto& q : poly) c += q;
    return c / T(static_cast<long>(poly.size()));
  }
  Vec<T> c(2);
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto& p = poly[i];
    const auto& q = poly[(i + 1) % poly.size()];
    T w = cross2(p, q);
    c[0] += (p[0] + q[0]) * w;
    c[1] += (p[1] + q[1]) * w;
  }
  return c / T(3 * a2);
}

namespace detail {

template <class T>
std::vector<Vec<T>> drop_repeats(std::vector<Vec<T>> poly, double band) {
  std::vector<Vec<T>> out;
  for (auto& p : poly)
    if (out.empty() || !approx_equal(out.back(), p, band)) out.push_back(std::move(p));
  while (out.size() > 1 && approx_equal(out.front(), out.back(), band)) out.pop_back();
  // Remove collinear middle vertices.
  bool changed = true;
  while (changed && out.size() >= 3) {
    changed = false;
    for (std::size_t i = 0; i < out.size(); ++i) {
      const auto& a = out[(i + out.size() - 1) % out.size()];
      const auto& b = out[i];
      const auto& c = out[(i + 1) % out.size()];
      if (sign_of(cross2(Vec<T>(b - a), Vec<T>(c - b)), band * band) == 0) {
        out.erase(out.begin() + static_cast<long>(i));
        changed = true;
        break;
      }
    }
  }
  return out;
}

template <class T>
std::vector<Vec<T>> ensure_ccw(std::vector<Vec<T>> poly) {
  if (poly.size() >= 3 && sign_of(signed_area2(poly), 0.0) < 0) std::reverse(poly.begin(), poly.end());
  return poly;
}

}  // namespace detail

/// Builds a polygon from 2D points (any order); keeps the convex hull, counterclockwise.
template <class T>
PlanePolygon<T> make_polygon(Vec<T> origin, Vec<T> u, Vec<T> v, std::vector<Vec<T>> pts,
                             double band = 0) {
  // Monotone chain.
  std::sort(pts.begin(), pts.end());
  std::vector<Vec<T>> hull;
  if (pts.size() <= 2) {
    hull = pts;
  } else {
    std::vector<Vec<T>> h(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      while (k >= 2 && sign_of(cross2(Vec<T>(h[k - 1] - h[k - 2]), Vec<T>(pts[i] - h[k - 2])), band) <= 0) --k;
      h[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
      while (k >= t && sign_of(cross2(Vec<T>(h[k - 1] - h[k - 2]), Vec<T>(pts[i] - h[k - 2])), band) <= 0) --k;
      h[k++] = pts[i];
    }
    h.resize(k - 1);
    hull = std::move(h);
  }
  return {std::move(origin), std::move(u), std::move(v), detail::drop_repeats(std::move(hull), band)};
}

enum class PointLocation { outside, boundary, interior };

/// Location of a plane-coordinate point relative to a convex polygon; `margin`
/// is the required distance-like slack for "interior" in floating mode.
template <class T>
PointLocation locate(const PlanePolygon<T>& poly, const Vec<T>& q, double margin = 0) {
  const auto& p = poly.vertices_2d;
  if (p.size() < 3) return PointLocation::outside;
  bool on_edge = false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& a = p[i];
    const auto& b = p[(i + 1) % p.size()];
    Vec<T> e = b - a;
    T s = cross2(e, Vec<T>(q - a));
    double band = 0;
    if constexpr (!is_exact_v<T>) band = margin * norm2(e);
    int sg = sign_of(s, band);
    if (sg < 0) return PointLocation::outside;
    if (sg == 0) on_edge = true;
  }
  return on_edge ? PointLocation::boundary : PointLocation::interior;
}

/// v -> center + ratio (v - center). A zero ratio collapses to the centre (degenerate).
template <class T>
PlanePolygon<T> homothet(const PlanePolygon<T>& poly, const Vec<T>& center_2d, const T& ratio) {
  PlanePolygon<T> out{poly.origin, poly.u, poly.v, {}};
  if (sign_of(ratio, 0.0) == 0) {
    out.vertices_2d = {center_2d};
    return out;
  }
  for (const auto& q : poly.vertices_2d) out.vertices_2d.push_back(center_2d + ratio * (q - center_2d));
  out.vertices_2d = detail::ensure_ccw(std::move(out.vertices_2d));
  return out;
}

namespace detail {

// Clip subject by the closed half-plane left of a->b.
template <class T>
std::vector<Vec<T>> clip_halfplane(const std::vector<Vec<T>>& subject, const Vec<T>& a,
                                   const Vec<T>& b, double band) {
  std::vector<Vec<T>> out;
  if (subject.empty()) return out;
  Vec<T> e = b - a;
  auto side = [&](const Vec<T>& p) { return T(cross2(e, Vec<T>(p - a))); };
  for (std::size_t i = 0; i < subject.size(); ++i) {
    const auto& p = subject[i];
    const auto& q = subject[(i + 1) % subject.size()];
    T sp = side(p), sq = side(q);
    int gp = sign_of(sp, band), gq = sign_of(sq, band);
    if (gp >= 0) out.push_back(p);
    if ((gp > 0 && gq < 0) || (gp < 0 && gq > 0)) {
      T t = sp / (sp - sq);
      out.push_back(p + t * (q - p));
    }
  }
  return out;
}

template <class T>
bool same_frame(const PlanePolygon<T>& a, const PlanePolygon<T>& b, double band) {
  return approx_equal(a.origin, b.origin, band) && approx_equal(a.u, b.u, band) &&
         approx_equal(a.v, b.v, band);
}

// Re-expresses b's vertices in a's plane coordinates; nullopt if the planes differ.
template <class T>
std::optional<std::vector<Vec<T>>> reexpress(const PlanePolygon<T>& a, const PlanePolygon<T>& b,
                                             double band) {
  const std::size_t n = a.origin.dim();
  std::size_t r0 = n, r1 = n;
  for (std::size_t i = 0; i < n && r1 == n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      T det = a.u[i] * a.v[j] - a.u[j] * a.v[i];
      if (sign_of(det, band) != 0) {
        r0 = i;
        r1 = j;
        break;
      }
    }
  if (r1 == n) throw std::invalid_argument("polygon plane basis is degenerate");
  std::vector<Vec<T>> out;
  auto express = [&](const Vec<T>& p) -> std::optional<Vec<T>> {
    Vec<T> d = p - a.origin;
    Matrix<T> m{{a.u[r0], a.v[r0]}, {a.u[r1], a.v[r1]}};
    auto sol = solve_linear(m, Vec<T>{d[r0], d[r1]});
    if (sol.singular) return std::nullopt;
    if (!approx_equal(a.to_ambient(sol.x), p, band)) return std::nullopt;
    return sol.x;
  };
  for (const auto& q : b.vertices_2d) {
    auto e = express(b.to_ambient(q));
    if (!e) return std::nullopt;
    out.push_back(*e);
  }
  return out;
}

}  // namespace detail

enum class IntersectionKind { empty, point, segment, area };

template <class T>
struct PolygonIntersection {
  IntersectionKind kind = IntersectionKind::empty;
  PlanePolygon<T> polygon;
  bool empty() const { return kind == IntersectionKind::empty; }
};

/// Intersection of convex polygons lying in one common plane (expressed in the
/// first polygon's frame).
template <class T>
PolygonIntersection<T> polygon_intersect(const std::vector<PlanePolygon<T>>& polys,
                                         double eq_tol = 1e-9) {
  if (polys.empty()) throw std::invalid_argument("polygon_intersect needs at least one polygon");
  double band = 0;
  if constexpr (!is_exact_v<T>) band = eq_tol;
  const auto& base = polys[0];
  std::vector<Vec<T>> current = base.vertices_2d;
  for (std::size_t k = 1; k < polys.size(); ++k) {
    std::vector<Vec<T>> clip;
    if (detail::same_frame(base, polys[k], band)) {
      clip = polys[k].vertices_2d;
    } else {
      auto re = detail::reexpress(base, polys[k], band);
      if (!re) throw std::invalid_argument("polygon_intersect: polygons are not coplanar");
      clip = detail::ensure_ccw(std::move(*re));
    }
    if (clip.size() == 1) {
      // Point clip: keep it iff it lies in the current region.
      PlanePolygon<T> tmp{base.origin, base.u, base.v, current};
      if (current.size() >= 3 && locate(tmp, clip[0]) != PointLocation::outside)
        current = clip;
      else if (current.size() < 3 && !current.empty() && approx_equal(current[0], clip[0], band))
        current = clip;
      else
        current.clear();
      continue;
    }
    if (clip.size() == 2) {
      // Segment clip: the supporting line, then the two end caps.
      const Vec<T>& a = clip[0];
      const Vec<T>& b = clip[1];
      Vec<T> e = b - a;
      Vec<T> d{e[1], T(-e[0])};
      for (const auto& [p0, p1] : {std::pair{a, b}, std::pair{b, a}, std::pair{a, Vec<T>(a + d)},
                                   std::pair{b, Vec<T>(b - d)}}) {
        if (current.empty()) break;
        current = detail::clip_halfplane(current, p0, p1, band);
      }
    } else {
      for (std::size_t i = 0; i < clip.size() && !current.empty(); ++i)
        current = detail::clip_halfplane(current, clip[i], clip[(i + 1) % clip.size()], band);
    }
    current = detail::drop_repeats(std::move(current), band);
  }
  PolygonIntersection<T> res;
  res.polygon = {base.origin, base.u, base.v, current};
  if (current.empty())
    res.kind = IntersectionKind::empty;
  else if (current.size() == 1)
    res.kind = IntersectionKind::point;
  else if (current.size() == 2)
    res.kind = IntersectionKind::segment;
  else
    res.kind = IntersectionKind::area;
  return res;
}

}  // namespace mlab
