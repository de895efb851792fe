#pragma once

#include <string>

#include "midpoint_lab/constructions/candidate.hpp"
#include "midpoint_lab/norms/operations.hpp"
#include "midpoint_lab/polytope/polygon.hpp"
#include "midpoint_lab/verify/certify.hpp"

namespace mlab {

struct FaceConstruction {
  MSetCandidate candidate;
  std::vector<VecQ> base_points;  // before the outward shift
  std::optional<VecQ> anchor;     // c, when −3c is added
  VecQ push_center;               // centroid of the face
  Rational delta;                 // outward shift factor actually used
  // Planar data for 2-faces.
  std::optional<PlanePolygon<Rational>> face_polygon;
  std::vector<PlanePolygon<Rational>> homothets;
  std::optional<PolygonIntersection<Rational>> helly_region;
};

namespace detail {

inline std::vector<VecQ> face_points(const Polytope<Rational>& P, const Face& f) {
  std::vector<VecQ> pts;
  for (auto i : f.vertex_indices) pts.push_back(P.vertices[i]);
  return pts;
}

// Faces of dimension dim(f) − 1 contained in f.
inline std::vector<Face> subfacets(const Polytope<Rational>& P, const Face& f) {
  std::vector<Face> out;
  if (f.dim < 1 || !P.has_lattice()) return out;
  for (const auto& g : P.faces[f.dim - 1])
    if (std::includes(f.vertex_indices.begin(), f.vertex_indices.end(), g.vertex_indices.begin(),
                      g.vertex_indices.end()))
      out.push_back(g);
  return out;
}

inline void require_face(const Polytope<Rational>& P, const Face& f) {
  if (f.dim < 0 || static_cast<std::size_t>(f.dim) >= P.faces.size())
    throw std::invalid_argument("face is not part of the unit-ball face lattice");
  const auto& level = P.faces[f.dim];
  if (std::find(level.begin(), level.end(), f) == level.end())
    throw std::invalid_argument("face is not part of the unit-ball face lattice");
  if (f.dim >= P.dim) throw std::invalid_argument("face must be a proper face of the unit ball");
}

// Largest dyadic δ in (0, δ_max] (binary search) for which base + δ(base − g)
// together with the fixed points certifies exactly; the returned δ is half of it.
inline std::pair<Rational, std::vector<VecQ>> push_outward(const NormOracle& norm,
                                                           const std::vector<VecQ>& base,
                                                           const std::vector<VecQ>& fixed,
                                                           const VecQ& g, const Rational& delta_max,
                                                           int steps = 30) {
  auto build = [&](const Rational& d) {
    std::vector<VecQ> pts;
    for (const auto& b : base) pts.push_back(b + d * (b - g));
    for (const auto& f : fixed) pts.push_back(f);
    return pts;
  };
  auto feasible = [&](const Rational& d) { return certify_mset_exact(norm, build(d)).certified(); };
  Rational lo = 0, hi = delta_max;
  if (feasible(hi)) {
    lo = hi;
  } else {
    for (int i = 0; i < steps; ++i) {
      Rational mid = (lo + hi) / 2;
      (feasible(mid) ? lo : hi) = mid;
    }
  }
  if (sgn(lo) == 0) throw std::runtime_error("outward shift infeasible at the smallest step");
  Rational d = lo / 2;
  for (int i = 0; i < steps && !feasible(d); ++i) d /= 2;
  if (!feasible(d)) throw std::runtime_error("outward shift infeasible after halving");
  return {d, build(d)};
}

inline VecQ plane_coords(const VecQ& origin, const VecQ& u, const VecQ& v, const VecQ& p) {
  const std::size_t n = origin.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Rational det = u[i] * v[j] - u[j] * v[i];
      if (sgn(det) == 0) continue;
      VecQ d = p - origin;
      VecQ q{(d[i] * v[j] - d[j] * v[i]) / det, (u[i] * d[j] - u[j] * d[i]) / det};
      if (origin + q[0] * u + q[1] * v != p) throw std::invalid_argument("point is not in the face plane");
      return q;
    }
  throw std::invalid_argument("degenerate plane basis");
}

}  // namespace detail

/// Centroids of the facets of a proper face F of the unit ball, pushed outward
/// within aff F. Pairwise midpoints lie in relint F before the shift.
inline FaceConstruction mset_facet_centroids(const NormOracle& norm, const Face& face,
                                             const Rational& delta_max = Rational(1, 10)) {
  auto P = unit_ball(norm);
  detail::require_face(P, face);
  if (face.dim < 1) throw std::invalid_argument("mset_facet_centroids: face must have dimension >= 1");
  FaceConstruction out{make_candidate(std::vector<VecQ>{}, norm, {}, 0), {}, {}, {}, {}, {}, {}, {}};
  for (const auto& g : detail::subfacets(P, face)) out.base_points.push_back(face_centroid(P, g));
  out.push_center = face_centroid(P, face);
  auto [delta, pts] = detail::push_outward(norm, out.base_points, {}, out.push_center, delta_max);
  out.delta = delta;
  Provenance prov{"centroids", {{"face_dim", std::to_string(face.dim)},
                                {"facets", std::to_string(out.base_points.size())},
                                {"delta", format_rational(delta)}}};
  out.candidate = make_candidate(std::move(pts), norm, prov, 0);
  out.candidate.intended_excess = certify_mset_exact(norm, *out.candidate.exact_points).min_excess;
  return out;
}

/// Simplex facet with centroid c: the facet-centroid points plus −3c (d+1 points).
inline FaceConstruction mset_simplex_plus(const NormOracle& norm, const Face& facet,
                                          const Rational& delta_max = Rational(1, 10)) {
  auto P = unit_ball(norm);
  detail::require_face(P, facet);
  if (facet.dim != P.dim - 1) throw std::invalid_argument("mset_simplex_plus: face is not a facet");
  if (facet.vertex_indices.size() != static_cast<std::size_t>(P.dim))
    throw std::invalid_argument("mset_simplex_plus: facet is not a simplex; use mset_facet_centroids");
  FaceConstruction out{make_candidate(std::vector<VecQ>{}, norm, {}, 0), {}, {}, {}, {}, {}, {}, {}};
  for (const auto& g : detail::subfacets(P, facet)) out.base_points.push_back(face_centroid(P, g));
  out.push_center = face_centroid(P, facet);
  out.anchor = out.push_center;
  VecQ far = Rational(-3) * *out.anchor;
  auto [delta, pts] = detail::push_outward(norm, out.base_points, {far}, out.push_center, delta_max);
  out.delta = delta;
  Provenance prov{"simplexplus", {{"d", std::to_string(P.dim)}, {"delta", format_rational(delta)}}};
  out.candidate = make_candidate(std::move(pts), norm, prov, 0);
  out.candidate.intended_excess = certify_mset_exact(norm, *out.candidate.exact_points).min_excess;
  return out;
}

/// n+1 points from an n-gonal 2-face P of a 3-dimensional polytopal ball: edge
/// midpoints x_i, a point c common to the homothets of P with centres x_i and
/// ratio 2/3 (its region's centroid), and −3c; the x_i are then shifted out of P
/// within aff P.
inline FaceConstruction mset_from_face(const NormOracle& norm, const Face& face,
                                       const Rational& delta_max = Rational(1, 10)) {
  auto P = unit_ball(norm);
  if (P.dim != 3) throw std::invalid_argument("mset_from_face: unit ball must be 3-dimensional");
  detail::require_face(P, face);
  if (face.dim != 2) throw std::invalid_argument("mset_from_face: face must be a 2-face");
  FaceConstruction out{make_candidate(std::vector<VecQ>{}, norm, {}, 0), {}, {}, {}, {}, {}, {}, {}};
  auto verts = detail::face_points(P, face);
  // Plane frame from three affinely independent face vertices.
  auto basis = affine_basis_indices(verts);
  const VecQ origin = verts[basis[0]];
  const VecQ u = verts[basis[1]] - origin, v = verts[basis[2]] - origin;
  std::vector<VecQ> v2;
  for (const auto& p : verts) v2.push_back(detail::plane_coords(origin, u, v, p));
  auto poly = make_polygon(origin, u, v, v2);
  out.face_polygon = poly;

  for (const auto& e : detail::subfacets(P, face)) out.base_points.push_back(face_centroid(P, e));
  for (const auto& x : out.base_points)
    out.homothets.push_back(homothet(poly, detail::plane_coords(origin, u, v, x), Rational(2, 3)));
  auto region = polygon_intersect(out.homothets);
  if (region.empty()) throw std::logic_error("mset_from_face: homothet intersection is empty");
  out.helly_region = region;
  VecQ c2 = polygon_centroid_2d(region.polygon.vertices_2d);
  out.anchor = poly.to_ambient(c2);
  out.push_center = face_centroid(P, face);
  VecQ far = Rational(-3) * *out.anchor;
  auto [delta, pts] = detail::push_outward(norm, out.base_points, {far}, out.push_center, delta_max);
  out.delta = delta;
  Provenance prov{"face", {{"n", std::to_string(out.base_points.size())}, {"delta", format_rational(delta)}}};
  out.candidate = make_candidate(std::move(pts), norm, prov, 0);
  out.candidate.intended_excess = certify_mset_exact(norm, *out.candidate.exact_points).min_excess;
  return out;
}

}  // namespace mlab
