#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "midpoint_lab/core/random.hpp"
#include "midpoint_lab/norms/norm_oracle.hpp"
#include "midpoint_lab/polytope/polytope.hpp"

namespace mlab {

struct FlatSpotResult {
  bool ok = false;
  std::size_t samples = 0;
  double max_deviation = 0;      // max |gauge - 1| over the samples
  std::optional<VecD> witness;   // first sample off the sphere
  explicit operator bool() const { return ok; }
};

/// Samples conv S (33x33 barycentric grids on the triangles through S[0], plus
/// 1000 Dirichlet points) and checks that every sample is a unit vector.
///
/// Throws std::invalid_argument unless every point of S and y is unit within
/// eq_tol and y lies in the relative interior of conv S, with all facet slacks
/// at least strict_margin.
inline FlatSpotResult flat_spot_check(const NormOracle& norm, const std::vector<VecD>& S, const VecD& y,
                                      const ToleranceBudget& tol = {}, std::uint64_t seed = 1) {
  if (S.empty()) throw std::invalid_argument("flat_spot_check: S is empty");
  for (const auto& s : S) {
    if (s.dim() != norm.dim()) throw std::invalid_argument("flat_spot_check: dimension mismatch");
    if (std::fabs(norm.gauge(s) - 1) > tol.eq_tol) throw std::invalid_argument("flat_spot_check: S contains a non-unit point");
  }
  if (std::fabs(norm.gauge(y) - 1) > tol.eq_tol) throw std::invalid_argument("flat_spot_check: y is not a unit vector");
  auto hull = convex_hull(S, tol);
  auto with_y = S;
  with_y.push_back(y);
  if (affine_dimension(with_y, tol.eq_tol) != hull.dim)
    throw std::invalid_argument("flat_spot_check: y is outside the affine hull of S");
  if (hull.dim == 0) {
    if (!approx_equal(y, S[0], tol.eq_tol)) throw std::invalid_argument("flat_spot_check: y differs from S");
  } else {
    for (const auto& f : hull.facets)
      if (f.offset - dot(f.normal, y) < tol.strict_margin)
        throw std::invalid_argument("flat_spot_check: y is not in the relative interior of conv S");
  }

  FlatSpotResult r;
  r.ok = true;
  auto probe = [&](const VecD& p) {
    ++r.samples;
    const double dev = std::fabs(norm.gauge(p) - 1);
    r.max_deviation = std::max(r.max_deviation, dev);
    if (dev > tol.eq_tol && r.ok) {
      r.ok = false;
      r.witness = p;
    }
  };
  const auto& V = hull.vertices;
  constexpr int grid = 33;
  if (V.size() == 2) {
    for (int a = 0; a < grid; ++a) {
      const double t = a / double(grid - 1);
      probe((1 - t) * V[0] + t * V[1]);
    }
  }
  for (std::size_t i = 1; i < V.size(); ++i)
    for (std::size_t j = i + 1; j < V.size(); ++j)
      for (int a = 0; a < grid; ++a)
        for (int b = 0; a + b < grid; ++b) {
          const double u = a / double(grid - 1), v = b / double(grid - 1);
          probe((1 - u - v) * V[0] + u * V[i] + v * V[j]);
        }
  Rng rng(seed);
  for (int k = 0; k < 1000; ++k) {
    VecD p(y.dim());
    double total = 0;
    for (const auto& s : V) {
      double u = 0;
      while (u <= 0) u = rng.uniform();
      const double e = -std::log(u);
      p += e * s;
      total += e;
    }
    probe(p / total);
  }
  return r;
}

enum class PolytopeClass { prism, pyramid, not_2AN, other, low_dim, high_dim };

inline std::string to_string(PolytopeClass c) {
  switch (c) {
    case PolytopeClass::prism: return "prism";
    case PolytopeClass::pyramid: return "pyramid";
    case PolytopeClass::not_2AN: return "not_2AN";
    case PolytopeClass::other: return "other";
    case PolytopeClass::low_dim: return "low_dim";
    case PolytopeClass::high_dim: return "high_dim";
  }
  return "?";
}

struct Classification {
  PolytopeClass cls = PolytopeClass::not_2AN;
  std::optional<std::pair<std::size_t, std::size_t>> separated_pair;  // not_2AN witness
  std::optional<std::size_t> apex;                                    // pyramid
  std::string detail;
};

namespace detail {

template <class T>
bool share_facet(const Polytope<T>& P, std::size_t a, std::size_t b) {
  for (const auto& f : P.facets) {
    const auto& v = f.vertex_indices;
    if (std::binary_search(v.begin(), v.end(), a) && std::binary_search(v.begin(), v.end(), b)) return true;
  }
  return false;
}

template <class T>
bool contains(const Facet<T>& f, std::size_t v) {
  return std::binary_search(f.vertex_indices.begin(), f.vertex_indices.end(), v);
}

}  // namespace detail

/// Combinatorial type of a 3-polytope whose vertex pairs all lie on common
/// facets: triangular prism or pyramid. Any other such polytope is reported as
/// `other`, which the prism/pyramid classification rules out.
template <class T>
Classification classify_2an(const Polytope<T>& P) {
  if (P.dim != 3) throw std::invalid_argument("classify_2an: polytope must be 3-dimensional");
  const std::size_t n = P.vertices.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (!detail::share_facet(P, a, b)) return {PolytopeClass::not_2AN, std::pair{a, b}, {}, ""};

  // Pyramid: an apex lying on every facet but one, those facets all triangles.
  for (std::size_t a = 0; a < n; ++a) {
    std::size_t bases = 0;
    bool ok = true;
    for (const auto& f : P.facets) {
      if (!detail::contains(f, a)) {
        ++bases;
        ok = ok && f.vertex_indices.size() + 1 == n;
      } else {
        ok = ok && f.vertex_indices.size() == 3;
      }
    }
    if (ok && bases == 1) return {PolytopeClass::pyramid, {}, a, "apex over a " + std::to_string(n - 1) + "-gon"};
  }
  // Triangular prism: two disjoint triangles and three quadrilaterals.
  if (n == 6 && P.facets.size() == 5) {
    std::vector<const Facet<T>*> tri;
    std::size_t quads = 0;
    for (const auto& f : P.facets) {
      if (f.vertex_indices.size() == 3) tri.push_back(&f);
      if (f.vertex_indices.size() == 4) ++quads;
    }
    if (tri.size() == 2 && quads == 3) {
      bool disjoint = true;
      for (auto v : tri[0]->vertex_indices) disjoint = disjoint && !detail::contains(*tri[1], v);
      if (disjoint) return {PolytopeClass::prism, {}, {}, "triangular prism"};
    }
  }
  return {PolytopeClass::other, {}, {},
          "2-almost-neighbourly polytope with " + std::to_string(n) + " vertices and " +
              std::to_string(P.facets.size()) + " facets is neither prism nor pyramid"};
}

enum class PairKind { edge, boundary_non_edge, interior };

inline std::string to_string(PairKind k) {
  switch (k) {
    case PairKind::edge: return "edge";
    case PairKind::boundary_non_edge: return "boundary_non_edge";
    case PairKind::interior: return "interior";
  }
  return "?";
}

struct PairClass {
  std::size_t i = 0, j = 0;  // input indices
  PairKind kind = PairKind::interior;
  int face_dim = -1;                // dimension of the smallest face holding both
  std::vector<std::size_t> face;    // its vertices, as input indices
};

struct FlatSpot {
  std::size_t i = 0, j = 0;
  int face_dim = 0;
  std::vector<VecD> midpoints;  // the set whose hull is sampled
  VecD center;
  FlatSpotResult check;
  std::string error;            // precondition failure, if any
};

template <class T>
struct StructureReport {
  Polytope<T> hull;
  bool convex_position = false;
  std::vector<std::size_t> non_vertices;  // inputs that are not hull vertices
  std::vector<PairClass> pairs;
  std::vector<FlatSpot> flat_spots;
  Classification polytope_class;
};

/// Hull structure of a point set: convex position, the smallest face holding
/// each pair, flat-spot checks for pairs inside faces of dimension >= 2, and the
/// prism/pyramid classification of 3-dimensional hulls.
///
/// For a pair x, y inside a face with vertex set Q, the sampled set is
/// {(x+z)/2 : z in Q, z != x} ∪ {(y+z)/2 : z in Q, z != y}; its hull is
/// (conv{x,y} + conv Q)/2, which holds (x+y)/2 in its relative interior.
template <class T>
StructureReport<T> structure_report(const NormOracle& norm, const std::vector<Vec<T>>& points,
                                    const ToleranceBudget& tol = {}) {
  if (points.size() < 2) throw std::invalid_argument("structure_report needs at least two points");
  StructureReport<T> rep;
  rep.hull = convex_hull(points, tol);
  const auto& P = rep.hull;
  std::vector<std::optional<std::size_t>> vertex_of(points.size());
  for (std::size_t v = 0; v < P.source_indices.size(); ++v) vertex_of[P.source_indices[v]] = v;
  for (std::size_t i = 0; i < points.size(); ++i)
    if (!vertex_of[i]) rep.non_vertices.push_back(i);
  rep.convex_position = rep.non_vertices.empty();

  const auto pd = vec_cast<double>(points);
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      PairClass pc{i, j, PairKind::interior, P.dim, {}};
      if (vertex_of[i] && vertex_of[j]) {
        // Smallest face: the vertices on every facet through both.
        std::vector<std::size_t> common;
        bool first = true;
        for (const auto& f : P.facets) {
          if (!detail::contains(f, *vertex_of[i]) || !detail::contains(f, *vertex_of[j])) continue;
          if (first) {
            common = f.vertex_indices;
            first = false;
          } else {
            std::vector<std::size_t> keep;
            std::set_intersection(common.begin(), common.end(), f.vertex_indices.begin(), f.vertex_indices.end(),
                                  std::back_inserter(keep));
            common = std::move(keep);
          }
        }
        if (first) {
          for (std::size_t v = 0; v < P.vertices.size(); ++v) common.push_back(v);
          pc.face_dim = P.dim;
        } else {
          std::vector<Vec<T>> fv;
          for (auto v : common) fv.push_back(P.vertices[v]);
          pc.face_dim = affine_dimension(fv, tol.eq_tol);
        }
        for (auto v : common) pc.face.push_back(P.source_indices[v]);
        if (pc.face_dim == 1) pc.kind = PairKind::edge;
        else if (!first) pc.kind = PairKind::boundary_non_edge;
      }
      rep.pairs.push_back(pc);
      if (pc.kind != PairKind::boundary_non_edge || pc.face_dim < 2) continue;

      FlatSpot fs{i, j, pc.face_dim, {}, 0.5 * (pd[i] + pd[j]), {}, ""};
      for (auto z : pc.face) {
        if (z != i) fs.midpoints.push_back(0.5 * (pd[i] + pd[z]));
        if (z != j && z != i) fs.midpoints.push_back(0.5 * (pd[j] + pd[z]));
      }
      try {
        fs.check = flat_spot_check(norm, fs.midpoints, fs.center, tol);
      } catch (const std::invalid_argument& e) {
        fs.error = e.what();
      }
      rep.flat_spots.push_back(std::move(fs));
    }

  if (P.dim < 3) rep.polytope_class.cls = PolytopeClass::low_dim;
  else if (P.dim > 3) rep.polytope_class.cls = PolytopeClass::high_dim;
  else rep.polytope_class = classify_2an(P);
  return rep;
}

}  // namespace mlab
