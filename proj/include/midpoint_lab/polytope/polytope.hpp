#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "midpoint_lab/core/linalg.hpp"
#include "midpoint_lab/core/lp.hpp"

namespace mlab {

/// A face identified by the (sorted) indices of the polytope vertices it contains.
struct Face {
  int dim = -1;
  std::vector<std::size_t> vertex_indices;

  friend bool operator==(const Face&, const Face&) = default;
};

/// Supporting hyperplane {x : <normal, x> = offset} with all vertices on the <= side.
template <class T>
struct Facet {
  Vec<T> normal;
  T offset;
  std::vector<std::size_t> vertex_indices;
};

/// Convex polytope: extreme points, facets and (for dim <= 4) the full face lattice.
template <class T>
struct Polytope {
  int dim = -1;
  std::size_t ambient_dim = 0;
  std::vector<Vec<T>> vertices;
  std::vector<Facet<T>> facets;
  /// faces[k] lists the k-faces, k = 0..dim; faces[dim] is the polytope itself.
  /// Empty when dim > 4.
  std::vector<std::vector<Face>> faces;
  /// Index into the hull input of each vertex.
  std::vector<std::size_t> source_indices;

  bool has_lattice() const { return !faces.empty(); }
  std::size_t count(int k) const {
    return k >= 0 && static_cast<std::size_t>(k) < faces.size() ? faces[k].size() : 0;
  }
  /// Smallest face containing every listed vertex (the polytope itself if none smaller).
  Face smallest_face_containing(const std::vector<std::size_t>& vs) const {
    for (const auto& level : faces)
      for (const auto& f : level)
        if (std::includes(f.vertex_indices.begin(), f.vertex_indices.end(), vs.begin(), vs.end()))
          return f;
    return {};
  }
};

enum class HullMode { exact, floating };

namespace detail {

template <class T>
double point_band(const std::vector<Vec<T>>& pts, double eq_tol) {
  if constexpr (is_exact_v<T>) {
    return 0.0;
  } else {
    double scale = 1;
    for (const auto& p : pts) scale = std::max(scale, max_abs(p));
    return eq_tol * scale;
  }
}

template <class T>
struct LocalFacet {
  std::vector<std::size_t> on_plane;  // ids of every input point on the hyperplane
  std::vector<std::size_t> vertices;  // ids of the facet's extreme points
  std::vector<std::vector<std::size_t>> ridges;
  Vec<T> normal;  // in the local (projected) coordinates
  T offset;
};

template <class T>
struct LocalHull {
  int dim = -1;
  std::vector<std::size_t> cols;  // ambient coordinates used as local chart
  std::vector<std::size_t> vertices;
  std::vector<LocalFacet<T>> facets;
};

template <class T>
Vec<T> hyperplane_normal(const std::vector<Vec<T>>& dirs, double tol) {
  auto ns = nullspace(Matrix<T>::from_rows(dirs), tol);
  if (ns.empty()) throw std::logic_error("hyperplane through dependent points");
  Vec<T> n = ns.front();
  if constexpr (!is_exact_v<T>) n /= norm2(n);
  return n;
}

template <class T>
class GiftWrap {
 public:
  GiftWrap(const std::vector<Vec<T>>& q, const std::vector<std::size_t>& ids, double band,
           double tol)
      : q_(q), ids_(ids), band_(band), tol_(tol), k_(q.empty() ? 0 : q[0].dim()) {}

  // q_ is indexed in parallel with ids_.
  std::vector<std::pair<Vec<T>, T>> run() {
    std::vector<std::pair<Vec<T>, T>> planes;
    std::map<std::vector<std::size_t>, bool> seen;
    auto first = initial_facet();
    std::vector<std::pair<Vec<T>, T>> queue{first};
    seen[on_plane(first.first, first.second)] = true;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      auto [n, off] = queue[qi];
      planes.push_back(queue[qi]);
      auto on = on_plane(n, off);
      // Ridges are the facets of the facet, computed one dimension down.
      auto sub = sub_hull(on);
      for (const auto& ridge : sub.second) {
        auto next = neighbour(on, sub.first, ridge);
        auto key = on_plane(next.first, next.second);
        if (!seen.count(key)) {
          seen[key] = true;
          queue.push_back(next);
        }
      }
    }
    return planes;
  }

  std::vector<std::size_t> on_plane(const Vec<T>& n, const T& off) const {
    std::vector<std::size_t> on;
    for (std::size_t i = 0; i < q_.size(); ++i)
      if (sign_of(T(dot(n, q_[i]) - off), band_) == 0) on.push_back(i);
    return on;
  }

  // Set by the caller: computes (vertices, ridges) of the local point subset.
  std::function<std::pair<std::vector<std::size_t>, std::vector<std::vector<std::size_t>>>(
      const std::vector<std::size_t>&)>
      sub_hull;

 private:
  // Hyperplane through r0 + span(dirs) and p, oriented so ref_dir points inside.
  std::pair<Vec<T>, T> plane_through(const Vec<T>& r0, const std::vector<Vec<T>>& dirs,
                                     const Vec<T>& p, const Vec<T>& ref_dir) const {
    auto rows = dirs;
    rows.push_back(p - r0);
    Vec<T> n = hyperplane_normal(rows, tol_);
    if (sign_of(dot(n, ref_dir), 0.0) > 0) n = -n;
    T off = dot(n, r0);
    return {n, off};
  }

  std::pair<Vec<T>, T> rotate(const Vec<T>& r0, const std::vector<Vec<T>>& dirs,
                              const Vec<T>& ref_dir,
                              const std::vector<std::size_t>& excluded) const {
    std::vector<bool> skip(q_.size(), false);
    for (auto i : excluded) skip[i] = true;
    std::optional<std::pair<Vec<T>, T>> best;
    for (std::size_t i = 0; i < q_.size(); ++i) {
      if (skip[i]) continue;
      if (!best) {
        best = plane_through(r0, dirs, q_[i], ref_dir);
        continue;
      }
      if (sign_of(T(dot(best->first, q_[i]) - best->second), band_) > 0)
        best = plane_through(r0, dirs, q_[i], ref_dir);
    }
    if (!best) throw std::logic_error("gift wrapping found no pivot candidate");
    return *best;
  }

  std::pair<Vec<T>, T> initial_facet() const {
    Vec<T> n(k_);
    n[0] = T(-1);
    T lo = q_[0][0];
    for (const auto& p : q_)
      if (p[0] < lo) lo = p[0];
    T off = -lo;
    auto contact = on_plane(n, off);
    while (true) {
      std::vector<Vec<T>> cpts;
      for (auto i : contact) cpts.push_back(q_[i]);
      auto basis = affine_basis_indices(cpts, tol_);
      if (basis.size() == k_) return {n, off};
      const Vec<T>& r0 = cpts[basis[0]];
      std::vector<Vec<T>> dirs;
      for (std::size_t b = 1; b < basis.size(); ++b) dirs.push_back(cpts[basis[b]] - r0);
      Matrix<T> nm(1, k_);
      for (std::size_t j = 0; j < k_; ++j) nm(0, j) = n[j];
      for (const auto& cand : nullspace(nm, tol_)) {
        if (dirs.size() == k_ - 1) break;
        auto trial = dirs;
        trial.push_back(cand);
        if (rank(Matrix<T>::from_rows(trial), tol_) == trial.size()) dirs = std::move(trial);
      }
      Vec<T> ref = dirs.back();
      dirs.pop_back();
      auto plane = rotate(r0, dirs, ref, contact);
      n = plane.first;
      off = plane.second;
      contact = on_plane(n, off);
    }
  }

  std::pair<Vec<T>, T> neighbour(const std::vector<std::size_t>& facet_on,
                                 const std::vector<std::size_t>& facet_vertices,
                                 const std::vector<std::size_t>& ridge) const {
    std::vector<Vec<T>> rpts;
    for (auto i : ridge) rpts.push_back(q_[i]);
    auto basis = affine_basis_indices(rpts, tol_);
    const Vec<T>& r0 = rpts[basis[0]];
    std::vector<Vec<T>> dirs;
    for (std::size_t b = 1; b < basis.size(); ++b) dirs.push_back(rpts[basis[b]] - r0);
    std::size_t ref = facet_vertices.front();
    for (auto v : facet_vertices) {
      if (!std::binary_search(ridge.begin(), ridge.end(), v)) {
        ref = v;
        break;
      }
    }
    return rotate(r0, dirs, q_[ref] - r0, facet_on);
  }

  const std::vector<Vec<T>>& q_;
  const std::vector<std::size_t>& ids_;
  double band_, tol_;
  std::size_t k_;
};

// Hull of pts[ids] in its own affine hull. Returned ids refer to `pts`.
template <class T>
LocalHull<T> hull_rec(const std::vector<Vec<T>>& pts, std::vector<std::size_t> ids, double band,
                      double tol) {
  LocalHull<T> out;
  std::sort(ids.begin(), ids.end());
  std::vector<std::size_t> uniq;
  for (auto i : ids) {
    bool dup = false;
    for (auto j : uniq)
      if (approx_equal(pts[i], pts[j], band)) {
        dup = true;
        break;
      }
    if (!dup) uniq.push_back(i);
  }
  ids = std::move(uniq);
  if (ids.empty()) return out;
  const std::size_t amb = pts[ids[0]].dim();
  Matrix<T> diffs(ids.size() > 1 ? ids.size() - 1 : 1, amb);
  for (std::size_t r = 1; r < ids.size(); ++r)
    for (std::size_t j = 0; j < amb; ++j) diffs(r - 1, j) = pts[ids[r]][j] - pts[ids[0]][j];
  out.cols = ids.size() > 1 ? row_reduce(diffs, tol) : std::vector<std::size_t>{};
  const std::size_t k = out.cols.size();
  out.dim = static_cast<int>(k);

  std::vector<Vec<T>> q;
  for (auto id : ids) {
    Vec<T> v(k);
    for (std::size_t j = 0; j < k; ++j) v[j] = pts[id][out.cols[j]];
    q.push_back(std::move(v));
  }

  if (k == 0) {
    out.vertices = {ids[0]};
    return out;
  }
  if (k == 1) {
    std::size_t lo = 0, hi = 0;
    for (std::size_t i = 1; i < q.size(); ++i) {
      if (q[i][0] < q[lo][0]) lo = i;
      if (q[i][0] > q[hi][0]) hi = i;
    }
    out.vertices = {ids[lo], ids[hi]};
    std::sort(out.vertices.begin(), out.vertices.end());
    for (auto [idx, s] : {std::pair{lo, -1}, std::pair{hi, 1}}) {
      LocalFacet<T> f;
      f.normal = Vec<T>{T(s)};
      f.offset = T(s) * q[idx][0];
      f.on_plane = {ids[idx]};
      f.vertices = {ids[idx]};
      out.facets.push_back(std::move(f));
    }
    return out;
  }

  GiftWrap<T> wrap(q, ids, band, tol);
  std::map<std::vector<std::size_t>, LocalHull<T>> cache;
  auto sub = [&](const std::vector<std::size_t>& local) -> const LocalHull<T>& {
    auto it = cache.find(local);
    if (it != cache.end()) return it->second;
    std::vector<std::size_t> global;
    for (auto i : local) global.push_back(ids[i]);
    auto h = hull_rec(pts, global, band, tol);
    return cache.emplace(local, std::move(h)).first->second;
  };
  auto to_local = [&](const std::vector<std::size_t>& global) {
    std::vector<std::size_t> local;
    for (auto g : global)
      local.push_back(static_cast<std::size_t>(
          std::lower_bound(ids.begin(), ids.end(), g) - ids.begin()));
    return local;
  };
  wrap.sub_hull = [&](const std::vector<std::size_t>& local) {
    const auto& h = sub(local);
    std::vector<std::vector<std::size_t>> ridges;
    for (const auto& f : h.facets) ridges.push_back(to_local(f.vertices));
    return std::pair{to_local(h.vertices), ridges};
  };
  auto planes = wrap.run();
  std::set<std::size_t> verts;
  for (auto& [n, off] : planes) {
    LocalFacet<T> f;
    auto on = wrap.on_plane(n, off);
    const auto& h = sub(on);
    for (auto i : on) f.on_plane.push_back(ids[i]);
    f.vertices = h.vertices;
    for (const auto& r : h.facets) f.ridges.push_back(r.vertices);
    f.normal = n;
    f.offset = off;
    verts.insert(f.vertices.begin(), f.vertices.end());
    out.facets.push_back(std::move(f));
  }
  out.vertices.assign(verts.begin(), verts.end());
  return out;
}

inline std::vector<std::vector<Face>> build_lattice(
    int dim, std::size_t nverts, const std::vector<std::vector<std::size_t>>& facet_sets,
    const std::function<int(const std::vector<std::size_t>&)>& face_dim) {
  std::set<std::vector<std::size_t>> all;
  std::vector<std::vector<std::size_t>> queue;
  for (const auto& f : facet_sets)
    if (all.insert(f).second) queue.push_back(f);
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    for (const auto& f : facet_sets) {
      std::vector<std::size_t> meet;
      std::set_intersection(queue[qi].begin(), queue[qi].end(), f.begin(), f.end(),
                            std::back_inserter(meet));
      if (meet.empty() || meet == queue[qi]) continue;
      if (all.insert(meet).second) queue.push_back(meet);
    }
  }
  std::vector<std::vector<Face>> faces(dim + 1);
  std::vector<std::size_t> whole(nverts);
  for (std::size_t i = 0; i < nverts; ++i) whole[i] = i;
  all.insert(whole);
  for (const auto& s : all) {
    int d = s == whole ? dim : face_dim(s);
    if (d >= 0 && d <= dim) faces[d].push_back({d, s});
  }
  for (int d = 0; d <= dim; ++d) {
    std::sort(faces[d].begin(), faces[d].end(),
              [](const Face& a, const Face& b) { return a.vertex_indices < b.vertex_indices; });
  }
  return faces;
}

}  // namespace detail

/// Convex hull with extreme points, facets and, up to dimension 4, the face lattice.
///
/// T = Rational gives exact predicates; T = double uses eq_tol bands scaled by
/// the largest coordinate magnitude. Degenerate input (all points equal) yields
/// a 0-dimensional polytope.
template <class T>
Polytope<T> convex_hull(const std::vector<Vec<T>>& points, const ToleranceBudget& tol = {}) {
  if (points.empty()) throw std::invalid_argument("convex_hull needs at least one point");
  const std::size_t amb = points[0].dim();
  for (const auto& p : points)
    if (p.dim() != amb) throw std::invalid_argument("convex_hull: mixed dimensions");
  const double band = detail::point_band(points, tol.eq_tol);

  std::vector<std::size_t> ids(points.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
  auto local = detail::hull_rec(points, ids, band, tol.eq_tol);

  Polytope<T> P;
  P.dim = local.dim;
  P.ambient_dim = amb;
  std::map<std::size_t, std::size_t> index_of;
  for (auto id : local.vertices) {
    index_of[id] = P.vertices.size();
    P.vertices.push_back(points[id]);
    P.source_indices.push_back(id);
  }
  std::vector<std::vector<std::size_t>> facet_sets;
  for (const auto& lf : local.facets) {
    Facet<T> f;
    f.normal = Vec<T>(amb);
    for (std::size_t j = 0; j < local.cols.size(); ++j) f.normal[local.cols[j]] = lf.normal[j];
    f.offset = lf.offset;
    for (auto id : lf.vertices) f.vertex_indices.push_back(index_of.at(id));
    std::sort(f.vertex_indices.begin(), f.vertex_indices.end());
    facet_sets.push_back(f.vertex_indices);
    P.facets.push_back(std::move(f));
  }
  std::sort(P.facets.begin(), P.facets.end(), [](const Facet<T>& a, const Facet<T>& b) {
    return a.vertex_indices < b.vertex_indices;
  });
  if (P.dim <= 4) {
    auto face_dim = [&](const std::vector<std::size_t>& s) {
      std::vector<Vec<T>> pts;
      for (auto i : s) pts.push_back(P.vertices[i]);
      return affine_dimension(pts, tol.eq_tol);
    };
    P.faces = detail::build_lattice(P.dim, P.vertices.size(), facet_sets, face_dim);
  }
  return P;
}

/// Every 2-face with its polygon size n.
template <class T>
std::vector<std::pair<Face, std::size_t>> two_faces(const Polytope<T>& P) {
  std::vector<std::pair<Face, std::size_t>> out;
  if (P.dim < 2 || !P.has_lattice()) return out;
  for (const auto& f : P.faces[2]) out.emplace_back(f, f.vertex_indices.size());
  return out;
}

/// Edges (1-faces) as vertex index pairs.
template <class T>
std::vector<std::pair<std::size_t, std::size_t>> edges(const Polytope<T>& P) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  if (P.dim < 1 || !P.has_lattice()) return out;
  for (const auto& f : P.faces[1]) out.emplace_back(f.vertex_indices[0], f.vertex_indices[1]);
  return out;
}

/// Strict separation witness for points[index] against all other points:
/// returns y with <y, x> > <y, v> for every other v, or nothing if x is not extreme.
///
/// Solved as  max t  s.t.  <y, x - v> >= t,  -1 <= y <= 1,  t <= 1.
template <class T>
std::optional<Vec<T>> extreme_point_witness(const std::vector<Vec<T>>& points, std::size_t index,
                                            double eq_tol = 1e-9) {
  const Vec<T>& x = points.at(index);
  const std::size_t d = x.dim();
  std::vector<std::size_t> others;
  for (std::size_t i = 0; i < points.size(); ++i)
    if (i != index) others.push_back(i);
  if (others.empty()) return Vec<T>(d);
  // Columns: y+ (d), y- (d), t+, t-.
  const std::size_t nv = 2 * d + 2;
  const std::size_t m = others.size() + 2 * d + 1;
  Matrix<T> a(m, nv);
  Vec<T> b(m), c(nv);
  for (std::size_t r = 0; r < others.size(); ++r) {
    Vec<T> diff = x - points[others[r]];
    for (std::size_t j = 0; j < d; ++j) {
      a(r, j) = -diff[j];
      a(r, d + j) = diff[j];
    }
    a(r, 2 * d) = T(1);
    a(r, 2 * d + 1) = T(-1);
  }
  for (std::size_t j = 0; j < 2 * d; ++j) {
    a(others.size() + j, j) = T(1);
    b[others.size() + j] = T(1);
  }
  a(m - 1, 2 * d) = T(1);
  b[m - 1] = T(1);
  c[2 * d] = T(1);
  c[2 * d + 1] = T(-1);
  // Floating mode: the all-zero right-hand sides make the start vertex highly
  // degenerate, so they are perturbed slightly; the witness is then checked
  // directly against every other point.
  if constexpr (!is_exact_v<T>) {
    for (std::size_t r = 0; r < others.size(); ++r)
      b[r] = 1e-9 * (1.0 + static_cast<double>(r) / static_cast<double>(others.size()));
  }
  auto res = lp_maximize_leq(a, b, c);
  if (!res.ok()) return std::nullopt;
  Vec<T> y(d);
  for (std::size_t j = 0; j < d; ++j) y[j] = res.x[j] - res.x[d + j];
  double band = 0;
  if constexpr (!is_exact_v<T>) band = eq_tol;
  for (auto o : others)
    if (sign_of(T(dot(y, x) - dot(y, points[o])), band) <= 0) return std::nullopt;
  return y;
}

template <class T>
struct VertexVerdict {
  bool is_vertex = false;
  std::optional<Vec<T>> witness;
};

/// Is x an extreme point of P? The witness is a linear functional maximised over P
/// uniquely at x.
template <class T>
VertexVerdict<T> is_vertex(const Polytope<T>& P, const Vec<T>& x, const ToleranceBudget& tol = {}) {
  if (x.dim() != P.ambient_dim) throw std::invalid_argument("is_vertex: dimension mismatch");
  const double band = detail::point_band(P.vertices, tol.eq_tol);
  for (std::size_t i = 0; i < P.vertices.size(); ++i) {
    if (!approx_equal(P.vertices[i], x, band)) continue;
    auto w = extreme_point_witness(P.vertices, i, tol.eq_tol);
    return {w.has_value(), w};
  }
  return {};
}

/// True iff the vertex set is closed under negation.
template <class T>
bool is_centrally_symmetric(const Polytope<T>& P, const ToleranceBudget& tol = {}) {
  const double band = detail::point_band(P.vertices, tol.eq_tol);
  for (const auto& v : P.vertices) {
    Vec<T> neg = -v;
    bool found = false;
    for (const auto& w : P.vertices)
      if (approx_equal(neg, w, band)) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

template <class T>
Vec<T> centroid(const std::vector<Vec<T>>& pts) {
  if (pts.empty()) throw std::invalid_argument("centroid of empty set");
  Vec<T> c(pts[0].dim());
  for (const auto& p : pts) c += p;
  return c / T(static_cast<long>(pts.size()));
}

template <class T>
Vec<T> face_centroid(const Polytope<T>& P, const Face& f) {
  std::vector<Vec<T>> pts;
  for (auto i : f.vertex_indices) pts.push_back(P.vertices[i]);
  return centroid(pts);
}

}  // namespace mlab
