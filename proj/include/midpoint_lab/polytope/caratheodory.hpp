#pragma once

#include <stdexcept>
#include <vector>

#include "midpoint_lab/polytope/polytope.hpp"

namespace mlab {

/// Raised when a point expected in the relative interior of a hull is not there.
/// `witness_normal`/`witness_offset` describe a functional with <n, y> >= offset
/// while <n, r> <= offset on the whole set.
class NotInRelativeInterior : public std::invalid_argument {
 public:
  NotInRelativeInterior(const std::string& what, std::vector<double> normal, double offset)
      : std::invalid_argument(what), witness_normal(std::move(normal)), witness_offset(offset) {}
  std::vector<double> witness_normal;
  double witness_offset;
};

/// Barycentric weights of y over pts (all >= 0, summing to 1), or nullopt if y
/// is outside conv(pts).
template <class T>
std::optional<Vec<T>> barycentric_weights(const std::vector<Vec<T>>& pts, const Vec<T>& y) {
  const std::size_t n = pts.size(), d = y.dim();
  Matrix<T> a(d + 1, n);
  Vec<T> b(d + 1), c(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < d; ++i) a(i, j) = pts[j][i];
    a(d, j) = T(1);
  }
  for (std::size_t i = 0; i < d; ++i) b[i] = y[i];
  b[d] = T(1);
  auto r = lp_maximize_eq(a, b, c);
  if (!r.ok()) return std::nullopt;
  return r.x;
}

/// Weights over an affinely independent set (exact solve of the affine system).
template <class T>
std::optional<Vec<T>> affine_coordinates(const std::vector<Vec<T>>& simplex, const Vec<T>& y,
                                         double tol = 1e-9) {
  const std::size_t n = simplex.size(), d = y.dim();
  Matrix<T> a(d + 1, n);
  Vec<T> b(d + 1);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < d; ++i) a(i, j) = simplex[j][i];
    a(d, j) = T(1);
  }
  for (std::size_t i = 0; i < d; ++i) b[i] = y[i];
  b[d] = T(1);
  // Normal equations would lose exactness; reduce the augmented system instead.
  Matrix<T> aug(d + 1, n + 1);
  for (std::size_t i = 0; i <= d; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
  }
  auto piv = row_reduce(aug, tol);
  if (!piv.empty() && piv.back() == n) return std::nullopt;  // inconsistent
  if (piv.size() != n) return std::nullopt;                   // not independent
  Vec<T> w(n);
  for (std::size_t r = 0; r < piv.size(); ++r) w[piv[r]] = aug(r, n);
  return w;
}

namespace detail {

// Carathéodory reduction: shrink a convex combination to an affinely independent support.
template <class T>
std::vector<std::size_t> caratheodory_reduce(const std::vector<Vec<T>>& pts, Vec<T> w,
                                             double band, double tol) {
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (sign_of(w[i], band) > 0) support.push_back(i);
  for (;;) {
    const std::size_t d = pts[0].dim();
    Matrix<T> m(d + 1, support.size());
    for (std::size_t j = 0; j < support.size(); ++j) {
      for (std::size_t i = 0; i < d; ++i) m(i, j) = pts[support[j]][i];
      m(d, j) = T(1);
    }
    auto ns = nullspace(m, tol);
    if (ns.empty()) return support;
    Vec<T> mu = ns.front();
    // Some entry is positive since the entries sum to zero.
    bool any_pos = false;
    for (std::size_t j = 0; j < mu.dim(); ++j) any_pos = any_pos || sign_of(mu[j], 0.0) > 0;
    if (!any_pos) mu = -mu;
    std::optional<T> alpha;
    std::size_t jmin = 0;
    for (std::size_t j = 0; j < support.size(); ++j) {
      if (sign_of(mu[j], 0.0) <= 0) continue;
      T r = w[support[j]] / mu[j];
      if (!alpha || r < *alpha) {
        alpha = r;
        jmin = j;
      }
    }
    std::vector<std::size_t> next;
    for (std::size_t j = 0; j < support.size(); ++j) {
      w[support[j]] -= *alpha * mu[j];
      if (j != jmin && sign_of(w[support[j]], band) > 0) next.push_back(support[j]);
    }
    support = std::move(next);
  }
}

}  // namespace detail

/// Given y in relint conv R and x in R, returns an affinely independent S ⊆ R with
/// x ∈ S, |S| <= dim + 1 and y ∈ relint conv S. x comes first in the output.
///
/// If x != y the ray from x through y is followed to the boundary point y' of
/// conv R; the smallest face containing y' is reduced by Carathéodory and x added.
template <class T>
std::vector<Vec<T>> caratheodory_anchor(const std::vector<Vec<T>>& R, const Vec<T>& y,
                                        const Vec<T>& x, const ToleranceBudget& tol = {}) {
  if (R.empty()) throw std::invalid_argument("caratheodory_anchor: empty point set");
  const double band = detail::point_band(R, tol.eq_tol);
  bool x_in_r = false;
  for (const auto& r : R) x_in_r = x_in_r || approx_equal(r, x, band);
  if (!x_in_r) throw std::invalid_argument("caratheodory_anchor: x must belong to R");

  auto P = convex_hull(R, tol);
  auto with_y = R;
  with_y.push_back(y);
  if (affine_dimension(with_y, tol.eq_tol) != P.dim) {
    throw NotInRelativeInterior("y is outside the affine hull of R", {}, 0.0);
  }
  // Relint: strictly inside every relative facet.
  const double margin = is_exact_v<T> ? 0.0 : tol.strict_margin;
  for (const auto& f : P.facets) {
    T slack = f.offset - dot(f.normal, y);
    if (sign_of(slack, margin) <= 0) {
      std::vector<double> n;
      for (const auto& c : f.normal) n.push_back(to_double(c));
      throw NotInRelativeInterior("y is not in the relative interior of conv R", n,
                                  to_double(f.offset));
    }
  }
  if (approx_equal(x, y, band)) return {x};

  Vec<T> dir = y - x;
  std::optional<T> tmin;
  for (const auto& f : P.facets) {
    T rate = dot(f.normal, dir);
    if (sign_of(rate, band) <= 0) continue;
    T t = (f.offset - dot(f.normal, x)) / rate;
    if (!tmin || t < *tmin) tmin = t;
  }
  if (!tmin) throw std::logic_error("caratheodory_anchor: ray does not leave the hull");
  Vec<T> exit = x + *tmin * dir;

  // Smallest face containing the exit point: intersection of its tight facets.
  std::vector<std::size_t> face;
  bool first = true;
  for (const auto& f : P.facets) {
    if (sign_of(T(dot(f.normal, exit) - f.offset), band) != 0) continue;
    if (first) {
      face = f.vertex_indices;
      first = false;
    } else {
      std::vector<std::size_t> meet;
      std::set_intersection(face.begin(), face.end(), f.vertex_indices.begin(),
                            f.vertex_indices.end(), std::back_inserter(meet));
      face = std::move(meet);
    }
  }
  std::vector<Vec<T>> fpts;
  for (auto i : face) fpts.push_back(P.vertices[i]);
  auto w = barycentric_weights(fpts, exit);
  if (!w) throw std::logic_error("caratheodory_anchor: exit point not in its face");
  auto support = detail::caratheodory_reduce(fpts, *w, band, tol.eq_tol);

  std::vector<Vec<T>> S{x};
  for (auto i : support) S.push_back(fpts[i]);
  return S;
}

}  // namespace mlab
