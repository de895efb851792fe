#pragma once

#include <algorithm>
#include <vector>

#include "midpoint_lab/core/vector.hpp"

namespace mlab {

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

template <class T>
struct LpResult {
  LpStatus status = LpStatus::infeasible;
  T value = T(0);
  Vec<T> x;
  bool ok() const { return status == LpStatus::optimal; }
};

namespace detail {

// Dense tableau simplex with Bland's rule. Exact for Rational; `band` is the
// zero threshold in floating mode.
template <class T>
class Tableau {
 public:
  Tableau(Matrix<T> body, std::vector<std::size_t> basis, double band)
      : t_(std::move(body)), basis_(std::move(basis)), band_(band) {}

  void set_objective(const std::vector<T>& c) {
    const std::size_t n = t_.cols() - 1;
    z_ = std::vector<T>(n + 1, T(0));
    for (std::size_t j = 0; j <= n; ++j) {
      T s(0);
      for (std::size_t i = 0; i < t_.rows(); ++i) s += c[basis_[i]] * t_(i, j);
      z_[j] = j < n ? T(s - c[j]) : s;
    }
  }

  LpStatus run(std::size_t allowed_cols, std::size_t max_iter) {
    const std::size_t n = t_.cols() - 1;
    for (std::size_t it = 0; it < max_iter; ++it) {
      std::size_t enter = n;
      for (std::size_t j = 0; j < allowed_cols; ++j) {
        if (sign_of(z_[j], band_) < 0) {
          enter = j;
          break;
        }
      }
      if (enter == n) return LpStatus::optimal;
      std::size_t leave = t_.rows();
      T best_ratio(0);
      for (std::size_t i = 0; i < t_.rows(); ++i) {
        if (sign_of(t_(i, enter), band_) <= 0) continue;
        T ratio = t_(i, n) / t_(i, enter);
        if (leave == t_.rows() || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave == t_.rows()) return LpStatus::unbounded;
      pivot(leave, enter);
    }
    return LpStatus::iteration_limit;
  }

  void pivot(std::size_t r, std::size_t s) {
    const std::size_t w = t_.cols();
    T p = t_(r, s);
    for (std::size_t j = 0; j < w; ++j) t_(r, j) /= p;
    for (std::size_t i = 0; i < t_.rows(); ++i) {
      if (i == r) continue;
      T f = t_(i, s);
      if (sign_of(f, 0.0) == 0) continue;
      for (std::size_t j = 0; j < w; ++j) t_(i, j) -= f * t_(r, j);
    }
    T f = z_[s];
    if (sign_of(f, 0.0) != 0)
      for (std::size_t j = 0; j < w; ++j) z_[j] -= f * t_(r, j);
    basis_[r] = s;
  }

  Matrix<T>& body() { return t_; }
  std::vector<std::size_t>& basis() { return basis_; }
  const T& value() const { return z_.back(); }

  Vec<T> solution(std::size_t n) const {
    Vec<T> x(n);
    for (std::size_t i = 0; i < t_.rows(); ++i)
      if (basis_[i] < n) x[basis_[i]] = t_(i, t_.cols() - 1);
    return x;
  }

 private:
  Matrix<T> t_;
  std::vector<std::size_t> basis_;
  std::vector<T> z_;
  double band_;
};

template <class T>
double lp_band(const Matrix<T>& a, double tol) {
  if constexpr (is_exact_v<T>) {
    return 0.0;
  } else {
    double scale = 1;
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) scale = std::max(scale, std::fabs(a(i, j)));
    return tol * scale;
  }
}

}  // namespace detail

/// maximize c.x subject to A x = b, x >= 0 (two-phase simplex).
template <class T>
LpResult<T> lp_maximize_eq(const Matrix<T>& a, const Vec<T>& b, const Vec<T>& c,
                           double tol = 1e-11) {
  const std::size_t m = a.rows(), n = a.cols();
  if (b.dim() != m || c.dim() != n) throw std::invalid_argument("LP dimension mismatch");
  const double band = detail::lp_band(a, tol);
  const std::size_t max_iter = 50 * (m + n + 10);

  // Phase 1 over [A | I | b] with rows flipped so that b >= 0.
  Matrix<T> body(m, n + m + 1);
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    const bool flip = sign_of(b[i], 0.0) < 0;
    for (std::size_t j = 0; j < n; ++j) body(i, j) = flip ? T(-a(i, j)) : a(i, j);
    body(i, n + i) = T(1);
    body(i, n + m) = flip ? T(-b[i]) : b[i];
    basis[i] = n + i;
  }
  detail::Tableau<T> tab(std::move(body), std::move(basis), band);
  std::vector<T> c1(n + m, T(0));
  for (std::size_t i = 0; i < m; ++i) c1[n + i] = T(-1);
  tab.set_objective(c1);
  LpStatus st = tab.run(n + m, max_iter);
  if (st == LpStatus::iteration_limit) return {st, T(0), {}};
  double feas_band = 0;
  if constexpr (!is_exact_v<T>) {
    double bscale = 1;
    for (std::size_t i = 0; i < m; ++i) bscale = std::max(bscale, std::fabs(b[i]));
    feas_band = 1e3 * band * bscale;
  }
  if (sign_of(tab.value(), feas_band) < 0) return {LpStatus::infeasible, T(0), {}};

  // Drive remaining artificials out of the basis; drop redundant rows.
  std::vector<bool> keep(m, true);
  for (std::size_t i = 0; i < m; ++i) {
    if (tab.basis()[i] < n) continue;
    std::size_t col = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (sign_of(tab.body()(i, j), band) != 0) {
        col = j;
        break;
      }
    }
    if (col == n) {
      keep[i] = false;
    } else {
      tab.pivot(i, col);
    }
  }
  std::size_t kept = static_cast<std::size_t>(std::count(keep.begin(), keep.end(), true));
  Matrix<T> body2(kept, n + 1);
  std::vector<std::size_t> basis2;
  for (std::size_t i = 0, r = 0; i < m; ++i) {
    if (!keep[i]) continue;
    for (std::size_t j = 0; j < n; ++j) body2(r, j) = tab.body()(i, j);
    body2(r, n) = tab.body()(i, n + m);
    basis2.push_back(tab.basis()[i]);
    ++r;
  }
  detail::Tableau<T> tab2(std::move(body2), std::move(basis2), band);
  tab2.set_objective(c.coords());
  st = tab2.run(n, max_iter);
  if (st != LpStatus::optimal) return {st, T(0), {}};
  return {LpStatus::optimal, tab2.value(), tab2.solution(n)};
}

/// maximize c.x subject to A x <= b, x >= 0.
template <class T>
LpResult<T> lp_maximize_leq(const Matrix<T>& a, const Vec<T>& b, const Vec<T>& c,
                            double tol = 1e-11) {
  const std::size_t m = a.rows(), n = a.cols();
  if (b.dim() != m || c.dim() != n) throw std::invalid_argument("LP dimension mismatch");
  bool feasible_origin = true;
  for (std::size_t i = 0; i < m; ++i)
    if (sign_of(b[i], 0.0) < 0) feasible_origin = false;

  Matrix<T> body(m, n + m + 1);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) body(i, j) = a(i, j);
    body(i, n + i) = T(1);
    body(i, n + m) = b[i];
  }
  Vec<T> c2(n + m);
  for (std::size_t j = 0; j < n; ++j) c2[j] = c[j];
  if (!feasible_origin) {
    Matrix<T> aeq(m, n + m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n + m; ++j) aeq(i, j) = body(i, j);
    auto r = lp_maximize_eq(aeq, b, c2, tol);
    if (r.ok()) {
      Vec<T> x(n);
      for (std::size_t j = 0; j < n; ++j) x[j] = r.x[j];
      r.x = std::move(x);
    }
    return r;
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;
  detail::Tableau<T> tab(std::move(body), std::move(basis), detail::lp_band(a, tol));
  tab.set_objective(c2.coords());
  LpStatus st = tab.run(n + m, 50 * (m + n + 10));
  if (st != LpStatus::optimal) return {st, T(0), {}};
  return {LpStatus::optimal, tab.value(), tab.solution(n)};
}

}  // namespace mlab
