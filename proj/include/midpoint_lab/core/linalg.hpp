#pragma once

#include <optional>
#include <vector>

#include "midpoint_lab/core/vector.hpp"

namespace mlab {

/// Result of a square solve. `singular` is set instead of returning a
/// meaningless vector when the matrix is (numerically) rank deficient.
template <class T>
struct LinearSolution {
  bool singular = false;
  Vec<T> x;
};

namespace detail {

template <class T>
double pivot_band(const Matrix<T>& m, double tol) {
  if constexpr (is_exact_v<T>) {
    return 0.0;
  } else {
    double scale = 0;
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) scale = std::max(scale, std::fabs(m(i, j)));
    return tol * std::max(1.0, scale);
  }
}

}  // namespace detail

/// Reduced row echelon form in place; returns pivot columns.
template <class T>
std::vector<std::size_t> row_reduce(Matrix<T>& m, double tol = 1e-9) {
  const double band = detail::pivot_band(m, tol);
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t best = r;
    if constexpr (is_exact_v<T>) {
      while (best < m.rows() && sgn(m(best, c)) == 0) ++best;
      if (best == m.rows()) continue;
    } else {
      for (std::size_t i = r + 1; i < m.rows(); ++i)
        if (std::fabs(m(i, c)) > std::fabs(m(best, c))) best = i;
      if (std::fabs(m(best, c)) <= band) continue;
    }
    if (best != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(best, j));
    T p = m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) /= p;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r) continue;
      T f = m(i, c);
      if (sign_of(f, 0.0) == 0) continue;
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class T>
std::size_t rank(Matrix<T> m, double tol = 1e-9) {
  return row_reduce(m, tol).size();
}

/// Solves A x = b for square A (partial pivoting in floating mode).
template <class T>
LinearSolution<T> solve_linear(const Matrix<T>& a, const Vec<T>& b, double tol = 1e-9) {
  if (a.rows() != a.cols()) throw std::invalid_argument("solve_linear requires a square matrix");
  if (b.dim() != a.rows()) throw std::invalid_argument("right-hand side dimension mismatch");
  const std::size_t n = a.rows();
  Matrix<T> aug(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
  }
  // Pivot band is judged on A alone so a large b cannot mask singularity.
  const double band = detail::pivot_band(a, tol);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t best = c;
    if constexpr (is_exact_v<T>) {
      while (best < n && sgn(aug(best, c)) == 0) ++best;
      if (best == n) return {true, {}};
    } else {
      for (std::size_t i = c + 1; i < n; ++i)
        if (std::fabs(aug(i, c)) > std::fabs(aug(best, c))) best = i;
      if (std::fabs(aug(best, c)) <= band) return {true, {}};
    }
    if (best != c)
      for (std::size_t j = 0; j <= n; ++j) std::swap(aug(c, j), aug(best, j));
    for (std::size_t i = c + 1; i < n; ++i) {
      T f = aug(i, c) / aug(c, c);
      if (sign_of(f, 0.0) == 0) continue;
      for (std::size_t j = c; j <= n; ++j) aug(i, j) -= f * aug(c, j);
    }
  }
  Vec<T> x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    T s = aug(ii, n);
    for (std::size_t j = ii + 1; j < n; ++j) s -= aug(ii, j) * x[j];
    x[ii] = s / aug(ii, ii);
  }
  return {false, std::move(x)};
}

/// Basis of the right null space { x : M x = 0 }.
template <class T>
std::vector<Vec<T>> nullspace(Matrix<T> m, double tol = 1e-9) {
  const std::size_t cols = m.cols();
  auto pivots = row_reduce(m, tol);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vec<T>> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vec<T> v(cols);
    v[f] = T(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Affine dimension of a point set (-1 for the empty set).
template <class T>
int affine_dimension(const std::vector<Vec<T>>& pts, double tol = 1e-9) {
  if (pts.empty()) return -1;
  if (pts.size() == 1) return 0;
  Matrix<T> m(pts.size() - 1, pts[0].dim());
  for (std::size_t i = 1; i < pts.size(); ++i)
    for (std::size_t j = 0; j < pts[0].dim(); ++j) m(i - 1, j) = pts[i][j] - pts[0][j];
  return static_cast<int>(rank(std::move(m), tol));
}

/// Greedy choice of a maximal affinely independent subset (indices into pts).
template <class T>
std::vector<std::size_t> affine_basis_indices(const std::vector<Vec<T>>& pts, double tol = 1e-9) {
  std::vector<std::size_t> chosen;
  if (pts.empty()) return chosen;
  chosen.push_back(0);
  std::vector<Vec<T>> diffs;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    auto trial = diffs;
    trial.push_back(pts[i] - pts[0]);
    if (rank(Matrix<T>::from_rows(trial), tol) == trial.size()) {
      diffs = std::move(trial);
      chosen.push_back(i);
    }
  }
  return chosen;
}

inline double max_abs_residual(const MatrixD& a, const VecD& x, const VecD& b) {
  VecD r = a * x - b;
  return max_abs(r);
}

}  // namespace mlab
