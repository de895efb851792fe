#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "midpoint_lab/core/scalar.hpp"

namespace mlab {

/// Dense coordinate vector over a scalar domain (double or Rational).
template <class T>
class Vec {
 public:
  using value_type = T;

  Vec() = default;
  explicit Vec(std::size_t dim, const T& fill = T(0)) : c_(dim, fill) {}
  Vec(std::initializer_list<T> xs) : c_(xs) {}
  explicit Vec(std::vector<T> xs) : c_(std::move(xs)) {}

  std::size_t dim() const { return c_.size(); }
  std::size_t size() const { return c_.size(); }
  bool empty() const { return c_.empty(); }

  T& operator[](std::size_t i) { return c_[i]; }
  const T& operator[](std::size_t i) const { return c_[i]; }

  auto begin() { return c_.begin(); }
  auto end() { return c_.end(); }
  auto begin() const { return c_.begin(); }
  auto end() const { return c_.end(); }

  const std::vector<T>& coords() const { return c_; }

  Vec& operator+=(const Vec& o) {
    check_dim(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    check_dim(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Vec& operator*=(const T& s) {
    for (auto& x : c_) x *= s;
    return *this;
  }
  Vec& operator/=(const T& s) {
    for (auto& x : c_) x /= s;
    return *this;
  }

  friend Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend Vec operator*(Vec a, const T& s) { return a *= s; }
  friend Vec operator*(const T& s, Vec a) { return a *= s; }
  friend Vec operator/(Vec a, const T& s) { return a /= s; }
  friend Vec operator-(Vec a) {
    for (auto& x : a.c_) x = -x;
    return a;
  }
  friend bool operator==(const Vec& a, const Vec& b) { return a.c_ == b.c_; }
  friend bool operator<(const Vec& a, const Vec& b) { return a.c_ < b.c_; }

 private:
  void check_dim(const Vec& o) const {
    if (o.dim() != dim()) throw std::invalid_argument("vector dimension mismatch");
  }
  std::vector<T> c_;
};

using VecD = Vec<double>;
using VecQ = Vec<Rational>;

template <class T>
T dot(const Vec<T>& a, const Vec<T>& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("vector dimension mismatch");
  T s(0);
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const VecD& a) { return std::sqrt(dot(a, a)); }

template <class T>
T max_abs(const Vec<T>& a) {
  T m(0);
  for (const auto& x : a) {
    T ax = abs_of(x);
    if (ax > m) m = ax;
  }
  return m;
}

template <class T>
Vec<T> unit_vector(std::size_t dim, std::size_t axis, const T& scale = T(1)) {
  Vec<T> v(dim);
  v[axis] = scale;
  return v;
}

template <class T>
Vec<T> midpoint(const Vec<T>& a, const Vec<T>& b) {
  return (a + b) / T(2);
}

template <class To, class From>
Vec<To> vec_cast(const Vec<From>& v) {
  Vec<To> out(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) out[i] = scalar_cast<To>(v[i]);
  return out;
}

template <class To, class From>
std::vector<Vec<To>> vec_cast(const std::vector<Vec<From>>& vs) {
  std::vector<Vec<To>> out;
  out.reserve(vs.size());
  for (const auto& v : vs) out.push_back(vec_cast<To>(v));
  return out;
}

/// Coordinate-wise comparison within `band` (exact when T is Rational).
template <class T>
bool approx_equal(const Vec<T>& a, const Vec<T>& b, double band) {
  if (a.dim() != b.dim()) return false;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (sign_of(T(a[i] - b[i]), band) != 0) return false;
  }
  return true;
}

/// Row-major dense matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
      : rows_(rows), cols_(cols), a_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    a_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
      a_.insert(a_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  static Matrix from_rows(const std::vector<Vec<T>>& rows) {
    if (rows.empty()) return {};
    Matrix m(rows.size(), rows[0].dim());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].dim() != m.cols_) throw std::invalid_argument("ragged rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  Vec<T> row(std::size_t r) const {
    Vec<T> v(cols_);
    for (std::size_t j = 0; j < cols_; ++j) v[j] = (*this)(r, j);
    return v;
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Vec<T> operator*(const Matrix& m, const Vec<T>& x) {
    if (x.dim() != m.cols_) throw std::invalid_argument("matrix-vector dimension mismatch");
    Vec<T> y(m.rows_);
    for (std::size_t i = 0; i < m.rows_; ++i) {
      T s(0);
      for (std::size_t j = 0; j < m.cols_; ++j) s += m(i, j) * x[j];
      y[i] = s;
    }
    return y;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product dimension mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k)
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
    return c;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> a_;
};

using MatrixD = Matrix<double>;
using MatrixQ = Matrix<Rational>;

template <class To, class From>
Matrix<To> matrix_cast(const Matrix<From>& m) {
  Matrix<To> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = scalar_cast<To>(m(i, j));
  return out;
}

}  // namespace mlab
