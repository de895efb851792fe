#pragma once

#include <cmath>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "midpoint_lab/core/linalg.hpp"
#include "midpoint_lab/core/lp.hpp"

namespace mlab {

enum class NormKind { lp, polytopal_h, polytopal_v, ellipsoid_intersection, affine_image, cylinder };

inline std::string to_string(NormKind k) {
  switch (k) {
    case NormKind::lp: return "lp";
    case NormKind::polytopal_h: return "polytopal_h";
    case NormKind::polytopal_v: return "polytopal_v";
    case NormKind::ellipsoid_intersection: return "ellipsoid_intersection";
    case NormKind::affine_image: return "affine_image";
    case NormKind::cylinder: return "cylinder";
  }
  return "?";
}

struct GaugeGradient {
  double value = 0;
  VecD gradient;  // a subgradient; a supporting functional when value = 1
};

/// Gauge of a centrally symmetric convex body with 0 in its interior.
///
/// Immutable after construction. Polytopal data is held exactly (rational), so
/// gauges of rational points can be certified without rounding.
class NormOracle {
 public:
  struct Lp {
    double p;
  };
  struct PolytopalH {
    // Facet functionals scaled to offset 1: gauge(x) = max_k <g_k, x>.
    std::vector<VecQ> functionals;
    std::vector<VecD> functionals_d;
  };
  struct PolytopalV {
    std::vector<VecQ> vertices;
    std::vector<VecD> vertices_d;
  };
  struct Ellipsoids {
    std::vector<MatrixD> forms;
  };
  struct Affine {
    MatrixD map;
    std::shared_ptr<const NormOracle> base;
  };
  /// max(|x_{0..d-2}|_2, |x_{d-1}|): a disc (or ball) times an interval.
  struct Cylinder {};

  static NormOracle lp(std::size_t dim, double p) {
    if (dim < 1) throw std::invalid_argument("norm dimension must be positive");
    if (!(p >= 1)) throw std::invalid_argument("lp norm requires p >= 1");
    return NormOracle(dim, Lp{p});
  }

  /// Facets {x : <normal_k, x> = offset_k}; they must come in ± pairs.
  static NormOracle polytopal_h(const std::vector<VecQ>& normals, const std::vector<Rational>& offsets) {
    if (normals.empty() || normals.size() != offsets.size())
      throw std::invalid_argument("polytopal_h needs matching normals and offsets");
    const std::size_t dim = normals[0].dim();
    PolytopalH h;
    for (std::size_t k = 0; k < normals.size(); ++k) {
      if (normals[k].dim() != dim) throw std::invalid_argument("polytopal_h: mixed dimensions");
      if (sgn(offsets[k]) <= 0) throw std::invalid_argument("polytopal_h: offsets must be positive");
      VecQ g = normals[k] / offsets[k];
      for (auto& c : g) c.canonicalize();
      bool dup = false;
      for (const auto& e : h.functionals) dup = dup || e == g;
      if (!dup) h.functionals.push_back(std::move(g));
    }
    for (const auto& g : h.functionals) {
      VecQ neg = -g;
      bool found = false;
      for (const auto& e : h.functionals) found = found || e == neg;
      if (!found) throw std::invalid_argument("polytopal_h: facet functionals are not in ± pairs");
    }
    if (rank(MatrixQ::from_rows(h.functionals)) != dim)
      throw std::invalid_argument("polytopal_h: facets do not bound a body");
    for (const auto& g : h.functionals) h.functionals_d.push_back(vec_cast<double>(g));
    return NormOracle(dim, std::move(h));
  }

  /// Vertex list of the unit ball; must be closed under negation and full-dimensional.
  static NormOracle polytopal_v(const std::vector<VecQ>& vertices) {
    if (vertices.empty()) throw std::invalid_argument("polytopal_v needs vertices");
    const std::size_t dim = vertices[0].dim();
    PolytopalV v;
    for (VecQ p : vertices) {
      if (p.dim() != dim) throw std::invalid_argument("polytopal_v: mixed dimensions");
      for (auto& c : p) c.canonicalize();  // two-argument mpq construction does not reduce
      bool dup = false;
      for (const auto& e : v.vertices) dup = dup || e == p;
      if (!dup) v.vertices.push_back(p);
    }
    for (const auto& p : v.vertices) {
      VecQ neg = -p;
      bool found = false;
      for (const auto& e : v.vertices) found = found || e == neg;
      if (!found) throw std::invalid_argument("polytopal_v: vertex set is not centrally symmetric");
    }
    if (rank(MatrixQ::from_rows(v.vertices)) != dim)
      throw std::invalid_argument("polytopal_v: vertices do not span the space");
    for (const auto& p : v.vertices) v.vertices_d.push_back(vec_cast<double>(p));
    return NormOracle(dim, std::move(v));
  }

  static NormOracle ellipsoid_intersection(std::vector<MatrixD> forms) {
    if (forms.empty()) throw std::invalid_argument("ellipsoid_intersection needs forms");
    const std::size_t dim = forms[0].rows();
    for (const auto& q : forms) {
      if (q.rows() != dim || q.cols() != dim) throw std::invalid_argument("forms must be square");
      if (!positive_definite(q)) throw std::invalid_argument("quadratic form is not positive definite");
    }
    return NormOracle(dim, Ellipsoids{std::move(forms)});
  }

  static NormOracle affine_image(MatrixD map, const NormOracle& base) {
    if (map.rows() != base.dim() || map.cols() != map.rows())
      throw std::invalid_argument("affine_image: map must be square and match the base dimension");
    if (solve_linear(map, VecD(map.rows())).singular)
      throw std::invalid_argument("affine_image: map is not invertible");
    const std::size_t dim = map.cols();
    return NormOracle(dim, Affine{std::move(map), std::make_shared<const NormOracle>(base)});
  }

  static NormOracle cylinder(std::size_t dim) {
    if (dim < 2) throw std::invalid_argument("cylinder norm needs dimension >= 2");
    return NormOracle(dim, Cylinder{});
  }

  NormKind kind() const {
    return std::visit(
        [](const auto& k) {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, Lp>) return NormKind::lp;
          else if constexpr (std::is_same_v<K, PolytopalH>) return NormKind::polytopal_h;
          else if constexpr (std::is_same_v<K, PolytopalV>) return NormKind::polytopal_v;
          else if constexpr (std::is_same_v<K, Ellipsoids>) return NormKind::ellipsoid_intersection;
          else if constexpr (std::is_same_v<K, Affine>) return NormKind::affine_image;
          else return NormKind::cylinder;
        },
        data_);
  }
  std::size_t dim() const { return dim_; }

  template <class K>
  const K& as() const { return std::get<K>(data_); }
  template <class K>
  bool is() const { return std::holds_alternative<K>(data_); }

  double lp_exponent() const { return is<Lp>() ? as<Lp>().p : 0.0; }
  bool is_lp(double p) const { return is<Lp>() && as<Lp>().p == p; }

  /// Polytopal unit ball (exact data available).
  bool polytopal() const {
    return is<PolytopalH>() || is<PolytopalV>() ||
           (is<Lp>() && (std::isinf(as<Lp>().p) || as<Lp>().p == 1.0));
  }
  /// Gauges of rational points can be evaluated exactly.
  bool exact_capable() const { return polytopal(); }

  double gauge(const VecD& x) const {
    check(x.dim());
    return std::visit([&](const auto& k) { return eval(k, x); }, data_);
  }

  std::optional<Rational> gauge_exact(const VecQ& x) const {
    check(x.dim());
    if (is<PolytopalH>()) {
      const auto& h = as<PolytopalH>();
      Rational best = dot(h.functionals[0], x);
      for (const auto& g : h.functionals) {
        Rational v = dot(g, x);
        if (v > best) best = v;
      }
      return best;
    }
    if (is<PolytopalV>()) return v_gauge<Rational>(as<PolytopalV>().vertices, x).first;
    if (is<Lp>() && std::isinf(as<Lp>().p)) return max_abs(x);
    if (is<Lp>() && as<Lp>().p == 1.0) {
      Rational s = 0;
      for (const auto& c : x) s += abs_of(c);
      return s;
    }
    return std::nullopt;
  }

  /// Gauge together with a subgradient. At ridge points the lexicographically
  /// smallest active piece is used.
  GaugeGradient gauge_with_gradient(const VecD& x) const {
    check(x.dim());
    return std::visit([&](const auto& k) { return grad(k, x); }, data_);
  }

 private:
  template <class K>
  NormOracle(std::size_t dim, K k) : dim_(dim), data_(std::move(k)) {}

  void check(std::size_t d) const {
    if (d != dim_) throw std::invalid_argument("gauge: dimension mismatch");
  }

  static bool positive_definite(const MatrixD& q) {
    const std::size_t n = q.rows();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (std::fabs(q(i, j) - q(j, i)) > 1e-12 * (1 + std::fabs(q(i, j)))) return false;
    MatrixD l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      double s = q(j, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(j, k) * l(j, k);
      if (s <= 0) return false;
      l(j, j) = std::sqrt(s);
      for (std::size_t i = j + 1; i < n; ++i) {
        double t = q(i, j);
        for (std::size_t k = 0; k < j; ++k) t -= l(i, k) * l(j, k);
        l(i, j) = t / l(j, j);
      }
    }
    return true;
  }

  // gauge_V(x) = max <y, x> s.t. <y, v> <= 1 for every vertex v (LP dual of the
  // min-scaling formulation); returns the value and the optimal y.
  template <class T>
  static std::pair<T, Vec<T>> v_gauge(const std::vector<Vec<T>>& verts, const Vec<T>& x) {
    const std::size_t d = x.dim(), m = verts.size();
    Matrix<T> a(m, 2 * d);
    Vec<T> b(m, T(1)), c(2 * d);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        a(i, j) = verts[i][j];
        a(i, d + j) = -verts[i][j];
      }
    for (std::size_t j = 0; j < d; ++j) {
      c[j] = x[j];
      c[d + j] = -x[j];
    }
    auto r = lp_maximize_leq(a, b, c, 1e-13);
    if (!r.ok()) throw std::runtime_error("polytopal_v gauge LP failed");
    Vec<T> y(d);
    for (std::size_t j = 0; j < d; ++j) y[j] = r.x[j] - r.x[d + j];
    T value = r.value;
    if (sign_of(value, 0.0) < 0) value = T(0);
    return {value, y};
  }

  static double lp_value(double p, const VecD& x) {
    double m = 0;
    for (double c : x) m = std::max(m, std::fabs(c));
    if (std::isinf(p) || m == 0) return m;
    if (p == 1) {
      double s = 0;
      for (double c : x) s += std::fabs(c);
      return s;
    }
    if (p == 2) {
      double s = 0;
      for (double c : x) s += (c / m) * (c / m);
      return m * std::sqrt(s);
    }
    double s = 0;
    for (double c : x) s += std::pow(std::fabs(c) / m, p);
    return m * std::pow(s, 1.0 / p);
  }

  double eval(const Lp& k, const VecD& x) const { return lp_value(k.p, x); }
  double eval(const PolytopalH& h, const VecD& x) const {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& g : h.functionals_d) best = std::max(best, dot(g, x));
    return std::max(best, 0.0);
  }
  double eval(const PolytopalV& v, const VecD& x) const { return v_gauge<double>(v.vertices_d, x).first; }
  double eval(const Ellipsoids& e, const VecD& x) const {
    double best = 0;
    for (const auto& q : e.forms) best = std::max(best, std::sqrt(std::max(0.0, dot(x, VecD(q * x)))));
    return best;
  }
  double eval(const Affine& a, const VecD& x) const { return a.base->gauge(a.map * x); }
  double eval(const Cylinder&, const VecD& x) const {
    double s = 0;
    for (std::size_t i = 0; i + 1 < x.dim(); ++i) s += x[i] * x[i];
    return std::max(std::sqrt(s), std::fabs(x[x.dim() - 1]));
  }

  GaugeGradient grad(const Lp& k, const VecD& x) const {
    GaugeGradient g{lp_value(k.p, x), VecD(x.dim())};
    if (g.value == 0) return g;
    if (std::isinf(k.p)) {
      for (std::size_t i = 0; i < x.dim(); ++i)
        if (std::fabs(x[i]) == g.value) {
          g.gradient[i] = x[i] > 0 ? 1.0 : -1.0;
          break;
        }
    } else if (k.p == 1) {
      for (std::size_t i = 0; i < x.dim(); ++i) g.gradient[i] = x[i] > 0 ? 1.0 : (x[i] < 0 ? -1.0 : 0.0);
    } else {
      for (std::size_t i = 0; i < x.dim(); ++i) {
        double r = std::fabs(x[i]) / g.value;
        g.gradient[i] = std::copysign(std::pow(r, k.p - 1), x[i]);
      }
    }
    return g;
  }
  GaugeGradient grad(const PolytopalH& h, const VecD& x) const {
    std::size_t arg = 0;
    double best = dot(h.functionals_d[0], x);
    for (std::size_t k = 1; k < h.functionals_d.size(); ++k) {
      double v = dot(h.functionals_d[k], x);
      if (v > best) {
        best = v;
        arg = k;
      }
    }
    return {std::max(best, 0.0), h.functionals_d[arg]};
  }
  GaugeGradient grad(const PolytopalV& v, const VecD& x) const {
    auto [val, y] = v_gauge<double>(v.vertices_d, x);
    return {val, y};
  }
  GaugeGradient grad(const Ellipsoids& e, const VecD& x) const {
    double best = -1;
    std::size_t arg = 0;
    for (std::size_t k = 0; k < e.forms.size(); ++k) {
      double v = std::sqrt(std::max(0.0, dot(x, VecD(e.forms[k] * x))));
      if (v > best) {
        best = v;
        arg = k;
      }
    }
    GaugeGradient g{best, VecD(x.dim())};
    if (best > 0) g.gradient = e.forms[arg] * x / best;
    return g;
  }
  GaugeGradient grad(const Affine& a, const VecD& x) const {
    auto inner = a.base->gauge_with_gradient(a.map * x);
    return {inner.value, a.map.transposed() * inner.gradient};
  }
  GaugeGradient grad(const Cylinder&, const VecD& x) const {
    const std::size_t d = x.dim();
    double s = 0;
    for (std::size_t i = 0; i + 1 < d; ++i) s += x[i] * x[i];
    s = std::sqrt(s);
    double h = std::fabs(x[d - 1]);
    GaugeGradient g{std::max(s, h), VecD(d)};
    if (g.value == 0) return g;
    if (s >= h) {
      for (std::size_t i = 0; i + 1 < d; ++i) g.gradient[i] = x[i] / s;
    } else {
      g.gradient[d - 1] = x[d - 1] > 0 ? 1.0 : -1.0;
    }
    return g;
  }

  std::size_t dim_;
  std::variant<Lp, PolytopalH, PolytopalV, Ellipsoids, Affine, Cylinder> data_;
};

enum class SphereVerdict { inside, on, outside };

struct SphereStatus {
  SphereVerdict verdict = SphereVerdict::inside;
  double excess = 0;     // gauge - 1
  bool warning = false;  // floating value fell in the indeterminate band
  bool exact = false;
};

/// Classifies x against the unit sphere. The band between eq_tol and
/// strict_margin is reported as "on" with a warning rather than as a verdict.
inline SphereStatus sphere_status(const NormOracle& norm, const VecD& x, const ToleranceBudget& tol = {}) {
  SphereStatus s;
  const double g = norm.gauge(x);
  s.excess = g - 1;
  if (std::fabs(s.excess) <= tol.eq_tol) {
    s.verdict = SphereVerdict::on;
  } else if (s.excess >= tol.strict_margin) {
    s.verdict = SphereVerdict::outside;
  } else if (s.excess <= -tol.strict_margin) {
    s.verdict = SphereVerdict::inside;
  } else {
    s.verdict = SphereVerdict::on;
    s.warning = true;
  }
  return s;
}

inline SphereStatus sphere_status(const NormOracle& norm, const VecQ& x, const ToleranceBudget& tol = {}) {
  auto g = norm.gauge_exact(x);
  if (!g) return sphere_status(norm, vec_cast<double>(x), tol);
  SphereStatus s;
  s.exact = true;
  Rational e = *g - 1;
  s.excess = e.get_d();
  int sg = sgn(e);
  s.verdict = sg == 0 ? SphereVerdict::on : (sg > 0 ? SphereVerdict::outside : SphereVerdict::inside);
  return s;
}

}  // namespace mlab
