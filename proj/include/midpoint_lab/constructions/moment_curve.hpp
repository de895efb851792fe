#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "midpoint_lab/constructions/candidate.hpp"
#include "midpoint_lab/norms/operations.hpp"

namespace mlab {

/// Trigonometric moment curve (cos t, sin t, cos 2t, sin 2t).
inline VecD moment_point(double t) { return {std::cos(t), std::sin(t), std::cos(2 * t), std::sin(2 * t)}; }

struct InequalityFamily {
  std::string name;
  bool strict = true;  // false: the equality family
  std::size_t count = 0;
  double extreme = 0;  // min value (strict) or max |value| (equality)
  std::array<std::size_t, 4> witness{};  // (i, j, k, l) attaining it
};

struct MomentCurveInstance {
  std::size_t n = 0;
  std::vector<double> t;
  std::vector<VecD> x;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // i < j
  std::vector<VecD> k_vertices;  // x_i + x_j for each pair, then the negatives
  std::vector<VecD> y;           // y_ij per pair
  std::vector<double> c;         // c_ij per pair
  std::vector<InequalityFamily> families;
  double equality_max_abs = 0;
  double strict_min_margin = 0;
  double closed_form_discrepancy = 0;  // closed forms vs direct inner products
  std::vector<bool> lp_vertex;          // per k_vertices entry
  bool lp_agrees = false;
  // Norm through the prescribed midpoints.
  double delta = 0;
  double max_midpoint_residual = 0;
  std::vector<double> x_gauges;
  std::optional<std::size_t> dropped;
  std::size_t padding = 0;  // complement directions added so the set spans R^4
};

struct MomentCurveResult {
  MomentCurveInstance instance;
  MSetCandidate candidate;
};

class InequalityViolation : public std::runtime_error {
 public:
  InequalityViolation(const std::string& what, std::array<std::size_t, 4> w)
      : std::runtime_error(what), witness(w) {}
  std::array<std::size_t, 4> witness;
};

/// Moment-curve construction in R^4. Each ±(x_i + x_j) is certified as a vertex
/// of K = conv{±(x_i + x_j)} by the closed-form functionals y_ij (six inequality
/// families) and by an independent LP; a strictly convex norm is then built with
/// unit sphere through every (x_i + x_j)/2.
inline MomentCurveResult mset_moment_curve(std::size_t n, std::vector<double> t = {},
                                           const ToleranceBudget& tol = {}) {
  if (n < 2) throw std::invalid_argument("mset_moment_curve: n must be >= 2");
  const double quarter = std::numbers::pi / 4;
  if (t.empty()) {
    for (std::size_t i = 0; i < n; ++i) t.push_back(quarter * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  if (t.size() != n) throw std::invalid_argument("mset_moment_curve: need exactly n parameters");
  for (std::size_t i = 0; i < n; ++i) {
    if (t[i] < 0 || t[i] > quarter) throw std::invalid_argument("mset_moment_curve: parameters must lie in [0, pi/4]");
    for (std::size_t j = 0; j < i; ++j)
      if (t[i] == t[j]) throw std::invalid_argument("mset_moment_curve: parameters must be distinct");
  }

  MomentCurveInstance in;
  in.n = n;
  in.t = t;
  for (double ti : t) in.x.push_back(moment_point(ti));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) in.pairs.emplace_back(i, j);
  for (auto [i, j] : in.pairs) in.k_vertices.push_back(in.x[i] + in.x[j]);
  for (auto [i, j] : in.pairs) in.k_vertices.push_back(-(in.x[i] + in.x[j]));

  in.families = {{"x_i+x_j", false}, {"-x_i-x_j", true}, {"x_i+x_k", true},
                 {"-x_i-x_k", true}, {"x_k+x_l", true},  {"-x_k-x_l", true}};
  auto record = [&](std::size_t f, double closed, const VecD& point, const VecD& y, double c,
                    std::array<std::size_t, 4> w) {
    in.closed_form_discrepancy = std::max(in.closed_form_discrepancy, std::fabs(closed - (dot(y, point) + 2 * c)));
    auto& fam = in.families[f];
    const double v = fam.strict ? closed : std::fabs(closed);
    const bool better = fam.count == 0 || (fam.strict ? v < fam.extreme : v > fam.extreme);
    if (better) {
      fam.extreme = v;
      fam.witness = w;
    }
    ++fam.count;
  };
  for (auto [i, j] : in.pairs) {
    const double ti = t[i], tj = t[j];
    VecD y{-std::cos(ti) - std::cos(tj), -std::sin(ti) - std::sin(tj), 0.5 * std::cos(ti + tj), 0.5 * std::sin(ti + tj)};
    const double c = 1 + 0.5 * std::cos(ti - tj);
    in.y.push_back(y);
    in.c.push_back(c);
    auto p = [&](double s) { return (1 - std::cos(s - ti)) * (1 - std::cos(s - tj)); };
    const std::size_t none = n;
    record(0, p(ti) + p(tj), in.x[i] + in.x[j], y, c, {i, j, none, none});
    record(1, 4 * c - p(ti) - p(tj), -(in.x[i] + in.x[j]), y, c, {i, j, none, none});
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i || k == j) continue;
      for (std::size_t a : {i, j}) {
        record(2, p(t[a]) + p(t[k]), in.x[a] + in.x[k], y, c, {i, j, k, a});
        record(3, 4 * c - p(t[a]) - p(t[k]), -(in.x[a] + in.x[k]), y, c, {i, j, k, a});
      }
      for (std::size_t l = k + 1; l < n; ++l) {
        if (l == i || l == j) continue;
        record(4, p(t[k]) + p(t[l]), in.x[k] + in.x[l], y, c, {i, j, k, l});
        record(5, 4 * c - p(t[k]) - p(t[l]), -(in.x[k] + in.x[l]), y, c, {i, j, k, l});
      }
    }
  }
  in.equality_max_abs = in.families[0].extreme;
  in.strict_min_margin = std::numeric_limits<double>::infinity();
  for (const auto& f : in.families) {
    if (!f.strict || f.count == 0) continue;
    in.strict_min_margin = std::min(in.strict_min_margin, f.extreme);
    if (f.extreme <= 0)
      throw InequalityViolation("moment curve: family " + f.name + " is not strictly positive", f.witness);
  }
  if (in.equality_max_abs > 1e-10)
    throw InequalityViolation("moment curve: equality family is not zero", in.families[0].witness);

  // Independent LP vertex test over the full list ±(x_i + x_j).
  in.lp_vertex.resize(in.k_vertices.size());
  in.lp_agrees = true;
  for (std::size_t v = 0; v < in.k_vertices.size(); ++v) {
    in.lp_vertex[v] = extreme_point_witness(in.k_vertices, v, tol.eq_tol).has_value();
    in.lp_agrees = in.lp_agrees && in.lp_vertex[v];
  }

  // Unit sphere through the midpoints; pad with an orthonormal complement when
  // they span fewer than four dimensions (n <= 3).
  std::vector<VecD> S;
  for (auto [i, j] : in.pairs) S.push_back(0.5 * (in.x[i] + in.x[j]));
  auto comp = nullspace(MatrixD::from_rows(S), 1e-10);
  std::vector<VecD> padded = S;
  const double ref = norm2(S[0]);
  for (const auto& b : comp) padded.push_back(ref * b / norm2(b));
  in.padding = comp.size();
  auto sc = strictly_convex_through(padded, tol);
  in.delta = sc.delta;
  for (const auto& s : S) in.max_midpoint_residual = std::max(in.max_midpoint_residual, std::fabs(sc.norm.gauge(s) - 1));
  std::vector<VecD> pts;
  for (std::size_t i = 0; i < n; ++i) {
    in.x_gauges.push_back(sc.norm.gauge(in.x[i]));
    if (in.x_gauges.back() <= 1) {
      if (in.dropped) throw std::logic_error("moment curve: two points inside the unit ball");
      in.dropped = i;
    } else {
      pts.push_back(in.x[i]);
    }
  }
  double min_g = std::numeric_limits<double>::infinity();
  for (const auto& p : pts) min_g = std::min(min_g, sc.norm.gauge(p));
  Provenance prov{"moment", {{"n", std::to_string(n)}, {"kept", std::to_string(pts.size())}}};
  return {std::move(in), make_candidate(std::move(pts), sc.norm, prov, min_g - 1)};
}

}  // namespace mlab
