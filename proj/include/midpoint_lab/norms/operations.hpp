#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "midpoint_lab/core/random.hpp"
#include "midpoint_lab/norms/norm_oracle.hpp"
#include "midpoint_lab/polytope/polytope.hpp"

namespace mlab {

/// Facet functionals of a polytopal unit ball, each scaled to offset 1.
inline std::vector<VecQ> facet_functionals(const NormOracle& norm) {
  const std::size_t d = norm.dim();
  if (norm.is<NormOracle::PolytopalH>()) return norm.as<NormOracle::PolytopalH>().functionals;
  if (norm.is_lp(std::numeric_limits<double>::infinity())) {
    std::vector<VecQ> out;
    for (std::size_t i = 0; i < d; ++i) {
      out.push_back(unit_vector<Rational>(d, i));
      out.push_back(unit_vector<Rational>(d, i, Rational(-1)));
    }
    return out;
  }
  if (norm.is_lp(1.0)) {
    if (d > 16) throw std::invalid_argument("l1 facet enumeration limited to dimension 16");
    std::vector<VecQ> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
      VecQ g(d);
      for (std::size_t i = 0; i < d; ++i) g[i] = (mask >> i) & 1 ? -1 : 1;
      out.push_back(std::move(g));
    }
    return out;
  }
  if (norm.is<NormOracle::PolytopalV>()) {
    auto P = convex_hull(norm.as<NormOracle::PolytopalV>().vertices);
    std::vector<VecQ> out;
    for (const auto& f : P.facets) out.push_back(f.normal / f.offset);
    return out;
  }
  throw std::invalid_argument("norm of kind " + to_string(norm.kind()) + " is not polytopal");
}

/// Unit ball of a polytopal norm as an exact polytope. From facets the vertices
/// come from polar duality: facet (a, b) of conv{g_k} gives the vertex a / b.
inline Polytope<Rational> unit_ball(const NormOracle& norm) {
  if (norm.is<NormOracle::PolytopalV>()) return convex_hull(norm.as<NormOracle::PolytopalV>().vertices);
  auto g = facet_functionals(norm);
  auto polar = convex_hull(g);
  std::vector<VecQ> verts;
  for (const auto& f : polar.facets) verts.push_back(f.normal / f.offset);
  return convex_hull(verts);
}

/// The same polytopal norm given by facets.
inline NormOracle as_polytopal_h(const NormOracle& norm) {
  auto g = facet_functionals(norm);
  return NormOracle::polytopal_h(g, std::vector<Rational>(g.size(), Rational(1)));
}

struct SupEmbedding {
  MatrixQ map;                  // rows: one functional per ± pair
  std::size_t facets = 0;       // f
  std::size_t upper_bound = 0;  // m(X) <= f - 1
  double max_residual = 0;      // sampled | |map x|_inf - gauge(x) |
  std::size_t samples = 0;
};

/// Isometric embedding x -> (<g_k, x>) into the sup-norm space of dimension f/2.
inline SupEmbedding embed_sup(const std::vector<VecQ>& functionals, const NormOracle& norm,
                              std::size_t samples = 10000, std::uint64_t seed = 1) {
  std::vector<VecQ> reps;
  std::vector<bool> used(functionals.size(), false);
  for (std::size_t i = 0; i < functionals.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    bool paired = false;
    for (std::size_t j = i + 1; j < functionals.size() && !paired; ++j)
      if (!used[j] && functionals[j] == -functionals[i]) {
        used[j] = true;
        paired = true;
      }
    if (!paired) throw std::invalid_argument("embed_sup: facet list is not centrally symmetric");
    reps.push_back(functionals[i]);
  }
  SupEmbedding e;
  e.map = MatrixQ::from_rows(reps);
  e.facets = functionals.size();
  e.upper_bound = e.facets - 1;
  e.samples = samples;
  MatrixD md = matrix_cast<double>(e.map);
  Rng rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    VecD x = rng.gaussian(norm.dim());
    double r = std::fabs(max_abs(VecD(md * x)) - norm.gauge(x));
    e.max_residual = std::max(e.max_residual, r);
  }
  return e;
}

inline SupEmbedding embed_sup(const NormOracle& norm, std::size_t samples = 10000, std::uint64_t seed = 1) {
  return embed_sup(facet_functionals(norm), norm, samples, seed);
}

struct StrictlyConvexNorm {
  NormOracle norm;
  double delta = 0;
  double delta_max = 0;
  std::vector<VecD> vertices;     // S ∪ −S
  std::vector<VecD> functionals;  // supporting functional per vertex
};

/// A strictly convex norm (maximum of ellipsoidal gauges) with gauge 1 at every
/// point of S ∪ −S. Requires S ∪ −S to be in convex position and to span.
///
/// Q_v(x) = (1−δ)(<y_v,x>/<y_v,v>)² + δ|x|²/|v|²; with r = <y_v,w>/<y_v,v> and
/// ρ = |w|²/|v|², Q_v(w) <= 1 needs δ <= (1−r²)/(ρ−r²) whenever ρ > r².
inline StrictlyConvexNorm strictly_convex_through(const std::vector<VecD>& S, const ToleranceBudget& tol = {}) {
  if (S.empty()) throw std::invalid_argument("strictly_convex_through: empty point set");
  const std::size_t d = S[0].dim();
  double scale = 0;
  for (const auto& p : S) scale = std::max(scale, max_abs(p));
  const double band = tol.eq_tol * std::max(1.0, scale);
  std::vector<VecD> V;
  auto add = [&](const VecD& p) {
    for (const auto& q : V)
      if (approx_equal(p, q, band)) return;
    V.push_back(p);
  };
  for (const auto& p : S) {
    if (p.dim() != d) throw std::invalid_argument("strictly_convex_through: mixed dimensions");
    if (max_abs(p) <= band) throw std::invalid_argument("strictly_convex_through: zero vector in S");
    add(p);
    add(-p);
  }
  if (rank(MatrixD::from_rows(V), tol.eq_tol) != d)
    throw std::invalid_argument("strictly_convex_through: S does not span the space");

  StrictlyConvexNorm out{NormOracle::lp(d, 2), 0, 1, V, {}};
  std::string offending;
  for (std::size_t i = 0; i < V.size(); ++i) {
    auto y = extreme_point_witness(V, i, tol.eq_tol);
    if (!y) {
      offending += " (";
      for (std::size_t j = 0; j < d; ++j) offending += (j ? "," : "") + format_double(V[i][j]);
      offending += ")";
      out.functionals.emplace_back(d);
      continue;
    }
    out.functionals.push_back(*y);
  }
  if (!offending.empty())
    throw std::invalid_argument("strictly_convex_through: not in symmetric convex position:" + offending);

  for (std::size_t i = 0; i < V.size(); ++i) {
    const VecD& v = V[i];
    const VecD& y = out.functionals[i];
    const double yv = dot(y, v), vv = dot(v, v);
    for (std::size_t j = 0; j < V.size(); ++j) {
      if (j == i || approx_equal(V[j], VecD(-v), band)) continue;
      const double r = dot(y, V[j]) / yv;
      const double rho = dot(V[j], V[j]) / vv;
      if (rho > r * r) out.delta_max = std::min(out.delta_max, (1 - r * r) / (rho - r * r));
    }
  }
  // Half the feasible maximum; the 1e-6 floor only applies while it stays feasible.
  out.delta = std::max(out.delta_max / 2, std::min(1e-6, 0.9 * out.delta_max));
  const double delta = out.delta;

  std::vector<MatrixD> forms;
  std::vector<bool> done(V.size(), false);
  for (std::size_t i = 0; i < V.size(); ++i) {
    if (done[i]) continue;
    for (std::size_t j = 0; j < V.size(); ++j)
      if (approx_equal(V[j], VecD(-V[i]), band)) done[j] = true;
    done[i] = true;
    const VecD& v = V[i];
    const VecD& y = out.functionals[i];
    const double yv = dot(y, v), vv = dot(v, v);
    MatrixD q(d, d);
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b)
        q(a, b) = (1 - delta) * y[a] * y[b] / (yv * yv) + (a == b ? delta / vv : 0.0);
    forms.push_back(std::move(q));
  }
  out.norm = NormOracle::ellipsoid_intersection(std::move(forms));
  return out;
}

}  // namespace mlab
