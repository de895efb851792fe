#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "midpoint_lab/constructions/candidate.hpp"
#include "midpoint_lab/core/parallel.hpp"

namespace mlab {

enum class Verdict { certified, refuted, indeterminate };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::certified: return "certified";
    case Verdict::refuted: return "refuted";
    case Verdict::indeterminate: return "indeterminate";
  }
  return "?";
}

struct PairGauge {
  std::size_t i = 0, j = 0;
  double gauge = 0;
};

struct MSetCertificate {
  std::vector<VecD> points;
  std::vector<double> point_gauges;
  std::vector<PairGauge> midpoint_gauges;
  double min_excess = 0;             // min gauge - 1
  double max_midpoint_residual = 0;  // max |midpoint gauge - 1|
  bool exact = false;
  Verdict verdict = Verdict::refuted;
  std::string reason;
  std::optional<std::size_t> witness_point;
  std::optional<std::pair<std::size_t, std::size_t>> witness_pair;
  // Exact mode only: gauges as "p/q".
  std::optional<std::string> exact_min_excess;

  bool certified() const { return verdict == Verdict::certified; }
};

namespace detail {

inline void fail(MSetCertificate& c, Verdict v, std::string why, std::optional<std::size_t> p,
                 std::optional<std::pair<std::size_t, std::size_t>> pr) {
  if (c.verdict == Verdict::refuted && !c.reason.empty()) return;  // keep the first refutation
  if (c.verdict == Verdict::indeterminate && v == Verdict::indeterminate) return;
  c.verdict = v;
  c.reason = std::move(why);
  c.witness_point = p;
  c.witness_pair = pr;
}

inline void check_input(const NormOracle& norm, std::size_t n, std::size_t dim) {
  if (n < 2) throw std::invalid_argument("certify_mset needs at least two points");
  if (dim != norm.dim()) throw std::invalid_argument("certify_mset: point and norm dimensions differ");
}

}  // namespace detail

/// Exact certificate for rational points under a polytopal norm.
inline MSetCertificate certify_mset_exact(const NormOracle& norm, const std::vector<VecQ>& pts) {
  detail::check_input(norm, pts.size(), pts.empty() ? 0 : pts[0].dim());
  if (!norm.exact_capable()) throw std::invalid_argument("exact certification needs a polytopal norm");
  MSetCertificate c;
  c.exact = true;
  c.verdict = Verdict::certified;
  c.points = vec_cast<double>(pts);
  for (const auto& p : pts)
    if (p.dim() != norm.dim()) throw std::invalid_argument("certify_mset: mixed dimensions");
  std::optional<Rational> min_g;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    Rational g = *norm.gauge_exact(pts[i]);
    c.point_gauges.push_back(g.get_d());
    if (!min_g || g < *min_g) min_g = g;
    if (g <= 1) detail::fail(c, Verdict::refuted, "point gauge is not greater than 1", i, std::nullopt);
  }
  c.min_excess = Rational(*min_g - 1).get_d();
  c.exact_min_excess = format_rational(Rational(*min_g - 1));
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (pts[i] == pts[j]) {
        detail::fail(c, Verdict::refuted, "duplicate points", std::nullopt, std::pair{i, j});
        c.midpoint_gauges.push_back({i, j, c.point_gauges[i]});
        continue;
      }
      Rational g = *norm.gauge_exact(midpoint(pts[i], pts[j]));
      double res = std::fabs(Rational(g - 1).get_d());
      c.max_midpoint_residual = std::max(c.max_midpoint_residual, res);
      c.midpoint_gauges.push_back({i, j, g.get_d()});
      if (g != 1) detail::fail(c, Verdict::refuted, "midpoint gauge differs from 1", std::nullopt, std::pair{i, j});
    }
  return c;
}

/// Floating certificate with the tolerance budget: points need excess at least
/// strict_margin, midpoints |gauge - 1| <= eq_tol; values between the bands are
/// indeterminate rather than refuted.
inline MSetCertificate certify_mset_float(const NormOracle& norm, const std::vector<VecD>& pts,
                                          const ToleranceBudget& tol = {}) {
  require_valid(tol);
  detail::check_input(norm, pts.size(), pts.empty() ? 0 : pts[0].dim());
  for (const auto& p : pts)
    if (p.dim() != norm.dim()) throw std::invalid_argument("certify_mset: mixed dimensions");
  MSetCertificate c;
  c.verdict = Verdict::certified;
  c.points = pts;
  const std::size_t n = pts.size();
  c.point_gauges.resize(n);
  parallel_for(n, [&](std::size_t i) { c.point_gauges[i] = norm.gauge(pts[i]); });

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  c.midpoint_gauges.resize(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t k) {
    auto [i, j] = pairs[k];
    c.midpoint_gauges[k] = {i, j, norm.gauge(midpoint(pts[i], pts[j]))};
  });

  c.min_excess = c.point_gauges[0] - 1;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = c.point_gauges[i] - 1;
    c.min_excess = std::min(c.min_excess, e);
    if (e <= tol.eq_tol)
      detail::fail(c, Verdict::refuted, "point gauge is not greater than 1", i, std::nullopt);
    else if (e < tol.strict_margin)
      detail::fail(c, Verdict::indeterminate, "point excess below strict margin", i, std::nullopt);
  }
  double scale = 1;
  for (const auto& p : pts) scale = std::max(scale, max_abs(p));
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    auto [i, j] = pairs[k];
    if (approx_equal(pts[i], pts[j], tol.eq_tol * scale)) {
      detail::fail(c, Verdict::refuted, "duplicate points", std::nullopt, pairs[k]);
      continue;
    }
    const double r = std::fabs(c.midpoint_gauges[k].gauge - 1);
    c.max_midpoint_residual = std::max(c.max_midpoint_residual, r);
    if (r >= tol.strict_margin)
      detail::fail(c, Verdict::refuted, "midpoint gauge differs from 1", std::nullopt, pairs[k]);
    else if (r > tol.eq_tol)
      detail::fail(c, Verdict::indeterminate, "midpoint residual in indeterminate band", std::nullopt, pairs[k]);
  }
  return c;
}

/// Exact when the norm is polytopal and rational points are supplied; floating otherwise.
inline MSetCertificate certify_mset(const MSetCandidate& cand, const ToleranceBudget& tol = {}) {
  if (cand.exact_points && cand.norm.exact_capable()) return certify_mset_exact(cand.norm, *cand.exact_points);
  return certify_mset_float(cand.norm, cand.points, tol);
}

inline MSetCertificate certify_mset(const NormOracle& norm, const std::vector<VecD>& pts,
                                    const ToleranceBudget& tol = {}) {
  return certify_mset_float(norm, pts, tol);
}

struct SeparationResult {
  bool ok = true;
  double min_distance = 0;  // min gauge(x - y)
  double required = 0;      // 2 * excess - eq_tol
  std::optional<std::pair<std::size_t, std::size_t>> witness;
};

/// Certified M-sets with excess ε have gauge(x − y) >= 2ε for all pairs.
inline SeparationResult separation_check(const MSetCertificate& cert, const NormOracle& norm,
                                         const ToleranceBudget& tol = {}) {
  SeparationResult r;
  r.required = 2 * cert.min_excess - tol.eq_tol;
  bool first = true;
  for (std::size_t i = 0; i < cert.points.size(); ++i)
    for (std::size_t j = i + 1; j < cert.points.size(); ++j) {
      const double g = norm.gauge(cert.points[i] - cert.points[j]);
      if (first || g < r.min_distance) r.min_distance = g;
      first = false;
      if (g < r.required && r.ok) {
        r.ok = false;
        r.witness = std::pair{i, j};
      }
    }
  return r;
}

}  // namespace mlab
