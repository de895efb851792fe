#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>

#include "midpoint_lab/constructions/candidate.hpp"
#include "midpoint_lab/verify/certify.hpp"

namespace mlab {

/// Strictly convex boundary arc of a flat 2-face of the unit ball: arc(0) is a
/// point T of the arc, arc(s) moves along it for small |s|.
struct FaceArc {
  std::function<VecD(double)> arc;
  double max_param = 1;  // |s| <= max_param stays on the strictly convex part
};

/// Top disc of the cylinder ball, centred arc around (1, 0, 1).
inline FaceArc cylinder_top_arc() {
  return {[](double s) { return VecD{std::cos(s), std::sin(s), 1.0}; }, 1.0};
}

struct InfiniteFamilyResult {
  MSetCandidate candidate;
  double ratio = 0;    // geometric ratio r of the arc parameters
  double spread = 0;   // h, the largest |s|
  double eta = 0;      // homothety excess
  int shrink_steps = 0;
  MSetCertificate certificate;
};

/// Finite prefix of an infinite M-set on a face with a strictly convex arc.
///
/// Arc parameters s = ±h r^k alternate sides of T and accumulate at T; points
/// are x_i = T + (1+η)(q_i − T) with q_i = arc(s_i). The homothety about T keeps
/// every x_i in the face plane but outside the face, while each midpoint stays
/// in the face as long as η is below a bound that depends only on r (the
/// configuration is self-similar). η is maximised by bisection and halved;
/// (h, r) are shrunk over a grid until the set certifies.
inline InfiniteFamilyResult infinite_family(const NormOracle& norm, std::size_t N,
                                            const FaceArc& face = cylinder_top_arc(),
                                            const ToleranceBudget& tol = {}) {
  if (norm.dim() != 3) throw std::invalid_argument("infinite_family: norm must be 3-dimensional");
  if (N < 2) throw std::invalid_argument("infinite_family: N must be >= 2");
  const VecD T = face.arc(0);

  auto params = [&](double h, double r) {
    std::vector<double> s;
    for (std::size_t i = 0; i < N; ++i) s.push_back((i % 2 ? -h : h) * std::pow(r, static_cast<double>(i / 2)));
    return s;
  };
  auto points = [&](const std::vector<double>& s, double eta) {
    std::vector<VecD> pts;
    for (double si : s) pts.push_back(T + (1 + eta) * (face.arc(si) - T));
    return pts;
  };
  auto midpoints_inside = [&](const std::vector<VecD>& pts) {
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j)
        if (norm.gauge(midpoint(pts[i], pts[j])) > 1) return false;
    return true;
  };

  std::optional<InfiniteFamilyResult> best;
  double best_excess = -1;
  int step = 0;
  for (double h : {1.0, 0.5, 0.25, 0.125}) {
    for (int ri = 99; ri >= 50; --ri) {
      const double r = ri / 100.0;
      ++step;
      if (h > face.max_param) continue;
      auto s = params(h, r);
      double lo = 0, hi = 1;
      if (!midpoints_inside(points(s, lo))) continue;
      for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        (midpoints_inside(points(s, mid)) ? lo : hi) = mid;
      }
      const double eta = lo / 2;
      auto pts = points(s, eta);
      double excess = std::numeric_limits<double>::infinity();
      for (const auto& p : pts) excess = std::min(excess, norm.gauge(p) - 1);
      if (excess > best_excess) {
        auto cert = certify_mset_float(norm, pts, tol);
        if (!cert.certified()) continue;
        best_excess = excess;
        best.emplace(InfiniteFamilyResult{make_candidate(std::move(pts), norm, {}, excess), r, h, eta, step,
                                          std::move(cert)});
      }
    }
  }
  if (!best) throw std::runtime_error("infinite_family: certification failed for every shrink step");
  best->candidate.provenance = {"infinite",
                                {{"N", std::to_string(N)}, {"ratio", format_double(best->ratio)},
                                 {"spread", format_double(best->spread)}, {"eta", format_double(best->eta)}}};
  return std::move(*best);
}

}  // namespace mlab
