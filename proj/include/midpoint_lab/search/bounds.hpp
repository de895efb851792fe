#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "midpoint_lab/constructions/closed_form.hpp"
#include "midpoint_lab/constructions/face.hpp"
#include "midpoint_lab/constructions/hexagon.hpp"
#include "midpoint_lab/constructions/infinite_family.hpp"
#include "midpoint_lab/norms/operations.hpp"
#include "midpoint_lab/verify/certify.hpp"

namespace mlab {

/// A bound on m(X). `certified` marks lower bounds realised by a certified
/// construction; analytic bounds carry certified = false.
struct Bound {
  std::size_t value = 0;
  bool infinite = false;
  std::string source;
  bool certified = false;
};

inline bool bound_less_equal(const Bound& a, const Bound& b) {
  if (b.infinite) return true;
  if (a.infinite) return false;
  return a.value <= b.value;
}

inline std::string to_string(const Bound& b) { return b.infinite ? "infinite" : std::to_string(b.value); }

struct BoundsReport {
  std::vector<Bound> lower;
  std::vector<Bound> upper;
  std::optional<Bound> m_exact;
  bool consistency = true;
  std::optional<Face> witness_face;     // 3D polytopal: a 2-face with the most edges
  std::vector<std::string> notes;       // constructions that could not run, mixed cases

  std::optional<Bound> best_lower() const {
    std::optional<Bound> b;
    for (const auto& l : lower)
      if (!b || !bound_less_equal(l, *b)) b = l;
    return b;
  }
  std::optional<Bound> best_upper() const {
    std::optional<Bound> b;
    for (const auto& u : upper)
      if (!b || !bound_less_equal(*b, u)) b = u;
    return b;
  }
};

namespace detail {

inline void finish(BoundsReport& r) {
  auto lo = r.best_lower();
  auto hi = r.best_upper();
  r.consistency = !lo || !hi || bound_less_equal(*lo, *hi);
  if (r.m_exact) {
    for (const auto& l : r.lower)
      if (l.certified && !l.infinite && !r.m_exact->infinite && l.value == r.m_exact->value) r.m_exact->certified = true;
    if (lo && !bound_less_equal(*lo, *r.m_exact)) r.consistency = false;
    if (hi && !bound_less_equal(*r.m_exact, *hi)) r.consistency = false;
  }
}

inline void add_certified(BoundsReport& r, const MSetCandidate& c, const std::string& source) {
  auto cert = certify_mset(c);
  if (cert.certified()) r.lower.push_back({c.size(), false, source, true});
  else r.notes.push_back(source + ": construction did not certify (" + cert.reason + ")");
}

}  // namespace detail

/// m(X) for a 3-dimensional polytopal ball: (largest number of edges of a
/// 2-face) + 1, with the lower bound realised on that face and certified.
inline BoundsReport m_exact_3d(const NormOracle& norm) {
  if (!norm.polytopal())
    throw std::invalid_argument("m_exact_3d needs a polytopal norm; use bounds_report for other norms");
  if (norm.dim() != 3) throw std::invalid_argument("m_exact_3d needs a 3-dimensional norm");
  auto P = unit_ball(norm);
  BoundsReport r;
  std::size_t best_n = 0;
  for (const auto& [face, n] : two_faces(P))
    if (n > best_n) {
      best_n = n;
      r.witness_face = face;
    }
  if (!r.witness_face) throw std::logic_error("m_exact_3d: unit ball has no 2-face");
  r.m_exact = Bound{best_n + 1, false, "2-face scan (" + std::to_string(best_n) + "-gon)", false};
  r.upper.push_back({best_n + 1, false, "largest 2-face", false});
  auto emb = embed_sup(norm);
  r.upper.push_back({emb.upper_bound, false, "sup-norm embedding f-1 (f = " + std::to_string(emb.facets) + ")", false});
  try {
    auto fc = mset_from_face(norm, *r.witness_face);
    const auto before = r.lower.size();
    detail::add_certified(r, fc.candidate, "face construction");
    r.m_exact->certified = r.lower.size() > before && r.lower.back().value == best_n + 1;
  } catch (const std::exception& e) {
    r.notes.push_back(std::string("face construction failed: ") + e.what());
  }
  detail::finish(r);
  return r;
}

struct BoundsOptions {
  /// Caller's assertion that a 3-dimensional ball has no 2-face (strictly convex).
  bool strictly_convex_3d = false;
  bool run_constructions = true;
};

/// Every applicable bound on m(X): known exact values, polytopal bounds from
/// the sup-norm embedding and face constructions, and the universal lower
/// bound 4 in dimension >= 3.
inline BoundsReport bounds_report(const NormOracle& norm, const BoundsOptions& opt = {}) {
  const std::size_t d = norm.dim();
  const double inf = std::numeric_limits<double>::infinity();
  BoundsReport r;
  if (d == 1) {
    const double c = norm.gauge(VecD{1.0});
    r.m_exact = Bound{2, false, "dimension 1", false};
    r.upper.push_back({2, false, "dimension 1", false});
    if (opt.run_constructions)
      detail::add_certified(r, make_candidate(std::vector<VecD>{VecD{4 / c}, VecD{-2 / c}}, norm, {"pair", {}}, 1),
                            "pair {4, -2}");
    detail::finish(r);
    return r;
  }
  if (d == 2) {
    r.m_exact = Bound{3, false, "dimension 2", false};
    r.upper.push_back({3, false, "dimension 2", false});
    if (opt.run_constructions) {
      try {
        detail::add_certified(r, mset_2d(norm).candidate, "hexagon construction");
      } catch (const std::exception& e) {
        r.notes.push_back(std::string("hexagon construction failed: ") + e.what());
      }
    }
  }
  if (d == 3 && norm.polytopal()) {
    auto e = m_exact_3d(norm);
    r = e;
  }
  if (norm.is_lp(2)) {
    r.upper.push_back({d + 1, false, "euclidean bound d+1", false});
    if (d != 2 && !r.m_exact) r.m_exact = Bound{d + 1, false, "euclidean bound d+1", false};
    if (opt.run_constructions) detail::add_certified(r, mset_l2_simplex(d), "simplex construction");
  }
  if (norm.is_lp(inf)) {
    r.upper.push_back({2 * d - 1, false, "sup-norm bound 2d-1", false});
    if (!r.m_exact) r.m_exact = Bound{2 * d - 1, false, "sup-norm bound 2d-1", false};
    if (opt.run_constructions) detail::add_certified(r, mset_linf(d), "sup-norm construction");
  }
  if (norm.polytopal() && d != 3) {
    try {
      auto emb = embed_sup(norm);
      r.upper.push_back({emb.upper_bound, false, "sup-norm embedding f-1 (f = " + std::to_string(emb.facets) + ")", false});
    } catch (const std::exception& e) {
      r.notes.push_back(std::string("sup-norm embedding unavailable: ") + e.what());
    }
  }
  if (norm.polytopal() && opt.run_constructions && d >= 2 && d <= 4) {
    try {
      auto P = unit_ball(norm);
      // Proper face with the most facets, and a simplex facet if there is one.
      std::optional<Face> best;
      std::size_t best_f = 0;
      std::optional<Face> simplex_facet;
      for (int k = 1; k < P.dim; ++k)
        for (const auto& f : P.faces[k]) {
          const auto nf = detail::subfacets(P, f).size();
          if (nf > best_f) {
            best_f = nf;
            best = f;
          }
          if (k == P.dim - 1 && f.vertex_indices.size() == static_cast<std::size_t>(P.dim) && !simplex_facet)
            simplex_facet = f;
        }
      if (best) detail::add_certified(r, mset_facet_centroids(norm, *best).candidate, "facet centroids");
      if (simplex_facet && best_f < d + 1)
        detail::add_certified(r, mset_simplex_plus(norm, *simplex_facet).candidate, "simplex facet plus -3c");
    } catch (const std::exception& e) {
      r.notes.push_back(std::string("face constructions failed: ") + e.what());
    }
  }
  if (norm.is<NormOracle::Cylinder>() && d == 3) {
    r.m_exact = Bound{0, true, "flat face with a curved boundary arc", false};
    if (opt.run_constructions) {
      auto fam = infinite_family(norm, 50);
      r.lower.push_back({fam.candidate.size(), false, "infinite family prefix (N = 50)", fam.certificate.certified()});
    }
  }
  if (d == 3 && opt.strictly_convex_3d) {
    r.m_exact = Bound{4, false, "3-dimensional ball without 2-faces", false};
    r.upper.push_back({4, false, "3-dimensional ball without 2-faces", false});
  }
  if (d >= 3) {
    bool constructed = false;
    if (d == 3 && opt.run_constructions) {
      try {
        auto a = mset_any_3d(norm);
        auto cert = certify_mset(a.candidate);
        if (cert.certified()) {
          r.lower.push_back({4, false, "hexagon slice construction", true});
          constructed = true;
        }
      } catch (const std::exception& e) {
        r.notes.push_back(std::string("hexagon slice construction failed: ") + e.what());
      }
    }
    if (!constructed) r.lower.push_back({4, false, "lower bound 4 in dimension >= 3", false});
  }
  if (d == 3 && !norm.polytopal() && !norm.is<NormOracle::Cylinder>() && !opt.strictly_convex_3d)
    r.notes.push_back("non-polytopal 3-dimensional ball: only bounds are reported");
  detail::finish(r);
  return r;
}

}  // namespace mlab
