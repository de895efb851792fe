// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>

#include "corpus.hpp"
#include "midpoint_lab.hpp"
#include "oracles.hpp"

using namespace mlab;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

// Collects failed checks for one criterion.
struct Check {
  std::vector<std::string> failures;
  std::string summary;
  void require(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

std::string fmt(double v) {
  std::ostringstream o;
  o.precision(3);
  o << v;
  return o.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Rational abs_max(const VecQ& v) {
  Rational m(0);
  for (const auto& c : v) m = std::max(m, Rational(abs(c)));
  return m;
}

// Largest |gauge(midpoint) - 1| and smallest point gauge under an independent gauge.
std::pair<double, double> residual_and_min(const std::vector<VecD>& pts, const std::function<double(const VecD&)>& g) {
  double res = 0, lo = kInf;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    lo = std::min(lo, g(pts[i]));
    for (std::size_t j = i + 1; j < pts.size(); ++j) res = std::max(res, std::fabs(g(midpoint(pts[i], pts[j])) - 1));
  }
  return {res, lo};
}

void linf_exact(Check& c) {
  const auto t0 = std::chrono::steady_clock::now();
  for (std::size_t d = 2; d <= 10; ++d) {
    const auto cand = mset_linf(d);
    const auto cert = certify_mset(cand);
    const std::string tag = "d=" + std::to_string(d);
    c.require(cand.size() == 2 * d - 1, tag + " size");
    c.require(cert.certified() && cert.exact, tag + " exact certificate");
    c.require(cert.max_midpoint_residual == 0, tag + " residual");
    if (!cand.exact_points) {
      c.require(false, tag + " exact points");
      continue;
    }
    const auto& P = *cand.exact_points;
    for (std::size_t i = 0; i < P.size(); ++i) {
      c.require(abs_max(P[i]) > 1, tag + " point gauge");
      for (std::size_t j = i + 1; j < P.size(); ++j)
        c.require(abs_max(VecQ((P[i] + P[j]) / Rational(2))) == 1, tag + " midpoint gauge");
    }
  }
  const double secs = seconds_since(t0);
  c.require(secs < 1, "runtime " + fmt(secs) + " s");
  c.summary = "d=2..10, 2d-1 points, exact rational, zero residual";
}

void l2_simplex(Check& c) {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0;
  for (std::size_t d = 1; d <= 10; ++d) {
    const auto cand = mset_l2_simplex(d);
    const auto cert = certify_mset(cand);
    const std::string tag = "d=" + std::to_string(d);
    c.require(cand.size() == d + 1 && cert.certified(), tag + " certified d+1 points");
    const auto [res, lo] = residual_and_min(cand.points, oracle::euclid);
    worst = std::max(worst, res);
    c.require(res <= 1e-12 && cert.max_midpoint_residual <= 1e-12, tag + " residual");
    if (d >= 2) {
      const double eps = std::sqrt(2.0 * d / (d - 1.0)) - 1;
      c.require(std::fabs(lo - 1 - eps) <= 1e-12 && std::fabs(cert.min_excess - eps) <= 1e-12, tag + " excess");
    }
  }
  const double secs = seconds_since(t0);
  c.require(secs < 1, "runtime " + fmt(secs) + " s");
  c.summary = "d=1..10, worst residual " + fmt(worst);
}

void hexagon_2d(Check& c) {
  std::vector<std::pair<std::string, NormOracle>> norms{{"l2", NormOracle::lp(2, 2)},
                                                        {"l1", NormOracle::lp(2, 1)},
                                                        {"linf", NormOracle::lp(2, kInf)},
                                                        {"l3", NormOracle::lp(2, 3)}};
  for (std::uint64_t s = 0; s < 5; ++s)
    norms.emplace_back("polygon seed " + std::to_string(100 + s), corpus::random_polygon_norm(100 + s));
  double worst = 0;
  for (const auto& [name, n] : norms) {
    const auto h = mset_2d(n);
    const auto cert = certify_mset(h.candidate);
    c.require(h.candidate.size() == 3 && cert.certified(), name + " certified");
    std::function<double(const VecD&)> g = [&](const VecD& x) { return n.gauge(x); };
    if (n.is<NormOracle::Lp>()) {
      const double p = n.lp_exponent();
      g = [p](const VecD& x) { return oracle::lp_norm(x, p); };
    }
    const auto [res, lo] = residual_and_min(h.candidate.points, g);
    worst = std::max(worst, res);
    c.require(res <= 1e-8 && lo > 1, name + " residual " + fmt(res));
  }
  c.summary = "9 norms, worst residual " + fmt(worst);
}

void polytopal_3d(Check& c) {
  struct Case {
    std::string name;
    NormOracle norm;
    std::size_t expected;
  };
  std::vector<Case> cases{{"cube", NormOracle::lp(3, kInf), 5},
                          {"octahedron", NormOracle::lp(3, 1), 4},
                          {"hexagonal prism", corpus::hex_prism(), 7}};
  std::string got;
  for (const auto& k : cases) {
    const auto r = m_exact_3d(k.norm);
    const bool has = r.m_exact && !r.m_exact->infinite;
    c.require(has && r.m_exact->value == k.expected && r.m_exact->certified, k.name + " m_exact");
    c.require(r.witness_face.has_value(), k.name + " witness face");
    if (!has || !r.witness_face) continue;
    got += k.name + "=" + std::to_string(r.m_exact->value) + " ";
    // Independent: largest facet by brute-force planes, plus one.
    const auto verts = vec_cast<double>(unit_ball(k.norm).vertices);
    std::size_t largest = 0;
    for (const auto& [q, o] : oracle::facet_plane_list_3d(verts)) {
      std::size_t on = 0;
      for (const auto& p : verts) on += std::fabs(dot(q, p) - o) < 1e-9;
      largest = std::max(largest, on);
    }
    c.require(largest + 1 == k.expected, k.name + " brute-force facet size");
    const auto fc = mset_from_face(k.norm, *r.witness_face);
    const auto cert = certify_mset(fc.candidate);
    c.require(fc.candidate.size() == k.expected && cert.certified(), k.name + " construction of matching size");
  }
  c.require(mset_linf(3).size() == 2 * 3 - 1 && 2 * 3 - 1 == 5, "cube agrees with the sup-norm formula");
  c.summary = got + "(each matched by a certified construction)";
}

void any_3d(Check& c) {
  double worst = 0;
  for (double p : {2.0, 3.0, kInf}) {
    const auto cand = mset_any_3d(NormOracle::lp(3, p)).candidate;
    const auto cert = certify_mset(cand);
    const std::string tag = "p=" + fmt(p);
    const auto [res, lo] = residual_and_min(cand.points, [p](const VecD& x) { return oracle::lp_norm(x, p); });
    worst = std::max(worst, res);
    c.require(cand.size() == 4 && cert.certified(), tag + " certified 4 points");
    c.require(res <= 1e-6 && lo > 1, tag + " residual " + fmt(res));
  }
  c.summary = "l2, l3, cube; worst residual " + fmt(worst);
}

VecD phi(double t) { return {std::cos(t), std::sin(t), std::cos(2 * t), std::sin(2 * t)}; }

void moment_curve(Check& c) {
  const auto t0 = std::chrono::steady_clock::now();
  double min_margin = kInf, eq = 0, mid = 0;
  for (std::size_t n = 2; n <= 10; ++n) {
    const auto r = mset_moment_curve(n);
    const auto& in = r.instance;
    const std::string tag = "n=" + std::to_string(n);
    c.require(in.k_vertices.size() == 2 * oracle::binomial(n, 2), tag + " vertex count");
    c.require(in.equality_max_abs <= 1e-10, tag + " equality family");
    c.require(in.strict_min_margin > 0 && in.strict_min_margin >= 1e-7, tag + " strict margin");
    eq = std::max(eq, in.equality_max_abs);
    min_margin = std::min(min_margin, in.strict_min_margin);
    bool lp_all = in.lp_agrees;
    for (bool v : in.lp_vertex) lp_all = lp_all && v;
    c.require(lp_all, tag + " LP vertex test");

    // Independent: -y_ij exposes x_i + x_j among ±(x_k + x_l), recomputed from φ.
    if (in.padding == 0) {
      std::vector<double> t;
      for (std::size_t i = 0; i < n; ++i) t.push_back(std::numbers::pi / 4 * i / (n - 1));
      double gap = kInf;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
          const double a = t[i], b = t[j];
          const VecD f{std::cos(a) + std::cos(b), std::sin(a) + std::sin(b), -0.5 * std::cos(a + b),
                       -0.5 * std::sin(a + b)};
          const VecD s = phi(a) + phi(b);
          for (std::size_t k = 0; k < n; ++k)
            for (std::size_t l = k + 1; l < n; ++l) {
              const VecD v = phi(t[k]) + phi(t[l]);
              if (k != i || l != j) gap = std::min(gap, dot(f, s) - dot(f, v));
              gap = std::min(gap, dot(f, s) + dot(f, v));
            }
        }
      c.require(gap > 0, tag + " direct separation");
    }

    const auto& norm = r.candidate.norm;
    for (std::size_t i = 0; i < in.x.size(); ++i)
      for (std::size_t j = i + 1; j < in.x.size(); ++j)
        mid = std::max(mid, std::fabs(norm.gauge(midpoint(in.x[i], in.x[j])) - 1));
    std::size_t inside = 0;
    for (const auto& x : in.x) inside += norm.gauge(x) <= 1;
    c.require(inside <= 1, tag + " at most one point inside the ball");
    c.require(certify_mset(r.candidate).certified(), tag + " certified");
  }
  c.require(mid <= 1e-9, "midpoint residual " + fmt(mid));
  const double secs = seconds_since(t0);
  c.require(secs < 10, "runtime " + fmt(secs) + " s");
  c.summary = "n=2..10, equality max " + fmt(eq) + ", min strict margin " + fmt(min_margin) + ", midpoint residual " +
              fmt(mid);
}

void infinite_prefix(Check& c) {
  const auto r = infinite_family(NormOracle::cylinder(3), 50);
  const auto cert = certify_mset(r.candidate);
  c.require(r.candidate.size() == 50 && cert.certified(), "N=50 certified");
  auto cyl = [](const VecD& x) { return std::max(std::hypot(x[0], x[1]), std::fabs(x[2])); };
  const auto [res, lo] = residual_and_min(r.candidate.points, cyl);
  c.require(lo > 1 && res <= 1e-9, "independent gauge check, residual " + fmt(res));
  c.summary = "cylinder, 50 points, min excess " + fmt(lo - 1) + ", residual " + fmt(res);
}

void classification(Check& c) {
  Rng rng(2024);
  std::size_t other = 0, pyramids = 0, prisms = 0, not2an = 0, checked = 0, mismatch = 0;
  auto run = [&](const std::vector<VecQ>& pts) {
    const auto P = convex_hull(pts);
    if (P.dim != 3) return;
    const auto k = classify_2an(P);
    ++checked;
    mismatch += to_string(k.cls) != corpus::reference_class(vec_cast<double>(P.vertices));
    other += k.cls == PolytopeClass::other;
    pyramids += k.cls == PolytopeClass::pyramid;
    prisms += k.cls == PolytopeClass::prism;
    not2an += k.cls == PolytopeClass::not_2AN;
  };
  for (int s = 0; s < 500; ++s) {
    const long n = rng.uniform_int(8, 20);
    std::vector<VecQ> pts;
    for (long i = 0; i < n; ++i) {
      VecQ q(3);
      if (s % 2 == 0) {
        const VecD p = rng.on_sphere(3);
        for (std::size_t j = 0; j < 3; ++j) q[j] = corpus::rat(std::lround(p[j] * 1000), 1000);
      } else {
        for (auto& x : q) x = Rational(rng.uniform_int(-10, 10));
      }
      pts.push_back(q);
    }
    run(pts);
  }
  for (int s = 0; s < 100; ++s) run(corpus::random_pyramid(rng));
  for (int s = 0; s < 100; ++s) run(corpus::random_prism(rng));
  c.require(other == 0, std::to_string(other) + " other");
  c.require(mismatch == 0, std::to_string(mismatch) + " disagreements with the plane oracle");
  c.require(pyramids == 100 && prisms == 100, "constructed prisms and pyramids recognised");
  c.summary = std::to_string(checked) + " polytopes: " + std::to_string(prisms) + " prism, " +
              std::to_string(pyramids) + " pyramid, " + std::to_string(not2an) + " not 2-almost-neighbourly, " +
              std::to_string(other) + " other";
}

std::vector<VecQ> hex_prism_vertices() {
  std::vector<VecQ> v;
  const long xy[6][2] = {{2, 0}, {1, 1}, {-1, 1}, {-2, 0}, {-1, -1}, {1, -1}};
  for (long z : {1L, -1L})
    for (auto& p : xy) v.push_back({Rational(p[0]), Rational(p[1]), Rational(z)});
  return v;
}

void property_suite(Check& c) {
  MatrixD q1 = MatrixD::identity(3), q2(3, 3);
  q2(0, 0) = 2;
  q2(0, 1) = q2(1, 0) = 0.5;
  q2(1, 1) = 1;
  q2(2, 2) = 0.5;
  MatrixD shear = MatrixD::identity(3);
  shear(0, 1) = 0.5;
  shear(2, 2) = 2;
  const std::vector<std::pair<std::string, NormOracle>> kinds{
      {"lp2", NormOracle::lp(3, 2)},
      {"lp3", NormOracle::lp(3, 3)},
      {"polytopal_h", as_polytopal_h(NormOracle::polytopal_v(hex_prism_vertices()))},
      {"polytopal_v", NormOracle::polytopal_v(hex_prism_vertices())},
      {"ellipsoids", NormOracle::ellipsoid_intersection({q1, q2})},
      {"affine", NormOracle::affine_image(shear, NormOracle::lp(3, kInf))},
      {"cylinder", NormOracle::cylinder(3)}};
  for (const auto& [name, n] : kinds) {
    Rng rng(Rng::derive(5, std::hash<std::string>{}(name)));
    int bad = 0;
    for (int s = 0; s < 10000; ++s) {
      const VecD x = rng.gaussian(3), y = rng.gaussian(3);
      const double t = rng.uniform(0.01, 10);
      const double gx = n.gauge(x), gy = n.gauge(y);
      const double tol = 1e-10 * (1 + gx + gy);
      bad += !(gx > 0);
      bad += std::fabs(n.gauge(t * x) - t * gx) > tol * t;
      bad += std::fabs(n.gauge(-x) - gx) > tol;
      bad += n.gauge(x + y) > gx + gy + tol;
    }
    c.require(bad == 0, name + " gauge axioms");
  }

  Rng rng(8);
  double hv = 0;
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<VecQ> verts;
    for (int i = 0; i < 7; ++i) {
      const VecD p = rng.on_sphere(3);
      VecQ q(3);
      for (std::size_t j = 0; j < 3; ++j) q[j] = corpus::rat(std::lround(p[j] * 1000), 1000);
      verts.push_back(q);
      verts.push_back(-q);
    }
    const auto V = NormOracle::polytopal_v(verts);
    const auto H = as_polytopal_h(V);
    for (int s = 0; s < 2000; ++s) {
      const VecD x = rng.gaussian(3);
      hv = std::max(hv, std::fabs(V.gauge(x) - H.gauge(x)) / std::max(1.0, H.gauge(x)));
    }
  }
  c.require(hv <= 1e-10, "H/V agreement " + fmt(hv));

  // Every certified set the library produces.
  std::vector<MSetCandidate> sets;
  for (std::size_t d = 2; d <= 10; ++d) sets.push_back(mset_linf(d));
  for (std::size_t d = 1; d <= 10; ++d) sets.push_back(mset_l2_simplex(d));
  for (double p : {1.0, 2.0, 3.0, kInf}) sets.push_back(mset_2d(NormOracle::lp(2, p)).candidate);
  for (std::uint64_t s = 0; s < 5; ++s) sets.push_back(mset_2d(corpus::random_polygon_norm(100 + s)).candidate);
  for (const auto& n : {NormOracle::lp(3, 2), NormOracle::lp(3, 3), NormOracle::lp(3, kInf), NormOracle::cylinder(3)})
    sets.push_back(mset_any_3d(n).candidate);
  for (const auto& n : {NormOracle::lp(3, kInf), NormOracle::lp(3, 1), corpus::hex_prism()}) {
    const auto P = unit_ball(n);
    sets.push_back(mset_from_face(n, P.faces[2].front()).candidate);
    sets.push_back(mset_facet_centroids(n, P.faces[2].front()).candidate);
  }
  const auto oc = NormOracle::lp(3, 1);
  sets.push_back(mset_simplex_plus(oc, unit_ball(oc).faces[2].front()).candidate);
  for (std::size_t n = 2; n <= 10; ++n) sets.push_back(mset_moment_curve(n).candidate);
  sets.push_back(infinite_family(NormOracle::cylinder(3), 50).candidate);
  std::size_t certified = 0;
  for (const auto& s : sets) {
    const auto cert = certify_mset(s);
    if (!cert.certified()) continue;
    ++certified;
    c.require(separation_check(cert, s.norm).ok, s.provenance.method + " separation");
    for (std::size_t i = 0; i < s.size(); ++i) {
      c.require(extreme_point_witness(s.points, i).has_value(), s.provenance.method + " convex position");
      for (std::size_t j = i + 1; j < s.size(); ++j)
        c.require(s.norm.gauge(s.points[i] - s.points[j]) >= 2 * cert.min_excess - 1e-9,
                  s.provenance.method + " pair distance");
    }
  }
  c.require(certified == sets.size(), "all produced sets certified");
  c.summary = "7 kinds x 10^4 samples, H/V max " + fmt(hv) + ", " + std::to_string(certified) +
              " certified sets in convex position and separated";
}

void negative_search(Check& c) {
  const auto t0 = std::chrono::steady_clock::now();
  struct Case {
    std::string name;
    NormOracle norm;
    std::size_t m;
  };
  const std::vector<Case> cases{{"l2^2 m=4", NormOracle::lp(2, 2), 4},
                                {"l2^3 m=5", NormOracle::lp(3, 2), 5},
                                {"linf^2 m=4", NormOracle::lp(2, kInf), 4},
                                {"linf^3 m=6", NormOracle::lp(3, kInf), 6}};
  std::string got;
  for (const auto& k : cases) {
    SearchConfig cfg;
    cfg.m = k.m;
    cfg.restarts = 100;
    const auto r = numeric_search(k.norm, cfg);
    c.require(!r.certificate && r.trace.size() == 100, k.name + " not certified over 100 restarts");
    c.require(r.residual > 1e-3, k.name + " residual " + fmt(r.residual));
    got += k.name + ": " + fmt(r.residual) + "; ";
  }
  for (std::size_t d : {3u, 4u}) {
    SearchConfig cfg;
    cfg.m = d + 2;
    cfg.restarts = 40;
    const auto r = numeric_search(NormOracle::lp(d, 2), cfg);
    const auto g = l2_gram_refute(r.best_points, d);
    c.require(g.refuted, "Gram refutation d=" + std::to_string(d));
    // λ must be an affine dependence of the half-points.
    VecD sum(d);
    double total = 0;
    for (std::size_t j = 0; j < g.lambda.dim(); ++j) {
      sum += g.lambda[j] * (r.best_points[j] / 2.0);
      total += g.lambda[j];
    }
    c.require(g.lambda.dim() == d + 2 && max_abs(sum) <= 1e-9 && std::fabs(total) <= 1e-9,
              "Gram dependence d=" + std::to_string(d));
  }
  const double secs = seconds_since(t0);
  c.require(secs < 120, "runtime " + fmt(secs) + " s");
  c.summary = "best residuals " + got + "Gram refutes d=3,4 (evidence, not proof)";
}

void bounds_consistency(Check& c) {
  std::size_t ok = 0;
  for (std::uint64_t s = 0; s < 50; ++s) {
    std::size_t largest = 0;
    const auto n = corpus::random_symmetric(1000 + s, &largest);
    const auto r = bounds_report(n);
    const std::string tag = "seed " + std::to_string(1000 + s);
    const auto lo = r.best_lower(), hi = r.best_upper();
    if (!r.m_exact || !lo || !hi) {
      c.require(false, tag + " missing bounds");
      continue;
    }
    const std::size_t f = oracle::facet_plane_list_3d(vec_cast<double>(unit_ball(n).vertices)).size();
    bool has_f = false;
    for (const auto& u : r.upper) has_f = has_f || (!u.infinite && u.value == f - 1);
    const bool good = r.consistency && lo->value <= r.m_exact->value && r.m_exact->value <= hi->value && has_f &&
                      r.m_exact->value == largest + 1 && r.m_exact->certified;
    c.require(good, tag);
    ok += good;
  }
  c.summary = std::to_string(ok) + "/50 norms: max(lower) <= m_exact <= min(upper), f-1 among the uppers";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
      {"sup-norm lower bound 2d-1", linf_exact},
      {"euclidean simplex d+1", l2_simplex},
      {"planar hexagon construction", hexagon_2d},
      {"3D polytopal formula", polytopal_3d},
      {"universal 3D lower bound", any_3d},
      {"moment-curve certificates", moment_curve},
      {"infinite-family prefix", infinite_prefix},
      {"prism/pyramid classification", classification},
      {"property suite", property_suite},
      {"negative-search evidence", negative_search},
      {"bounds consistency", bounds_consistency}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs = seconds_since(t0);
    const bool pass = c.failures.empty();
    failed += !pass;
    std::printf("%s criterion %zu: %s (%.2f s)", pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), secs);
    if (!c.summary.empty()) std::printf(" - %s", c.summary.c_str());
    std::printf("\n");
    for (std::size_t k = 0; k < c.failures.size() && k < 10; ++k) std::printf("    %s\n", c.failures[k].c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
