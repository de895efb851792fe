#include <gtest/gtest.h>

#include <algorithm>
#include <numbers>

#include "midpoint_lab/constructions/closed_form.hpp"
#include "midpoint_lab/constructions/face.hpp"
#include "midpoint_lab/constructions/hexagon.hpp"
#include "midpoint_lab/constructions/infinite_family.hpp"
#include "midpoint_lab/constructions/moment_curve.hpp"
#include "midpoint_lab/core/random.hpp"
#include "midpoint_lab/verify/certify.hpp"
#include "oracles.hpp"

using namespace mlab;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

// Every construction in the library, with the norm it was built for.
std::vector<MSetCandidate> all_constructions() {
  std::vector<MSetCandidate> out;
  for (std::size_t d = 2; d <= 10; ++d) out.push_back(mset_linf(d));
  for (std::size_t d = 1; d <= 10; ++d) out.push_back(mset_l2_simplex(d));
  for (const auto& n : {NormOracle::lp(2, 2), NormOracle::lp(2, 1), NormOracle::lp(2, kInf), NormOracle::lp(2, 3)})
    out.push_back(mset_2d(n).candidate);
  for (const auto& n : {NormOracle::lp(3, 2), NormOracle::lp(3, 3), NormOracle::lp(3, kInf), NormOracle::cylinder(3)})
    out.push_back(mset_any_3d(n).candidate);
  for (const auto& n : {NormOracle::lp(3, kInf), NormOracle::lp(3, 1)}) {
    auto P = unit_ball(n);
    out.push_back(mset_from_face(n, P.faces[2].front()).candidate);
    out.push_back(mset_facet_centroids(n, P.faces[2].front()).candidate);
  }
  auto oc = NormOracle::lp(3, 1);
  out.push_back(mset_simplex_plus(oc, unit_ball(oc).faces[2].front()).candidate);
  for (std::size_t n = 2; n <= 10; ++n) out.push_back(mset_moment_curve(n).candidate);
  out.push_back(infinite_family(NormOracle::cylinder(3), 20).candidate);
  return out;
}

}  // namespace

TEST(Certify, BasicVerdicts) {
  auto linf = mset_linf(3);
  auto c = certify_mset(linf);
  EXPECT_TRUE(c.certified());
  EXPECT_TRUE(c.exact);
  EXPECT_EQ(c.min_excess, 1.0);
  EXPECT_EQ(c.max_midpoint_residual, 0.0);
  ASSERT_TRUE(c.exact_min_excess);
  EXPECT_EQ(*c.exact_min_excess, "1/1");

  const double h = std::sqrt(3.0) / 2;
  auto hex = certify_mset(NormOracle::lp(2, 2), {{2, 0}, {-1, 2 * h}, {-1, -2 * h}});
  EXPECT_TRUE(hex.certified());
  EXPECT_NEAR(hex.min_excess, 1.0, 1e-15);

  auto bad = certify_mset(NormOracle::lp(2, 2), {{2, 0}, {0, 2}});
  EXPECT_EQ(bad.verdict, Verdict::refuted);
  ASSERT_TRUE(bad.witness_pair);
  EXPECT_EQ(*bad.witness_pair, (std::pair<std::size_t, std::size_t>{0, 1}));
  EXPECT_NEAR(bad.midpoint_gauges[0].gauge, std::sqrt(2.0), 1e-15);
}

TEST(Certify, RefutationWitnesses) {
  auto cube = NormOracle::lp(3, kInf);
  std::vector<VecQ> pts{{Rational(2), Rational(0), Rational(0)}, {Rational(1, 2), Rational(0), Rational(0)}};
  auto c = certify_mset_exact(cube, pts);
  EXPECT_EQ(c.verdict, Verdict::refuted);
  ASSERT_TRUE(c.witness_point);
  EXPECT_EQ(*c.witness_point, 1u);
  std::vector<VecQ> dup{{Rational(2), Rational(1), Rational(0)}, {Rational(2), Rational(1), Rational(0)}};
  auto d = certify_mset_exact(cube, dup);
  EXPECT_EQ(d.verdict, Verdict::refuted);
  EXPECT_NE(d.reason.find("duplicate"), std::string::npos);
  auto fd = certify_mset(NormOracle::lp(2, 2), {{2, 0}, {2, 0}, {-1, 1.7}});
  EXPECT_EQ(fd.verdict, Verdict::refuted);
  EXPECT_THROW(certify_mset(NormOracle::lp(2, 2), {{2, 0, 0}, {0, 2, 0}}), std::invalid_argument);
  EXPECT_THROW(certify_mset(NormOracle::lp(2, 2), {{2, 0}}), std::invalid_argument);
  EXPECT_THROW(certify_mset_exact(NormOracle::lp(2, 2), {{Rational(2), Rational(0)}, {Rational(0), Rational(2)}}),
               std::invalid_argument);
}

TEST(Certify, IndeterminateBand) {
  auto n = NormOracle::lp(2, 2);
  const double h = std::sqrt(3.0) / 2;
  // Midpoint residual 5e-8: between eq_tol and strict_margin.
  const double s = 1 + 5e-8;
  auto c = certify_mset(n, {{2 * s, 0}, {-s, 2 * h * s}, {-s, -2 * h * s}});
  EXPECT_EQ(c.verdict, Verdict::indeterminate);
  // Point excess 5e-8: indeterminate as well.
  auto p = certify_mset(n, {{1 + 5e-8, 0}, {-1 + 1e-7, 0}});
  EXPECT_NE(p.verdict, Verdict::certified);
  ToleranceBudget loose{1e-6, 1e-5, 1e-12};
  EXPECT_TRUE(certify_mset(n, {{2 * s, 0}, {-s, 2 * h * s}, {-s, -2 * h * s}}, loose).certified());
}

TEST(Certify, PermutationInvariant) {
  Rng rng(21);
  for (auto cand : all_constructions()) {
    auto base = certify_mset(cand);
    std::vector<std::size_t> perm(cand.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.uniform_int(0, static_cast<long>(i) - 1)]);
    MSetCandidate shuffled = cand;
    for (std::size_t i = 0; i < perm.size(); ++i) {
      shuffled.points[i] = cand.points[perm[i]];
      if (cand.exact_points) (*shuffled.exact_points)[i] = (*cand.exact_points)[perm[i]];
    }
    auto again = certify_mset(shuffled);
    EXPECT_EQ(again.verdict, base.verdict) << cand.provenance.method;
    EXPECT_DOUBLE_EQ(again.min_excess, base.min_excess) << cand.provenance.method;
  }
}

// Every certified set: pairwise gauge distances >= 2 eps, and convex position.
TEST(Certify, SeparationAndConvexPositionForAllConstructions) {
  for (const auto& cand : all_constructions()) {
    auto cert = certify_mset(cand);
    ASSERT_TRUE(cert.certified()) << cand.provenance.method << ": " << cert.reason;
    auto sep = separation_check(cert, cand.norm);
    EXPECT_TRUE(sep.ok) << cand.provenance.method;
    // Independent recomputation of the separation bound.
    for (std::size_t i = 0; i < cand.size(); ++i)
      for (std::size_t j = i + 1; j < cand.size(); ++j)
        EXPECT_GE(cand.norm.gauge(cand.points[i] - cand.points[j]), 2 * cert.min_excess - 1e-9);
    for (std::size_t i = 0; i < cand.size(); ++i)
      EXPECT_TRUE(extreme_point_witness(cand.points, i).has_value()) << cand.provenance.method << " point " << i;
  }
}

TEST(Certify, SeparationCases) {
  auto c = certify_mset(mset_linf(3));
  auto s = separation_check(c, NormOracle::lp(3, kInf));
  EXPECT_TRUE(s.ok);
  EXPECT_GE(s.min_distance, 2.0);
  auto l2 = mset_l2_simplex(3);
  auto cl = certify_mset(l2);
  EXPECT_NEAR(cl.min_excess, std::sqrt(3.0) - 1, 1e-12);
  EXPECT_TRUE(separation_check(cl, l2.norm).ok);
  // A forged certificate with too-close points fails the check.
  MSetCertificate forged;
  forged.points = {{2, 0}, {2.1, 0}};
  forged.min_excess = 1;
  auto f = separation_check(forged, NormOracle::lp(2, 2));
  EXPECT_FALSE(f.ok);
  ASSERT_TRUE(f.witness);
}
