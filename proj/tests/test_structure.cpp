#include <gtest/gtest.h>

#include <numbers>

#include "midpoint_lab/constructions/closed_form.hpp"
#include "midpoint_lab/constructions/face.hpp"
#include "midpoint_lab/constructions/moment_curve.hpp"
#include "midpoint_lab/core/random.hpp"
#include "midpoint_lab/verify/certify.hpp"
#include "midpoint_lab/verify/structure.hpp"
#include "corpus.hpp"
#include "oracles.hpp"

using namespace mlab;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

}  // namespace

TEST(FlatSpot, CubeFaceAndCylinderDisc) {
  auto cube = NormOracle::lp(3, kInf);
  std::vector<VecD> top{{1, 1, 1}, {1, -1, 1}, {-1, 1, 1}, {-1, -1, 1}};
  auto r = flat_spot_check(cube, top, VecD{0.2, -0.3, 1});
  EXPECT_TRUE(r);
  EXPECT_GE(r.samples, 1000u);
  EXPECT_LE(r.max_deviation, 1e-12);
  auto cyl = NormOracle::cylinder(3);
  std::vector<VecD> rim;
  for (int k = 0; k < 5; ++k) {
    const double a = 2 * std::numbers::pi * k / 5;
    rim.push_back({std::cos(a), std::sin(a), 1});
  }
  EXPECT_TRUE(flat_spot_check(cyl, rim, VecD{0, 0, 1}));
}

TEST(FlatSpot, Preconditions) {
  auto l2 = NormOracle::lp(3, 2);
  const double h = std::sqrt(0.5);
  EXPECT_THROW(flat_spot_check(l2, {{1, 0, 0}, {0, 1, 0}}, VecD{h, h, 0}), std::invalid_argument);
  auto cube = NormOracle::lp(3, kInf);
  EXPECT_THROW(flat_spot_check(cube, {{1, 1, 1}, {1, -1, 1}}, VecD{1, 1, 1}), std::invalid_argument);
  EXPECT_THROW(flat_spot_check(cube, {{1, 1, 1}, {2, 0, 0}}, VecD{1.5, 0.5, 0.5}), std::invalid_argument);
}

TEST(Structure, SupNormFivePointSet) {
  auto c = mset_linf(3);
  auto rep = structure_report(c.norm, *c.exact_points);
  EXPECT_TRUE(rep.convex_position);
  EXPECT_TRUE(rep.non_vertices.empty());
  EXPECT_EQ(rep.polytope_class.cls, PolytopeClass::pyramid);
  std::size_t edges = 0, boundary = 0;
  for (const auto& p : rep.pairs) {
    edges += p.kind == PairKind::edge;
    boundary += p.kind == PairKind::boundary_non_edge;
  }
  EXPECT_EQ(edges, 8u);
  EXPECT_EQ(boundary, 2u);
  ASSERT_EQ(rep.flat_spots.size(), 2u);
  for (const auto& f : rep.flat_spots) {
    EXPECT_TRUE(f.error.empty()) << f.error;
    EXPECT_TRUE(f.check.ok);
    EXPECT_NEAR(c.norm.gauge(f.center), 1.0, 1e-12);
  }
}

TEST(Structure, SimplexAndMomentCurve) {
  auto s = mset_l2_simplex(3);
  auto rep = structure_report(s.norm, s.points);
  EXPECT_EQ(rep.polytope_class.cls, PolytopeClass::pyramid);
  for (const auto& p : rep.pairs) EXPECT_EQ(p.kind, PairKind::edge);
  EXPECT_EQ(rep.pairs.size(), 6u);
  auto m = mset_moment_curve(6);
  auto mr = structure_report(m.candidate.norm, m.candidate.points);
  EXPECT_EQ(mr.polytope_class.cls, PolytopeClass::high_dim);
  EXPECT_TRUE(mr.convex_position);
  EXPECT_EQ(mr.pairs.size(), oracle::binomial(m.candidate.size(), 2));
  for (const auto& p : mr.pairs) EXPECT_EQ(p.kind, PairKind::edge);
}

TEST(Structure, FaceConstructionFlatSpots) {
  auto cube = NormOracle::lp(3, kInf);
  auto fc = mset_from_face(cube, unit_ball(cube).faces[2].front());
  auto rep = structure_report(cube, *fc.candidate.exact_points);
  EXPECT_TRUE(rep.convex_position);
  EXPECT_EQ(rep.polytope_class.cls, PolytopeClass::pyramid);
  for (const auto& f : rep.flat_spots) EXPECT_TRUE(f.check.ok) << f.error;
  auto two = structure_report(NormOracle::lp(2, 2), std::vector<VecD>{{2, 0}, {-1, 1.7320508075688772}});
  EXPECT_EQ(two.polytope_class.cls, PolytopeClass::low_dim);
  auto inner = structure_report(NormOracle::lp(2, 2), std::vector<VecD>{{2, 0}, {-2, 0}, {0, 0}, {0, 2}});
  EXPECT_FALSE(inner.convex_position);
  EXPECT_EQ(inner.non_vertices, std::vector<std::size_t>{2});
}

TEST(Classify, PrismPyramidOctahedron) {
  auto octa = convex_hull(std::vector<VecQ>{{Rational(1), Rational(0), Rational(0)}, {Rational(-1), Rational(0), Rational(0)},
                                            {Rational(0), Rational(1), Rational(0)}, {Rational(0), Rational(-1), Rational(0)},
                                            {Rational(0), Rational(0), Rational(1)}, {Rational(0), Rational(0), Rational(-1)}});
  auto oc = classify_2an(octa);
  EXPECT_EQ(oc.cls, PolytopeClass::not_2AN);
  ASSERT_TRUE(oc.separated_pair);
  EXPECT_EQ(octa.vertices[oc.separated_pair->first], -octa.vertices[oc.separated_pair->second]);
  auto pyr = convex_hull(std::vector<VecQ>{{Rational(1), Rational(1), Rational(0)}, {Rational(1), Rational(-1), Rational(0)},
                                           {Rational(-1), Rational(1), Rational(0)}, {Rational(-1), Rational(-1), Rational(0)},
                                           {Rational(0), Rational(0), Rational(1)}});
  auto pc = classify_2an(pyr);
  EXPECT_EQ(pc.cls, PolytopeClass::pyramid);
  ASSERT_TRUE(pc.apex);
  EXPECT_EQ(pyr.vertices[*pc.apex], (VecQ{Rational(0), Rational(0), Rational(1)}));
  auto prism = convex_hull(std::vector<VecQ>{{Rational(0), Rational(0), Rational(0)}, {Rational(1), Rational(0), Rational(0)},
                                             {Rational(0), Rational(1), Rational(0)}, {Rational(0), Rational(0), Rational(1)},
                                             {Rational(1), Rational(0), Rational(1)}, {Rational(0), Rational(1), Rational(1)}});
  EXPECT_EQ(classify_2an(prism).cls, PolytopeClass::prism);
  auto cube = convex_hull(vec_cast<Rational>(oracle::cube_vertices(3)));
  EXPECT_EQ(classify_2an(cube).cls, PolytopeClass::not_2AN);
  EXPECT_THROW(classify_2an(convex_hull(std::vector<VecQ>{{Rational(0), Rational(0)}, {Rational(1), Rational(0)},
                                                          {Rational(0), Rational(1)}})),
               std::invalid_argument);
}

// 500 seeded random 3-polytopes with 8-20 input points, plus constructed
// pyramids and prisms: no 2-almost-neighbourly polytope is classified "other",
// and every verdict matches an independent plane-based classification.
TEST(Classify, RandomCorpusHasNoOther) {
  Rng rng(2024);
  std::size_t other = 0, pyramids = 0, prisms = 0, not2an = 0, checked = 0;
  auto run = [&](const std::vector<VecQ>& pts) {
    auto P = convex_hull(pts);
    if (P.dim != 3) return;
    auto c = classify_2an(P);
    ++checked;
    EXPECT_EQ(to_string(c.cls), corpus::reference_class(vec_cast<double>(P.vertices)));
    other += c.cls == PolytopeClass::other;
    pyramids += c.cls == PolytopeClass::pyramid;
    prisms += c.cls == PolytopeClass::prism;
    not2an += c.cls == PolytopeClass::not_2AN;
  };
  for (int s = 0; s < 500; ++s) {
    const long n = rng.uniform_int(8, 20);
    std::vector<VecQ> pts;
    const bool sphere = s % 2 == 0;
    for (long i = 0; i < n; ++i) {
      VecQ q(3);
      if (sphere) {
        VecD p = rng.on_sphere(3);
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
  EXPECT_EQ(other, 0u);
  EXPECT_GE(checked, 690u);
  EXPECT_EQ(pyramids, 100u);
  EXPECT_EQ(prisms, 100u);
  EXPECT_GE(not2an, 490u);
}
