#include <gtest/gtest.h>

#include <chrono>
#include <numbers>

#include "midpoint_lab/constructions/moment_curve.hpp"
#include "midpoint_lab/polytope/polytope.hpp"
#include "midpoint_lab/verify/certify.hpp"
#include "oracles.hpp"

using namespace mlab;

namespace {

VecD phi(double t) { return {std::cos(t), std::sin(t), std::cos(2 * t), std::sin(2 * t)}; }

}  // namespace

// Each x_i + x_j is the unique maximiser over {±(x_k + x_l)} of the functional
// -y_ij, recomputed here from first principles (direct inner products).
TEST(MomentCurve, DirectInnerProductsSeparateEveryVertex) {
  for (std::size_t n = 2; n <= 10; ++n) {
    std::vector<double> t;
    for (std::size_t i = 0; i < n; ++i) t.push_back(std::numbers::pi / 4 * i / (n - 1));
    std::vector<VecD> K;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        K.push_back(phi(t[i]) + phi(t[j]));
        K.push_back(-(phi(t[i]) + phi(t[j])));
      }
    double worst_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const double a = t[i], b = t[j];
        VecD f{std::cos(a) + std::cos(b), std::sin(a) + std::sin(b), -0.5 * std::cos(a + b), -0.5 * std::sin(a + b)};
        const VecD s = phi(a) + phi(b);
        const double top = dot(f, s);
        for (const auto& v : K) {
          if (max_abs(VecD(v - s)) < 1e-14) continue;
          worst_gap = std::min(worst_gap, top - dot(f, v));
        }
      }
    EXPECT_GT(worst_gap, 1e-7) << "n = " << n;
  }
}

TEST(MomentCurve, FamiliesLpAndNorm) {
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t n = 2; n <= 10; ++n) {
    auto r = mset_moment_curve(n);
    const auto& in = r.instance;
    EXPECT_EQ(in.k_vertices.size(), 2 * oracle::binomial(n, 2));
    EXPECT_LE(in.equality_max_abs, 1e-10);
    EXPECT_GE(in.strict_min_margin, 1e-7) << "n = " << n;
    EXPECT_LE(in.closed_form_discrepancy, 1e-12);
    EXPECT_TRUE(in.lp_agrees);
    for (bool v : in.lp_vertex) EXPECT_TRUE(v);
    EXPECT_LE(in.max_midpoint_residual, 1e-9);
    std::size_t inside = 0;
    for (double g : in.x_gauges) inside += g <= 1;
    EXPECT_LE(inside, 1u);
    EXPECT_EQ(r.candidate.size(), n - inside);
    auto cert = certify_mset(r.candidate);
    EXPECT_TRUE(cert.certified()) << "n = " << n << ": " << cert.reason;
    // Strict convexity of the constructed norm at random pairs of unit vectors.
    const auto& norm = r.candidate.norm;
    VecD a = phi(0.1), b = phi(0.7);
    a = a / norm.gauge(a);
    b = b / norm.gauge(b);
    EXPECT_LT(norm.gauge(midpoint(a, b)), 1.0);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_LT(secs, 10.0);
}

TEST(MomentCurve, FamilyCounts) {
  const std::size_t n = 6;
  auto in = mset_moment_curve(n).instance;
  const std::size_t pairs = oracle::binomial(n, 2);
  ASSERT_EQ(in.families.size(), 6u);
  EXPECT_EQ(in.families[0].count, pairs);
  EXPECT_EQ(in.families[1].count, pairs);
  EXPECT_EQ(in.families[2].count, pairs * 2 * (n - 2));
  EXPECT_EQ(in.families[4].count, pairs * oracle::binomial(n - 2, 2));
  EXPECT_FALSE(in.families[0].strict);
}

TEST(MomentCurve, InputValidation) {
  EXPECT_THROW(mset_moment_curve(1), std::invalid_argument);
  EXPECT_THROW(mset_moment_curve(3, {0.0, 0.1}), std::invalid_argument);
  EXPECT_THROW(mset_moment_curve(2, {0.1, 0.1}), std::invalid_argument);
  EXPECT_THROW(mset_moment_curve(2, {0.0, 1.0}), std::invalid_argument);
  auto r = mset_moment_curve(3, {0.0, 0.2, 0.5});
  EXPECT_GT(r.instance.padding, 0u);
}

TEST(MomentCurve, ClosedFormValues) {
  auto in = mset_moment_curve(2, {0.0, std::numbers::pi / 4}).instance;
  ASSERT_EQ(in.c.size(), 1u);
  EXPECT_NEAR(in.c[0], 1 + 0.5 * std::cos(std::numbers::pi / 4), 1e-15);
  EXPECT_NEAR(dot(in.y[0], in.x[0] + in.x[1]) + 2 * in.c[0], 0.0, 1e-12);
  EXPECT_NEAR(in.families[1].extreme, 4 * in.c[0], 1e-12);
  auto ten = mset_moment_curve(10).instance;
  const double bound = std::pow(1 - std::cos(std::numbers::pi / 36), 2);
  EXPECT_GE(ten.strict_min_margin, bound * (1 - 1e-9));
  // The LP witness for x_1 + x_2 (n = 2) is proportional to -y_12.
  auto w = extreme_point_witness(in.k_vertices, 0);
  ASSERT_TRUE(w);
  const VecD f = -in.y[0];
  const double cosang = dot(*w, f) / (norm2(*w) * norm2(f));
  EXPECT_GT(cosang, 0);
  auto K = convex_hull(in.k_vertices);
  EXPECT_TRUE(is_centrally_symmetric(K));
}
