#include <gtest/gtest.h>

#include "vbslab/boundary.hpp"

using namespace vbslab;

TEST(BoundaryDistance, ParseAndPrint) {
  EXPECT_TRUE(BoundaryDistance::parse("inf").is_infinite());
  EXPECT_EQ(BoundaryDistance::parse("3").sites(), 3);
  EXPECT_EQ(BoundaryDistance(4).to_string(), "4");
  EXPECT_EQ(BoundaryDistance::infinite().to_string(), "inf");
  EXPECT_THROW(BoundaryDistance(0), std::invalid_argument);
  EXPECT_THROW(BoundaryDistance::parse("-2"), std::invalid_argument);
  EXPECT_THROW(BoundaryDistance::parse("2x"), std::invalid_argument);
  EXPECT_THROW(BoundaryDistance::infinite().sites(), std::logic_error);
}

TEST(BoundaryWeights, KnownValues) {
  EXPECT_DOUBLE_EQ(boundary_f(BoundaryDistance(1)), 1.0);
  EXPECT_DOUBLE_EQ(boundary_f(BoundaryDistance(2)), -1.0 / 3.0);
  EXPECT_EQ(boundary_f(BoundaryDistance::infinite()), 0.0);

  const BoundaryWeights one = boundary_weights(BoundaryDistance(1), Side::left);
  EXPECT_NEAR(one.xi_plus, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(one.xi_minus, 1.0 / 3.0, 1e-15);
  const BoundaryWeights far = boundary_weights(BoundaryDistance::infinite(), Side::right);
  EXPECT_NEAR(far.xi_plus, 0.5, 1e-15);
  EXPECT_NEAR(far.V(0, 0), far.V(1, 1), 1e-15);
}

TEST(BoundaryWeights, CanonicalOrientation) {
  const BoundaryWeights l = boundary_weights(BoundaryDistance(1), Side::left);
  const BoundaryWeights r = boundary_weights(BoundaryDistance(1), Side::right);
  EXPECT_NEAR(l.V(0, 0), std::sqrt(l.xi_plus), 1e-15);
  EXPECT_NEAR(r.V(0, 0), std::sqrt(r.xi_minus), 1e-15);
  // Canonical pair is the sign assignment (+, -).
  EXPECT_EQ(r.V, boundary_weights(BoundaryDistance(1), Side::right, Sign::minus).V);
  EXPECT_EQ(l.V, boundary_weights(BoundaryDistance(1), Side::left, Sign::plus).V);
}

TEST(BoundaryWeights, PropertyNormalization) {
  for (int n = 1; n <= 30; ++n)
    for (Sign s : {Sign::plus, Sign::minus}) {
      const BoundaryWeights w = boundary_weights(BoundaryDistance(n), Side::left, s);
      EXPECT_NEAR(w.xi_plus + w.xi_minus, 1.0, 1e-15);
      EXPECT_NEAR((w.V * w.V).trace(), 1.0, 1e-15);
      EXPECT_GT(w.xi_plus, 0.0);
      EXPECT_GT(w.xi_minus, 0.0);
      EXPECT_NEAR(w.xi_plus - w.xi_minus, w.f / 3.0, 1e-15);
    }
}

TEST(BoundaryWeights, SiteReducedStateMatchesWeights) {
  for (int n = 1; n <= 8; ++n)
    for (Sign s : {Sign::plus, Sign::minus}) {
      const DensityMatrix rho = boundary_site_rdm(BoundaryDistance(n), s);
      const BoundaryWeights w = boundary_weights(BoundaryDistance(n), Side::left, s);
      EXPECT_NEAR(rho.matrix()(1, 1).real(), w.V(0, 0) * w.V(0, 0), 1e-12) << n;
      EXPECT_NEAR(rho.matrix()(0, 0).real(), w.V(1, 1) * w.V(1, 1), 1e-12) << n;
      EXPECT_NEAR(std::abs(rho.matrix()(0, 1)), 0.0, 1e-12);
    }
}

TEST(BoundaryInsertion, IsometryUpToNormalization) {
  for (Sign s : {Sign::plus, Sign::minus}) {
    const auto q = boundary_insertion(s);
    const Eigen::Matrix2cd g = q.adjoint() * q;
    EXPECT_NEAR(std::abs(g(0, 1)), 0.0, 1e-15);
    EXPECT_NEAR(g.trace().real(), 3.0, 1e-15);
  }
}

TEST(BoundaryInsertion, TwirlIdentity) {
  const Eigen::Matrix4cd expected = Eigen::Matrix4cd::Identity() - singlet_projector();
  EXPECT_LT((twirled_singlet_sum() - expected).norm(), 1e-14);
}

TEST(BoundaryInsertion, PhiStateNormalized) {
  const BoundaryWeights w = boundary_weights(BoundaryDistance(2), Side::left);
  EXPECT_NEAR(phi_state(w, Side::left).norm(), 1.0, 1e-15);
  EXPECT_NEAR(phi_state(w, Side::right).norm(), 1.0, 1e-15);
}

TEST(BoundaryConfig, MirrorSwapsEnds) {
  const BoundaryConfig c{BoundaryDistance(1), BoundaryDistance::infinite(), Sign::plus, Sign::minus};
  const BoundaryConfig m = c.mirrored();
  EXPECT_TRUE(m.left.is_infinite());
  EXPECT_EQ(m.right.sites(), 1);
  EXPECT_EQ(m.sign_left, Sign::minus);
  EXPECT_FALSE(c.is_finite());
}
