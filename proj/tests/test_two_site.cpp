#include <gtest/gtest.h>

#include "vbslab/two_site.hpp"

using namespace vbslab;

namespace {

BoundaryConfig finite(int nl, int nr, Sign sl = Sign::plus, Sign sr = Sign::plus) {
  return {BoundaryDistance(nl), BoundaryDistance(nr), sl, sr};
}

const BoundaryConfig kInfinite{BoundaryDistance::infinite(), BoundaryDistance::infinite()};

}  // namespace

TEST(TwoSite, TripletBasisIsUnitary) {
  const Eigen::Matrix3cd u = triplet_basis();
  EXPECT_LT((u.adjoint() * u - Eigen::Matrix3cd::Identity()).norm(), 1e-14);
}

TEST(TwoSite, InfiniteChainNearestNeighbour) {
  const PairMeasures m = pair_measures(kInfinite, 2);
  EXPECT_NEAR(m.negativity_x9, 1.0, 1e-12);
  EXPECT_NEAR(m.realignment, 0.0, 1e-12);
  EXPECT_EQ(m.dominant, Dominant::negativity);
}

TEST(TwoSite, OneOneNearestNeighbour) {
  const PairMeasures m = pair_measures(finite(1, 1), 2);
  EXPECT_NEAR(m.negativity_x9, 1.45919, 5e-6);
  EXPECT_NEAR(m.realignment_x9, 0.37393, 5e-6);
  EXPECT_NEAR(m.concurrence_lb_prefactored, m.concurrence_lb / std::sqrt(3.0), 1e-15);
  // Opposite relative sign is a different state.
  EXPECT_NEAR(pair_measures(finite(1, 1, Sign::plus, Sign::minus), 2).negativity_x9, 1.68688, 5e-6);
}

TEST(TwoSite, MatchesOracleForAllSigns) {
  for (int nl = 1; nl <= 3; ++nl)
    for (int nr = 1; nr <= 3; ++nr)
      for (Sign sl : {Sign::plus, Sign::minus})
        for (Sign sr : {Sign::plus, Sign::minus})
          for (int l = 2; l <= 4 && nl + nr + l <= 10; ++l) {
            const BoundaryConfig c = finite(nl, nr, sl, sr);
            EXPECT_LT(trace_distance(rho_two_site(c, l).matrix(), oracle_rho_two_site(c, l).matrix()), 1e-12)
                << nl << nr << l;
          }
}

TEST(TwoSite, NonAdjacentPairsAreSeparableByBothCriteria) {
  for (const BoundaryConfig& c : {finite(1, 1), finite(2, 3), kInfinite}) {
    for (const SeparationPoint& pt : nonadjacent_scan(c, 5)) {
      EXPECT_NEAR(pt.negativity, 0.0, 1e-12);
      EXPECT_NEAR(pt.realignment, 0.0, 1e-12);
      if (pt.oracle_negativity) EXPECT_NEAR(*pt.oracle_negativity, 0.0, 1e-12);
    }
  }
  EXPECT_THROW(nonadjacent_scan(finite(1, 1), 1), std::invalid_argument);
}

TEST(TwoSite, RequiresQutritPair) {
  const DensityMatrix qubits(werner_state(0.5), {2, 2});
  EXPECT_THROW(negativity_pair(qubits), std::invalid_argument);
  EXPECT_THROW(rho_two_site(finite(1, 1), 1), std::invalid_argument);
}

TEST(PairTable, SymmetricAndAgreesWithOracle) {
  const auto d = standard_table_distances();
  for (PairMeasure m : {PairMeasure::negativity, PairMeasure::realignment}) {
    const PairTable t = generate_table(m, d);
    for (std::size_t i = 0; i < d.size(); ++i)
      for (std::size_t j = 0; j < d.size(); ++j) {
        EXPECT_NEAR(t.at(i, j).value_x9, t.at(j, i).value_x9, 1e-12);
        EXPECT_NE(t.at(i, j).provenance, Provenance::disagree);
      }
    EXPECT_EQ(t.at(0, 0).provenance, Provenance::both_agree);
    EXPECT_EQ(t.at(4, 4).provenance, Provenance::analytic);
  }
}

TEST(PairTable, NegativityDecreasesAlongDiagonal) {
  const PairTable t = generate_table(PairMeasure::negativity, standard_table_distances());
  EXPECT_GT(t.at(0, 0).value_x9, t.at(1, 1).value_x9);
  EXPECT_GT(t.at(3, 3).value_x9, t.at(4, 4).value_x9);
}

TEST(PairTable, BlockEntropyAnticorrelatesWithNegativity) {
  // Spearman rank correlation on the finite 4x4 grid.
  std::vector<double> neg, ent;
  for (int nl = 1; nl <= 4; ++nl)
    for (int nr = 1; nr <= 4; ++nr) {
      neg.push_back(pair_measures(finite(nl, nr), 2).negativity);
      const DensityMatrix rho = rho_two_site(finite(nl, nr), 2);
      ent.push_back(von_neumann_entropy(rho));
    }
  auto ranks = [](const std::vector<double>& v) {
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      double less = 0, equal = 0;
      for (double w : v) {
        if (w < v[i] - 1e-12) ++less;
        else if (std::abs(w - v[i]) <= 1e-12) ++equal;
      }
      r[i] = less + (equal + 1.0) / 2.0;
    }
    return r;
  };
  const auto rn = ranks(neg), re = ranks(ent);
  const double n = static_cast<double>(rn.size()), mean = (n + 1.0) / 2.0;
  double cov = 0, vn = 0, ve = 0;
  for (std::size_t i = 0; i < rn.size(); ++i) {
    cov += (rn[i] - mean) * (re[i] - mean);
    vn += (rn[i] - mean) * (rn[i] - mean);
    ve += (re[i] - mean) * (re[i] - mean);
  }
  EXPECT_LT(cov / std::sqrt(vn * ve), -0.5);
}
