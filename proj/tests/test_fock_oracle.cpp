#include <gtest/gtest.h>

#include "vbslab/fock_oracle.hpp"

using namespace vbslab;

namespace {

BoundaryConfig finite(int nl, int nr, Sign sl = Sign::plus, Sign sr = Sign::plus) {
  return {BoundaryDistance(nl), BoundaryDistance(nr), sl, sr};
}

}  // namespace

TEST(FockPolynomial, SingleBondIsSinglet) {
  FockPolynomial poly(2);
  poly.multiply_bond(0);
  const SpinChainState s = to_spin_basis(poly, {1, 1});
  EXPECT_EQ(s.local_dims, (Dims{2, 2}));
  EXPECT_LT((s.amplitudes - ComplexVector(singlet())).norm(), 1e-15);
}

TEST(FockPolynomial, RejectsWrongCapacity) {
  FockPolynomial poly(2);
  poly.multiply_bond(0);
  EXPECT_THROW(to_spin_basis(poly, {2, 1}), std::logic_error);
  EXPECT_THROW(poly.multiply_bond(1), std::out_of_range);
}

TEST(FockPolynomial, DoubleOccupationAmplitude) {
  // a^+ a^+ |vac> = sqrt(2) |n_a = 2>, which is S_z = +1.
  FockPolynomial poly(1);
  poly.multiply_creation(0, Boson::a);
  poly.multiply_creation(0, Boson::a);
  const SpinChainState s = to_spin_basis(poly, {2});
  EXPECT_EQ(s.local_dims, (Dims{3}));
  EXPECT_NEAR(std::abs(s.amplitudes(0)), 1.0, 1e-15);
}

TEST(SpinOperators, SpinOneAlgebra) {
  const Eigen::Matrix3cd sx = spin1_sx(), sy = spin1_sy(), sz = spin1_sz();
  const Eigen::Matrix3cd casimir = sx * sx + sy * sy + sz * sz;
  EXPECT_LT((casimir - 2.0 * Eigen::Matrix3cd::Identity()).norm(), 1e-14);
  EXPECT_LT((sx * sy - sy * sx - Complex(0, 1) * sz).norm(), 1e-14);
}

TEST(SpinOperators, AkltBondSpectrum) {
  // h = 2 P_2 - 2/3 on two spin-1 sites: eigenvalues -2/3 (x4) and 4/3 (x5).
  const RealVector ev = hermitian_eigenvalues(aklt_bond());
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(ev(i), -2.0 / 3.0, 1e-12);
  for (int i = 4; i < 9; ++i) EXPECT_NEAR(ev(i), 4.0 / 3.0, 1e-12);
  const ComplexMatrix p = bond_spin2_projector();
  EXPECT_LT((p * p - p).norm(), 1e-12);
  EXPECT_NEAR(p.trace().real(), 5.0, 1e-12);
}

TEST(VbsChain, GroundStateAllSigns) {
  for (int l = 1; l <= 6; ++l)
    for (Sign sl : {Sign::plus, Sign::minus})
      for (Sign sr : {Sign::plus, Sign::minus}) {
        const SpinChainState s = build_vbs_gobc(finite(1, 1, sl, sr), l);
        EXPECT_EQ(s.sites(), static_cast<std::size_t>(l + 2));
        EXPECT_NEAR(s.amplitudes.norm(), 1.0, 1e-14);
        EXPECT_LT(verify_ground_state(s), 1e-10) << "L=" << l;
      }
}

TEST(VbsChain, GroundStateMatchesSparseDiagonalization) {
  // Against the lowest eigenvalue of a small dense copy of the Hamiltonian.
  const SparseComplexMatrix h = aklt_hamiltonian(4);
  const RealVector ev = hermitian_eigenvalues(ComplexMatrix(h));
  EXPECT_NEAR(ev(0), -2.0, 1e-10);
  for (int i = 1; i < 4; ++i) EXPECT_NEAR(ev(i), -2.0, 1e-10);
  EXPECT_GT(ev(4), -2.0 + 1e-3);
}

TEST(VbsChain, RejectsOversizedChains) {
  EXPECT_THROW(build_vbs_gobc(finite(5, 5), 3), std::invalid_argument);
  EXPECT_THROW(build_vbs_gobc({BoundaryDistance::infinite(), BoundaryDistance(1)}, 2), std::invalid_argument);
  EXPECT_THROW(aklt_hamiltonian(11), std::invalid_argument);
}

TEST(VbsChain, EntanglementSymmetricUnderComplement) {
  const SpinChainState s = build_vbs_gobc(finite(2, 1), 3);
  const double inside = entanglement_entropy(s, site_range(2, 3));
  const double outside = entanglement_entropy(s, {0, 1, 5});
  EXPECT_NEAR(inside, outside, 1e-12);
  EXPECT_NEAR(von_neumann_entropy(reduced_density(s, site_range(2, 3))), inside, 1e-10);
}

TEST(VbsChain, EffectiveChainMatchesFullChain) {
  for (int nl = 1; nl <= 3; ++nl)
    for (int nr = 1; nr <= 3; ++nr)
      for (Sign sl : {Sign::plus, Sign::minus})
        for (Sign sr : {Sign::plus, Sign::minus}) {
          const BoundaryConfig c = finite(nl, nr, sl, sr);
          const int l = 2;
          const SpinChainState full = build_vbs_gobc(c, l);
          const SpinChainState eff = build_effective_chain(left_weights(c), right_weights(c), l);
          const DensityMatrix a = reduced_density(full, site_range(static_cast<std::size_t>(nl), l));
          const DensityMatrix b = reduced_density(eff, site_range(1, l));
          EXPECT_LT(trace_distance(a.matrix(), b.matrix()), 1e-12);
        }
}

TEST(VbsChain, LeftWingHalfSpinWeights) {
  for (int n = 1; n <= 5; ++n) {
    const SpinChainState wing = build_left_wing(n, Sign::plus);
    EXPECT_EQ(wing.local_dims.back(), 2);
    const DensityMatrix half = reduced_density(wing, {wing.sites() - 1});
    const BoundaryWeights w = boundary_weights(BoundaryDistance(n), Side::left, Sign::plus);
    EXPECT_NEAR(half.matrix()(1, 1).real(), w.xi_plus, 1e-12);
    EXPECT_NEAR(half.matrix()(0, 0).real(), w.xi_minus, 1e-12);
  }
}
