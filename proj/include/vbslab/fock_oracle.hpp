#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include <Eigen/SparseCore>

#include "vbslab/boundary.hpp"

namespace vbslab {

/// Schwinger-boson occupation (n_a, n_b) of one site.
struct SiteOccupation {
  std::uint8_t n_a = 0;
  std::uint8_t n_b = 0;
  int bosons() const { return n_a + n_b; }
  auto operator<=>(const SiteOccupation&) const = default;
};

enum class Boson { a, b };

/// Polynomial in the creation operators a_k^+, b_k^+ acting on the vacuum,
/// stored as occupation tuple -> coefficient. Operators commute, so a product
/// of bond and boundary factors expands term by term without ordering issues.
class FockPolynomial {
 public:
  using Term = std::vector<SiteOccupation>;

  explicit FockPolynomial(std::size_t sites);

  std::size_t sites() const noexcept { return sites_; }
  const std::map<Term, Complex>& terms() const noexcept { return terms_; }

  /// Multiplies by (w_ab a_k^+ b_{k+1}^+ - w_ba b_k^+ a_{k+1}^+).
  void multiply_bond(std::size_t k, double w_ab = 1.0, double w_ba = 1.0);
  /// Multiplies by a single creation operator on site k.
  void multiply_creation(std::size_t k, Boson boson);

 private:
  std::size_t sites_;
  std::map<Term, Complex> terms_;
};

/// Dense amplitudes over a product basis of spin-1 sites (S_z = +1, 0, -1)
/// and optional spin-1/2 end sites (a, b).
struct SpinChainState {
  Dims local_dims;
  ComplexVector amplitudes;

  std::size_t sites() const { return local_dims.size(); }
};

/// Maps a polynomial to a normalized state. Sites with two bosons become
/// spin-1, sites with one boson become a qubit; every term must respect the
/// per-site occupation fixed by `capacity`.
SpinChainState to_spin_basis(const FockPolynomial& poly, const std::vector<int>& capacity);

inline constexpr int kMaxOracleSites = 12;

/// The valence-bond chain with boundary insertions Q_l, Q_r on a chain of
/// N_l + L + N_r spin-1 sites. Site index 0 is the outermost left site;
/// the block occupies [N_l, N_l + L).
SpinChainState build_vbs_gobc(const BoundaryConfig& config, int block_length);

/// Effective chain (2, 3, ..., 3, 2): end qubits carry the boundary weights,
/// the block has L spin-1 sites at indices 1..L.
SpinChainState build_effective_chain(const BoundaryWeights& left, const BoundaryWeights& right,
                                     int block_length);

/// A standalone left wing of `distance` spin-1 sites followed by the qubit
/// half-spin it shares with the first block site (last index).
SpinChainState build_left_wing(int distance, Sign sign);

/// Spin-1 operators in the (+1, 0, -1) basis.
Eigen::Matrix3cd spin1_sx();
Eigen::Matrix3cd spin1_sy();
Eigen::Matrix3cd spin1_sz();

/// h = S.S + (S.S)^2 / 3 on two spin-1 sites (9x9).
ComplexMatrix aklt_bond();
/// Projector onto total bond spin 2: (h + 2/3) / 2.
ComplexMatrix bond_spin2_projector();

using SparseComplexMatrix = Eigen::SparseMatrix<Complex>;

/// Open-chain AKLT Hamiltonian on N spin-1 sites, 2 <= N <= 10.
SparseComplexMatrix aklt_hamiltonian(int sites);

/// || H psi + (2/3)(N-1) psi || for a state on N spin-1 sites.
double verify_ground_state(const SpinChainState& state);

/// Applies a two-site operator to sites (k, k+1) of a pure spin-1 chain.
ComplexVector apply_bond_operator(const SpinChainState& state, std::size_t k, const ComplexMatrix& op);

DensityMatrix reduced_density(const SpinChainState& state, std::vector<std::size_t> sites);

/// Entanglement entropy (bits) between `sites` and the rest, from whichever
/// side of the cut has the smaller Hilbert space.
double entanglement_entropy(const SpinChainState& state, std::vector<std::size_t> sites);

/// Sites [first, first + count).
std::vector<std::size_t> site_range(std::size_t first, std::size_t count);

}  // namespace vbslab
