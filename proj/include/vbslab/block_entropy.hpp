#pragma once

#include <array>
#include <vector>

#include "vbslab/boundary.hpp"

namespace vbslab {

/// Log-base constant c in 2 - (f_l^2 + f_r^2) / (18 c). The expansion of the
/// binary entropy in bits around 1/2 gives c = ln 2; c = 1 undershoots the
/// boundary correction by a factor ln 2.
inline constexpr double kAsymptoticLogConstant = std::numbers::ln2;

struct BlockSpectrum {
  double p = 0.0;                        ///< (-1/3)^L
  std::array<double, 4> lambdas{};       ///< exact, descending, sum to one
  double entropy_bits = 0.0;
  /// Expansion to O(p), unnormalized, ordered as the diagonal entries
  /// |00>, |11>, |01>, |10>. In the canonical orientation this is
  /// xi_l^+ xi_r^- (1-p), xi_l^- xi_r^+ (1-p), xi_l^+ xi_r^+ (1+p), xi_l^- xi_r^- (1+p).
  std::array<double, 4> first_order_lambdas{};
};

/// Two-end state (V_l x V_r)[(1-p)/4 I + p|Psi-><Psi-|](V_l x V_r)^+,
/// divided by its trace. Basis (outer-left qubit, outer-right qubit).
DensityMatrix rho_tilde(const BoundaryWeights& left, const BoundaryWeights& right, int block_length);

/// Closed-form spectrum of rho_tilde: two 1x1 blocks (|00>, |11>) and the
/// 2x2 block on span{|01>, |10>}. Valid for any L >= 1, including L large
/// enough that p underflows.
BlockSpectrum block_spectrum(const BoundaryWeights& left, const BoundaryWeights& right,
                             long long block_length);
BlockSpectrum block_spectrum(const BoundaryConfig& config, long long block_length);

/// Entropy (bits) of L contiguous spins. Equal to the two-end entropy by the
/// Schmidt decomposition across the block boundary.
double block_entropy(const BoundaryConfig& config, long long block_length);

/// S(rho_0) + S(rho_{L+1}): the L -> infinity limit.
double saturation_value(const BoundaryConfig& config);

/// Saturation plus the published first-order correction
///   p [S0 + S_{L+1} - 4 f_l f_r + (x/2) log2(x/4) + (y/2) log2(y/4)],
/// x = xi_l^+ xi_r^-, y = xi_l^- xi_r^+. This term is evaluated verbatim; it
/// does not reproduce the exact O(p) behaviour (see entropy_linearized).
double entropy_first_order(const BoundaryConfig& config, long long block_length);

/// dS/dp at p = 0 from first-order perturbation of the closed-form spectrum.
double entropy_linear_coefficient(const BoundaryConfig& config);

/// Saturation + p * dS/dp|_0.
double entropy_linearized(const BoundaryConfig& config, long long block_length);

/// 2 - (f_l^2 + f_r^2)/(18 c) + p * dS/dp|_0.
double entropy_asymptotic(const BoundaryConfig& config, long long block_length,
                          double log_constant = kAsymptoticLogConstant);

/// Boundary term of the entropy of a critical XXZ block of length L centred
/// in a chain of N sites with N_nr sites on each side:
/// 1 / (sin(2 pi N_nr / N) N / pi)^K. Requires L + 2 N_nr = N.
double xx_boundary_term(int block_length, int chain_length, int boundary_sites, double exponent_k);

struct DecayPoint {
  long long block_length = 0;
  double entropy = 0.0;
  double deviation = 0.0;  ///< entropy - saturation
};

std::vector<DecayPoint> decay_scan(const BoundaryConfig& config, long long l_min, long long l_max);

}  // namespace vbslab
