#pragma once

#include <optional>
#include <span>
#include <vector>

#include "vbslab/boundary.hpp"

namespace vbslab {

/// Columns are |alpha> = (I x sigma_alpha)|Psi->, alpha = 1, 2, 3, written in
/// the spin-1 basis (+1, 0, -1) after symmetrizing the two half-spins.
Eigen::Matrix3cd triplet_basis();

/// Two-site state of block sites 1 and L built from the boundary weights:
///   rho[(a,b),(a',b')] ~ Tr (V_l x V_r)(s_a x s_b^t) W (s_a' x s_b'^t)^+ (V_l x V_r)^+
/// with W the Werner state left by the L-2 sites in between. The label
/// basis is mapped to S_z with triplet_basis() on site 1 and its complex
/// conjugate on site L (the transpose on s_b). Dims (3, 3).
DensityMatrix rho_two_site(const BoundaryWeights& left, const BoundaryWeights& right, int block_length);
DensityMatrix rho_two_site(const BoundaryConfig& config, int block_length);

/// Same pair from the full Fock-space chain (finite distances only).
DensityMatrix oracle_rho_two_site(const BoundaryConfig& config, int block_length);

double negativity_pair(const DensityMatrix& rho);
double realignment_pair(const DensityMatrix& rho);

enum class Dominant { negativity, realignment, tie };

struct PairMeasures {
  double negativity = 0.0;
  double realignment = 0.0;
  double concurrence_lb = 0.0;              ///< max(N, R)
  double concurrence_lb_prefactored = 0.0;  ///< sqrt(2/(d(d-1))) max(N, R), d = 3
  double negativity_x9 = 0.0;
  double realignment_x9 = 0.0;
  double concurrence_lb_x9 = 0.0;
  Dominant dominant = Dominant::tie;
};

PairMeasures pair_measures(const DensityMatrix& rho);
PairMeasures pair_measures(const BoundaryConfig& config, int block_length);

enum class PairMeasure { negativity, realignment };
enum class Provenance { analytic, oracle, both_agree, disagree };

const char* to_string(Provenance p);
const char* to_string(PairMeasure m);

struct TableCell {
  BoundaryDistance left;
  BoundaryDistance right;
  double value_x9 = 0.0;
  std::optional<double> oracle_value_x9;
  Provenance provenance = Provenance::analytic;
};

/// Rows are N_l, columns N_r.
struct PairTable {
  PairMeasure measure = PairMeasure::negativity;
  std::vector<BoundaryDistance> distances;
  std::vector<std::vector<TableCell>> cells;

  const TableCell& at(std::size_t row, std::size_t col) const { return cells.at(row).at(col); }
};

inline constexpr int kMaxTableOracleSites = 10;

/// Nearest-neighbour (L = 2) table, values scaled by 9. Finite cells with
/// N_l + N_r + 2 <= 10 are also computed from the Fock-space chain and must
/// agree to `oracle_tolerance` (on the unscaled measure).
PairTable generate_table(PairMeasure measure, std::span<const BoundaryDistance> distances,
                         Sign sign_left = Sign::plus, Sign sign_right = Sign::plus,
                         double oracle_tolerance = 1e-10);

/// {1, 2, 3, 4, inf}.
std::vector<BoundaryDistance> standard_table_distances();

struct SeparationPoint {
  int separation = 0;  ///< L - 1
  double negativity = 0.0;
  double realignment = 0.0;
  std::optional<double> oracle_negativity;
  std::optional<double> oracle_realignment;
};

/// Pair measures of sites 1 and 1 + sep for sep = 2..max_sep.
std::vector<SeparationPoint> nonadjacent_scan(const BoundaryConfig& config, int max_separation);

}  // namespace vbslab
