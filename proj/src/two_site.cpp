#include "vbslab/two_site.hpp"

#include <stdexcept>

#include "vbslab/fock_oracle.hpp"

namespace vbslab {

namespace {

/// Symmetrizing isometry from two qubits to spin-1: |00> -> +1,
/// (|01> + |10>)/sqrt(2) -> 0, |11> -> -1.
Eigen::Matrix<Complex, 3, 4> symmetrizer() {
  Eigen::Matrix<Complex, 3, 4> t = Eigen::Matrix<Complex, 3, 4>::Zero();
  t(0, 0) = 1.0;
  t(1, 1) = t(1, 2) = std::numbers::sqrt2 / 2.0;
  t(2, 3) = 1.0;
  return t;
}

void require_qutrit_pair(const DensityMatrix& rho, const char* who) {
  if (rho.dims() != Dims{3, 3}) throw std::invalid_argument(std::string(who) + ": expects dims (3, 3)");
}

}  // namespace

Eigen::Matrix3cd triplet_basis() {
  const Eigen::Matrix<Complex, 3, 4> t = symmetrizer();
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  Eigen::Matrix3cd u;
  for (int alpha = 1; alpha <= 3; ++alpha)
    u.col(alpha - 1) = t * (kron(id, ComplexMatrix(pauli(alpha))) * singlet());
  return u;
}

DensityMatrix rho_two_site(const BoundaryWeights& left, const BoundaryWeights& right, int block_length) {
  if (block_length < 2) throw std::invalid_argument("rho_two_site: need L >= 2");
  const Eigen::Matrix4cd werner = werner_state(minus_third_power(block_length - 2));
  const Eigen::Matrix4cd v = kron(left.V.cast<Complex>().eval(), right.V.cast<Complex>().eval());

  std::array<Eigen::Matrix4cd, 9> k;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      k[3 * a + b] = v * kron(pauli(a + 1), Eigen::Matrix2cd(pauli(b + 1).transpose()));

  ComplexMatrix labels(9, 9);
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) labels(i, j) = (k[i] * werner * k[j].adjoint()).trace();

  const Eigen::Matrix3cd u = triplet_basis();
  const ComplexMatrix basis = kron(u, Eigen::Matrix3cd(u.conjugate()));
  return DensityMatrix::normalized(basis * labels * basis.adjoint(), {3, 3});
}

DensityMatrix rho_two_site(const BoundaryConfig& config, int block_length) {
  return rho_two_site(left_weights(config), right_weights(config), block_length);
}

DensityMatrix oracle_rho_two_site(const BoundaryConfig& config, int block_length) {
  if (block_length < 2) throw std::invalid_argument("oracle_rho_two_site: need L >= 2");
  const SpinChainState chain = build_vbs_gobc(config, block_length);
  const auto first = static_cast<std::size_t>(config.left.sites());
  return reduced_density(chain, {first, first + static_cast<std::size_t>(block_length) - 1});
}

double negativity_pair(const DensityMatrix& rho) {
  require_qutrit_pair(rho, "negativity_pair");
  return negativity(rho);
}

double realignment_pair(const DensityMatrix& rho) {
  require_qutrit_pair(rho, "realignment_pair");
  return realignment_measure(rho);
}

PairMeasures pair_measures(const DensityMatrix& rho) {
  PairMeasures m;
  m.negativity = negativity_pair(rho);
  m.realignment = realignment_pair(rho);
  m.concurrence_lb = std::max(m.negativity, m.realignment);
  m.concurrence_lb_prefactored = std::sqrt(2.0 / (3.0 * 2.0)) * m.concurrence_lb;
  m.negativity_x9 = 9.0 * m.negativity;
  m.realignment_x9 = 9.0 * m.realignment;
  m.concurrence_lb_x9 = 9.0 * m.concurrence_lb;
  if (m.negativity > m.realignment)
    m.dominant = Dominant::negativity;
  else if (m.realignment > m.negativity)
    m.dominant = Dominant::realignment;
  return m;
}

PairMeasures pair_measures(const BoundaryConfig& config, int block_length) {
  return pair_measures(rho_two_site(config, block_length));
}

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::analytic: return "analytic";
    case Provenance::oracle: return "oracle";
    case Provenance::both_agree: return "both-agree";
    case Provenance::disagree: return "disagree";
  }
  return "?";
}

const char* to_string(PairMeasure m) {
  return m == PairMeasure::negativity ? "negativity" : "realignment";
}

std::vector<BoundaryDistance> standard_table_distances() {
  return {BoundaryDistance(1), BoundaryDistance(2), BoundaryDistance(3), BoundaryDistance(4),
          BoundaryDistance::infinite()};
}

PairTable generate_table(PairMeasure measure, std::span<const BoundaryDistance> distances, Sign sign_left,
                         Sign sign_right, double oracle_tolerance) {
  const auto pick = [measure](const DensityMatrix& rho) {
    return measure == PairMeasure::negativity ? negativity_pair(rho) : realignment_pair(rho);
  };
  PairTable table;
  table.measure = measure;
  table.distances.assign(distances.begin(), distances.end());
  for (const BoundaryDistance& nl : distances) {
    std::vector<TableCell> row;
    for (const BoundaryDistance& nr : distances) {
      const BoundaryConfig config{nl, nr, sign_left, sign_right};
      TableCell cell{nl, nr, 0.0, std::nullopt};
      const double analytic = pick(rho_two_site(config, 2));
      cell.value_x9 = 9.0 * analytic;
      if (config.is_finite() && nl.sites() + nr.sites() + 2 <= kMaxTableOracleSites) {
        const double oracle = pick(oracle_rho_two_site(config, 2));
        cell.oracle_value_x9 = 9.0 * oracle;
        cell.provenance =
            std::abs(oracle - analytic) <= oracle_tolerance ? Provenance::both_agree : Provenance::disagree;
      }
      row.push_back(cell);
    }
    table.cells.push_back(std::move(row));
  }
  return table;
}

std::vector<SeparationPoint> nonadjacent_scan(const BoundaryConfig& config, int max_separation) {
  if (max_separation < 2) throw std::invalid_argument("nonadjacent_scan: max separation must be >= 2");
  std::vector<SeparationPoint> out;
  for (int sep = 2; sep <= max_separation; ++sep) {
    const int l = sep + 1;
    SeparationPoint point;
    point.separation = sep;
    const DensityMatrix rho = rho_two_site(config, l);
    point.negativity = negativity_pair(rho);
    point.realignment = realignment_pair(rho);
    if (config.is_finite() && config.left.sites() + config.right.sites() + l <= kMaxTableOracleSites) {
      const DensityMatrix exact = oracle_rho_two_site(config, l);
      point.oracle_negativity = negativity_pair(exact);
      point.oracle_realignment = realignment_pair(exact);
    }
    out.push_back(point);
  }
  return out;
}

}  // namespace vbslab
