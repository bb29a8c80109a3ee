#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

namespace vbslab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;
using Dims = std::vector<Index>;

/// Numerical thresholds shared by the density-matrix kernels.
namespace tol {
inline constexpr double hermitian = 1e-12;
inline constexpr double trace = 1e-12;
inline constexpr double psd = 1e-12;
inline constexpr double entropy_floor = 1e-9;
inline constexpr double eigensolver_input = 1e-10;
}  // namespace tol

enum class LogBase { bits, nats };

// ---------------------------------------------------------------------------
// Fixed constants

/// sigma_0..sigma_3 in the (a, b) = (|0>, |1>) basis.
inline Eigen::Matrix2cd pauli(int alpha) {
  const Complex i(0.0, 1.0);
  Eigen::Matrix2cd s;
  switch (alpha) {
    case 0: s << 1, 0, 0, 1; break;
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, -i, i, 0; break;
    case 3: s << 1, 0, 0, -1; break;
    default: throw std::out_of_range("pauli: index must be 0..3");
  }
  return s;
}

/// (|01> - |10>)/sqrt(2), i.e. (a_k^+ b_{k+1}^+ - b_k^+ a_{k+1}^+)|vac> normalized.
inline Eigen::Vector4cd singlet() {
  Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
  v(1) = std::numbers::sqrt2 / 2.0;
  v(2) = -std::numbers::sqrt2 / 2.0;
  return v;
}

inline Eigen::Matrix4cd singlet_projector() {
  const Eigen::Vector4cd s = singlet();
  return s * s.adjoint();
}

/// (1-p)/4 I + p |Psi-><Psi-|: the two-qubit Werner state left on the ends
/// once `sites` bulk spin-1 sites of a valence-bond chain are traced out,
/// with p = (-1/3)^sites.
inline Eigen::Matrix4cd werner_state(double p) {
  return Eigen::Matrix4cd::Identity() * ((1.0 - p) / 4.0) + p * singlet_projector();
}

/// (-1/3)^n, exact sign, underflows harmlessly to 0 for large n.
inline double minus_third_power(long long n) {
  if (n < 0) throw std::invalid_argument("minus_third_power: negative exponent");
  const double magnitude = std::pow(3.0, -static_cast<double>(n));
  return (n % 2 == 0) ? magnitude : -magnitude;
}

// ---------------------------------------------------------------------------
// Generic dense kernels

template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> kron(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  static_assert(std::is_same_v<typename DerivedA::Scalar, typename DerivedB::Scalar>,
                "kron: operands must share a scalar type");
  return Eigen::kroneckerProduct(a.eval(), b.eval()).eval();
}

template <typename Derived>
double hermiticity_defect(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

/// Ascending real eigenvalues of a Hermitian matrix.
template <typename Derived>
RealVector hermitian_eigenvalues(const Eigen::MatrixBase<Derived>& m,
                                 double hermitian_tol = tol::eigensolver_input) {
  if (m.rows() != m.cols()) throw std::invalid_argument("hermitian_eigenvalues: matrix not square");
  if (hermiticity_defect(m) > hermitian_tol)
    throw std::invalid_argument("hermitian_eigenvalues: matrix not Hermitian");
  using Plain = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Eigen::SelfAdjointEigenSolver<Plain> solver(Plain(m), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eigenvalues: eigensolver did not converge");
  return solver.eigenvalues();
}

/// Sum of singular values.
template <typename Derived>
double trace_norm(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0.0;
  using Plain = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Eigen::JacobiSVD<Plain> svd{Plain(m)};
  return svd.singularValues().sum();
}

/// -sum lambda log lambda over a spectrum, with 0 log 0 = 0. Roundoff
/// negatives down to -1e-9 count as zero; anything lower throws.
double entropy_from_spectrum(std::span<const double> spectrum, LogBase base = LogBase::bits);

/// Binary Shannon entropy h(x) in bits.
double binary_entropy(double x);

// ---------------------------------------------------------------------------
// Density matrices

/// Hermitian, positive semidefinite, trace-one matrix over a tensor product
/// of subsystems. Construction validates every invariant.
class DensityMatrix {
 public:
  DensityMatrix(ComplexMatrix matrix, Dims dims);

  /// Divides by the trace first, then validates.
  static DensityMatrix normalized(const ComplexMatrix& matrix, Dims dims);
  static DensityMatrix from_pure(const ComplexVector& state, Dims dims);

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  const Dims& dims() const noexcept { return dims_; }
  Index dim() const noexcept { return matrix_.rows(); }
  std::size_t subsystem_count() const noexcept { return dims_.size(); }

 private:
  ComplexMatrix matrix_;
  Dims dims_;
};

/// Keeps the subsystems listed in `keep` (any order given, result in the
/// original order) and traces out the rest.
DensityMatrix partial_trace(const DensityMatrix& rho, std::vector<std::size_t> keep);

/// Transposes the indices of one subsystem.
ComplexMatrix partial_transpose(const DensityMatrix& rho, std::size_t subsystem);

/// Realignment R[(i,k),(j,l)] = rho[(i,j),(k,l)], i,k on A and j,l on B.
ComplexMatrix realign(const DensityMatrix& rho);

double von_neumann_entropy(const DensityMatrix& rho, LogBase base = LogBase::bits);

/// (||rho^{T_B}||_1 - 1) / 2 for a bipartite state.
double negativity(const DensityMatrix& rho);

/// max(0, (||R(rho)||_1 - 1) / 2) for a bipartite state.
double realignment_measure(const DensityMatrix& rho);

/// Trace distance ||a - b||_1 / 2.
double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace vbslab
