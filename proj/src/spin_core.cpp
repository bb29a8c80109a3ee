#include "vbslab/spin_core.hpp"

#include <numeric>
#include <string>

namespace vbslab {

namespace {

Index product(const Dims& dims) {
  return std::accumulate(dims.begin(), dims.end(), Index{1}, std::multiplies<>());
}

/// Row-major digits of a flat index over `dims` (first subsystem most
/// significant, matching kron ordering).
void to_digits(Index flat, const Dims& dims, std::vector<Index>& digits) {
  digits.resize(dims.size());
  for (std::size_t s = dims.size(); s-- > 0;) {
    digits[s] = flat % dims[s];
    flat /= dims[s];
  }
}

Index from_digits(const std::vector<Index>& digits, const Dims& dims) {
  Index flat = 0;
  for (std::size_t s = 0; s < dims.size(); ++s) flat = flat * dims[s] + digits[s];
  return flat;
}

void require_bipartite(const DensityMatrix& rho, const char* who) {
  if (rho.subsystem_count() != 2)
    throw std::invalid_argument(std::string(who) + ": state must be bipartite");
}

}  // namespace

double entropy_from_spectrum(std::span<const double> spectrum, LogBase base) {
  double s = 0.0;
  for (double lambda : spectrum) {
    if (lambda < -tol::entropy_floor)
      throw std::domain_error("entropy: eigenvalue " + std::to_string(lambda) +
                              " is not a valid probability");
    if (lambda <= 0.0) continue;
    s -= lambda * std::log(lambda);
  }
  return base == LogBase::bits ? s / std::numbers::ln2 : s;
}

double binary_entropy(double x) {
  const double probs[2] = {x, 1.0 - x};
  return entropy_from_spectrum(probs);
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix, Dims dims)
    : matrix_(std::move(matrix)), dims_(std::move(dims)) {
  if (matrix_.rows() != matrix_.cols())
    throw std::invalid_argument("DensityMatrix: matrix not square");
  if (dims_.empty() || product(dims_) != matrix_.rows())
    throw std::invalid_argument("DensityMatrix: subsystem dims do not match matrix size");
  for (Index d : dims_)
    if (d < 1) throw std::invalid_argument("DensityMatrix: subsystem dimension < 1");
  if (hermiticity_defect(matrix_) > tol::hermitian)
    throw std::invalid_argument("DensityMatrix: matrix not Hermitian");
  if (std::abs(matrix_.trace() - Complex(1.0)) > tol::trace)
    throw std::invalid_argument("DensityMatrix: trace differs from one");
  // Symmetrize away the residual anti-Hermitian roundoff.
  matrix_ = (0.5 * (matrix_ + matrix_.adjoint())).eval();
  const RealVector spectrum = hermitian_eigenvalues(matrix_);
  if (spectrum.size() > 0 && spectrum.minCoeff() < -tol::psd)
    throw std::invalid_argument("DensityMatrix: matrix has a negative eigenvalue");
}

DensityMatrix DensityMatrix::normalized(const ComplexMatrix& matrix, Dims dims) {
  const Complex tr = matrix.trace();
  if (std::abs(tr) == 0.0) throw std::invalid_argument("DensityMatrix: zero trace");
  return DensityMatrix(matrix / tr, std::move(dims));
}

DensityMatrix DensityMatrix::from_pure(const ComplexVector& state, Dims dims) {
  const double norm = state.norm();
  if (norm == 0.0) throw std::invalid_argument("DensityMatrix: zero state vector");
  const ComplexVector unit = state / norm;
  return DensityMatrix(unit * unit.adjoint(), std::move(dims));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::vector<std::size_t> keep) {
  const Dims& dims = rho.dims();
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set is empty");
  if (keep.back() >= dims.size())
    throw std::out_of_range("partial_trace: subsystem index out of range");

  std::vector<bool> kept(dims.size(), false);
  for (std::size_t s : keep) kept[s] = true;
  Dims keep_dims, rest_dims;
  for (std::size_t s = 0; s < dims.size(); ++s) (kept[s] ? keep_dims : rest_dims).push_back(dims[s]);
  const Index dk = product(keep_dims);
  const Index dr = product(rest_dims);

  // groups[r] lists (kept index, full index) for every full index with rest index r.
  std::vector<std::vector<std::pair<Index, Index>>> groups(static_cast<std::size_t>(dr));
  std::vector<Index> digits, kd, rd;
  for (Index full = 0; full < rho.dim(); ++full) {
    to_digits(full, dims, digits);
    kd.clear();
    rd.clear();
    for (std::size_t s = 0; s < dims.size(); ++s) (kept[s] ? kd : rd).push_back(digits[s]);
    groups[static_cast<std::size_t>(from_digits(rd, rest_dims))].emplace_back(from_digits(kd, keep_dims),
                                                                                full);
  }

  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  const ComplexMatrix& m = rho.matrix();
  for (const auto& group : groups)
    for (const auto& [ki, fi] : group)
      for (const auto& [kj, fj] : group) out(ki, kj) += m(fi, fj);
  return DensityMatrix(std::move(out), keep_dims);
}

ComplexMatrix partial_transpose(const DensityMatrix& rho, std::size_t subsystem) {
  const Dims& dims = rho.dims();
  if (dims.size() < 2) throw std::invalid_argument("partial_transpose: need at least two subsystems");
  if (subsystem >= dims.size()) throw std::out_of_range("partial_transpose: invalid subsystem");
  const Index n = rho.dim();
  ComplexMatrix out(n, n);
  std::vector<Index> ri, ci;
  for (Index i = 0; i < n; ++i) {
    to_digits(i, dims, ri);
    for (Index j = 0; j < n; ++j) {
      to_digits(j, dims, ci);
      std::swap(ri[subsystem], ci[subsystem]);
      out(from_digits(ri, dims), from_digits(ci, dims)) = rho.matrix()(i, j);
      std::swap(ri[subsystem], ci[subsystem]);
    }
  }
  return out;
}

ComplexMatrix realign(const DensityMatrix& rho) {
  require_bipartite(rho, "realign");
  const Index da = rho.dims()[0];
  const Index db = rho.dims()[1];
  ComplexMatrix out(da * da, db * db);
  const ComplexMatrix& m = rho.matrix();
  for (Index i = 0; i < da; ++i)
    for (Index j = 0; j < db; ++j)
      for (Index k = 0; k < da; ++k)
        for (Index l = 0; l < db; ++l) out(i * da + k, j * db + l) = m(i * db + j, k * db + l);
  return out;
}

double von_neumann_entropy(const DensityMatrix& rho, LogBase base) {
  const RealVector spectrum = hermitian_eigenvalues(rho.matrix());
  return entropy_from_spectrum(std::span<const double>(spectrum.data(), spectrum.size()), base);
}

double negativity(const DensityMatrix& rho) {
  require_bipartite(rho, "negativity");
  return (trace_norm(partial_transpose(rho, 1)) - 1.0) / 2.0;
}

double realignment_measure(const DensityMatrix& rho) {
  return std::max(0.0, (trace_norm(realign(rho)) - 1.0) / 2.0);
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("trace_distance: shape mismatch");
  return 0.5 * hermitian_eigenvalues(a - b).cwiseAbs().sum();
}

}  // namespace vbslab
