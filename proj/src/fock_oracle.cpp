#include "vbslab/fock_oracle.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace vbslab {

namespace {

Index product(const Dims& dims) {
  return std::accumulate(dims.begin(), dims.end(), Index{1}, std::multiplies<>());
}

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

void add_boson(SiteOccupation& site, Boson boson) {
  if (boson == Boson::a)
    ++site.n_a;
  else
    ++site.n_b;
}

}  // namespace

FockPolynomial::FockPolynomial(std::size_t sites) : sites_(sites) {
  terms_.emplace(Term(sites), Complex(1.0));
}

void FockPolynomial::multiply_bond(std::size_t k, double w_ab, double w_ba) {
  if (k + 1 >= sites_) throw std::out_of_range("FockPolynomial: bond outside chain");
  std::map<Term, Complex> next;
  for (const auto& [term, c] : terms_) {
    Term ab = term;
    add_boson(ab[k], Boson::a);
    add_boson(ab[k + 1], Boson::b);
    next[ab] += w_ab * c;
    Term ba = term;
    add_boson(ba[k], Boson::b);
    add_boson(ba[k + 1], Boson::a);
    next[ba] -= w_ba * c;
  }
  std::erase_if(next, [](const auto& kv) { return kv.second == Complex(0.0); });
  terms_ = std::move(next);
}

void FockPolynomial::multiply_creation(std::size_t k, Boson boson) {
  if (k >= sites_) throw std::out_of_range("FockPolynomial: site outside chain");
  std::map<Term, Complex> next;
  for (const auto& [term, c] : terms_) {
    Term t = term;
    add_boson(t[k], boson);
    next[t] += c;
  }
  terms_ = std::move(next);
}

SpinChainState to_spin_basis(const FockPolynomial& poly, const std::vector<int>& capacity) {
  if (capacity.size() != poly.sites()) throw std::invalid_argument("to_spin_basis: capacity size mismatch");
  SpinChainState state;
  for (int cap : capacity) {
    if (cap != 1 && cap != 2) throw std::invalid_argument("to_spin_basis: capacity must be 1 or 2");
    state.local_dims.push_back(cap + 1);
  }
  state.amplitudes = ComplexVector::Zero(product(state.local_dims));

  for (const auto& [term, c] : poly.terms()) {
    Index flat = 0;
    double norm = 1.0;
    for (std::size_t s = 0; s < term.size(); ++s) {
      const SiteOccupation& occ = term[s];
      if (occ.bosons() != capacity[s])
        throw std::logic_error("to_spin_basis: site " + std::to_string(s) + " holds " +
                               std::to_string(occ.bosons()) + " bosons, expected " +
                               std::to_string(capacity[s]));
      // Spin-1: (2,0)->+1, (1,1)->0, (0,2)->-1. Qubit: a->0, b->1.
      const Index digit = capacity[s] - occ.n_a;
      flat = flat * state.local_dims[s] + digit;
      norm *= factorial(occ.n_a) * factorial(occ.n_b);
    }
    state.amplitudes(flat) += c * std::sqrt(norm);
  }
  const double n = state.amplitudes.norm();
  if (n == 0.0) throw std::logic_error("to_spin_basis: state vanishes");
  state.amplitudes /= n;
  return state;
}

SpinChainState build_vbs_gobc(const BoundaryConfig& config, int block_length) {
  if (!config.is_finite())
    throw std::invalid_argument("build_vbs_gobc: infinite boundary distance; use the effective chain");
  if (block_length < 0) throw std::invalid_argument("build_vbs_gobc: negative block length");
  const int n = config.left.sites() + block_length + config.right.sites();
  if (n > kMaxOracleSites)
    throw std::invalid_argument("build_vbs_gobc: chain of " + std::to_string(n) + " sites exceeds " +
                                std::to_string(kMaxOracleSites));
  const auto sites = static_cast<std::size_t>(n);
  FockPolynomial poly(sites);
  for (std::size_t k = 0; k + 1 < sites; ++k) poly.multiply_bond(k);
  poly.multiply_creation(0, config.sign_left == Sign::plus ? Boson::a : Boson::b);
  poly.multiply_creation(sites - 1, config.sign_right == Sign::plus ? Boson::a : Boson::b);
  return to_spin_basis(poly, std::vector<int>(sites, 2));
}

SpinChainState build_effective_chain(const BoundaryWeights& left, const BoundaryWeights& right,
                                     int block_length) {
  if (block_length < 1) throw std::invalid_argument("build_effective_chain: block length must be >= 1");
  if (4.0 * std::pow(3.0, block_length) > 3e5)
    throw std::invalid_argument("build_effective_chain: dimension overflow");
  const auto sites = static_cast<std::size_t>(block_length + 2);
  FockPolynomial poly(sites);
  // (V_l x I)|Psi->_{0,1} and (I x V_r)|Psi->_{L,L+1}
  poly.multiply_bond(0, left.V(0, 0), left.V(1, 1));
  for (std::size_t k = 1; k + 2 < sites; ++k) poly.multiply_bond(k);
  poly.multiply_bond(sites - 2, right.V(1, 1), right.V(0, 0));
  std::vector<int> capacity(sites, 2);
  capacity.front() = 1;
  capacity.back() = 1;
  return to_spin_basis(poly, capacity);
}

SpinChainState build_left_wing(int distance, Sign sign) {
  if (distance < 1 || distance + 1 > kMaxOracleSites)
    throw std::invalid_argument("build_left_wing: distance out of range");
  const auto sites = static_cast<std::size_t>(distance + 1);
  FockPolynomial poly(sites);
  for (std::size_t k = 0; k + 1 < sites; ++k) poly.multiply_bond(k);
  poly.multiply_creation(0, sign == Sign::plus ? Boson::a : Boson::b);
  std::vector<int> capacity(sites, 2);
  capacity.back() = 1;
  return to_spin_basis(poly, capacity);
}

Eigen::Matrix3cd spin1_sx() {
  const double r = std::numbers::sqrt2 / 2.0;
  Eigen::Matrix3cd m;
  m << 0, r, 0, r, 0, r, 0, r, 0;
  return m;
}

Eigen::Matrix3cd spin1_sy() {
  const Complex r(0.0, std::numbers::sqrt2 / 2.0);
  Eigen::Matrix3cd m;
  m << 0, -r, 0, r, 0, -r, 0, r, 0;
  return m;
}

Eigen::Matrix3cd spin1_sz() { return Eigen::Vector3cd(1, 0, -1).asDiagonal(); }

ComplexMatrix aklt_bond() {
  const ComplexMatrix exchange =
      kron(spin1_sx(), spin1_sx()) + kron(spin1_sy(), spin1_sy()) + kron(spin1_sz(), spin1_sz());
  return exchange + exchange * exchange / 3.0;
}

ComplexMatrix bond_spin2_projector() {
  return (aklt_bond() + ComplexMatrix::Identity(9, 9) * (2.0 / 3.0)) / 2.0;
}

SparseComplexMatrix aklt_hamiltonian(int sites) {
  if (sites < 2 || sites > 10) throw std::invalid_argument("aklt_hamiltonian: N must be in [2, 10]");
  const ComplexMatrix h = aklt_bond();
  Index dim = 1;
  for (int s = 0; s < sites; ++s) dim *= 3;

  std::vector<Eigen::Triplet<Complex>> entries;
  entries.reserve(static_cast<std::size_t>(dim) * static_cast<std::size_t>(sites - 1) * 7);
  Index left = 1;  // 3^k
  for (int k = 0; k + 1 < sites; ++k, left *= 3) {
    const Index right = dim / (left * 9);  // 3^(N-k-2)
    for (Index i = 0; i < dim; ++i) {
      const Index lo = i % right;
      const Index pair = (i / right) % 9;
      const Index hi = i / (right * 9);
      for (Index out = 0; out < 9; ++out) {
        const Complex v = h(out, pair);
        if (v == Complex(0.0)) continue;
        entries.emplace_back((hi * 9 + out) * right + lo, i, v);
      }
    }
  }
  SparseComplexMatrix hamiltonian(dim, dim);
  hamiltonian.setFromTriplets(entries.begin(), entries.end());
  return hamiltonian;
}

double verify_ground_state(const SpinChainState& state) {
  for (Index d : state.local_dims)
    if (d != 3) throw std::invalid_argument("verify_ground_state: state must live on spin-1 sites only");
  const int n = static_cast<int>(state.sites());
  if (state.amplitudes.size() != product(state.local_dims))
    throw std::invalid_argument("verify_ground_state: dimension mismatch");
  const SparseComplexMatrix h = aklt_hamiltonian(n);
  const ComplexVector residual = h * state.amplitudes + (2.0 / 3.0) * (n - 1) * state.amplitudes;
  return residual.norm();
}

ComplexVector apply_bond_operator(const SpinChainState& state, std::size_t k, const ComplexMatrix& op) {
  if (k + 1 >= state.sites()) throw std::out_of_range("apply_bond_operator: bond outside chain");
  const Index da = state.local_dims[k];
  const Index db = state.local_dims[k + 1];
  if (op.rows() != da * db || op.cols() != da * db)
    throw std::invalid_argument("apply_bond_operator: operator shape mismatch");
  Index right = 1;
  for (std::size_t s = k + 2; s < state.sites(); ++s) right *= state.local_dims[s];
  const Index dim = state.amplitudes.size();
  ComplexVector out = ComplexVector::Zero(dim);
  for (Index i = 0; i < dim; ++i) {
    const Index lo = i % right;
    const Index pair = (i / right) % (da * db);
    const Index hi = i / (right * da * db);
    for (Index o = 0; o < da * db; ++o)
      out((hi * da * db + o) * right + lo) += op(o, pair) * state.amplitudes(i);
  }
  return out;
}

namespace {

/// Reshapes the amplitudes into a (kept x rest) matrix.
ComplexMatrix split_amplitudes(const SpinChainState& state, std::vector<std::size_t>& sites, Dims& keep_dims) {
  const Dims& dims = state.local_dims;
  if (state.amplitudes.size() != product(dims))
    throw std::invalid_argument("reduced_density: dimension mismatch");
  std::sort(sites.begin(), sites.end());
  sites.erase(std::unique(sites.begin(), sites.end()), sites.end());
  if (sites.empty()) throw std::invalid_argument("reduced_density: empty site set");
  if (sites.back() >= dims.size()) throw std::out_of_range("reduced_density: site index out of range");

  std::vector<bool> kept(dims.size(), false);
  for (std::size_t s : sites) kept[s] = true;
  keep_dims.clear();
  Index dk = 1;
  for (std::size_t s : sites) {
    keep_dims.push_back(dims[s]);
    dk *= dims[s];
  }
  const Index dr = state.amplitudes.size() / dk;

  ComplexMatrix psi(dk, dr);
  std::vector<Index> digits(dims.size());
  for (Index full = 0; full < state.amplitudes.size(); ++full) {
    Index rest = full;
    for (std::size_t s = dims.size(); s-- > 0;) {
      digits[s] = rest % dims[s];
      rest /= dims[s];
    }
    Index ki = 0, ri = 0;
    for (std::size_t s = 0; s < dims.size(); ++s) {
      if (kept[s])
        ki = ki * dims[s] + digits[s];
      else
        ri = ri * dims[s] + digits[s];
    }
    psi(ki, ri) = state.amplitudes(full);
  }
  return psi;
}

}  // namespace

DensityMatrix reduced_density(const SpinChainState& state, std::vector<std::size_t> sites) {
  Dims keep_dims;
  const ComplexMatrix psi = split_amplitudes(state, sites, keep_dims);
  return DensityMatrix::normalized(psi * psi.adjoint(), keep_dims);
}

double entanglement_entropy(const SpinChainState& state, std::vector<std::size_t> sites) {
  Dims keep_dims;
  const ComplexMatrix psi = split_amplitudes(state, sites, keep_dims);
  ComplexMatrix gram = psi.rows() <= psi.cols() ? ComplexMatrix(psi * psi.adjoint())
                                                : ComplexMatrix(psi.adjoint() * psi);
  gram /= gram.trace();
  const RealVector spectrum = hermitian_eigenvalues(gram);
  return entropy_from_spectrum(std::span<const double>(spectrum.data(), spectrum.size()));
}

std::vector<std::size_t> site_range(std::size_t first, std::size_t count) {
  std::vector<std::size_t> out(count);
  std::iota(out.begin(), out.end(), first);
  return out;
}

}  // namespace vbslab
